#include <catch2/catch_amalgamated.hpp>

#include "hfv/rng.hpp"
#include "hfv/scenes.hpp"
#include "hfv/transforms.hpp"

using namespace hfv;

namespace {

Vector random_volume(Rng& rng, const Dims& d) {
  Vector f(d.samples());
  for (long i = 0; i < f.size(); ++i) f[i] = rng.gaussian();
  return f;
}

long volume_index(const Dims& d, int u, int v, int t) {
  return (static_cast<long>(v) * d.width + u) * d.frames + t;
}

}  // namespace

TEST_CASE("unitary DFT of a constant volume is a single DC coefficient") {
  const Dims d{4, 3, 5};
  const Dft3 dft(d);
  const double c = 2.5;
  const CVector x = dft.forward(Vector::Constant(d.samples(), c));
  REQUIRE(std::abs(x[0]) ==
          Catch::Approx(c * std::sqrt(static_cast<double>(d.samples()))).epsilon(1e-12));
  for (long i = 1; i < x.size(); ++i) REQUIRE(std::abs(x[i]) < 1e-10);
}

TEST_CASE("DFT is norm-preserving and invertible") {
  const Dims d{5, 4, 3};
  const Dft3 dft(d);
  Rng rng(3);
  const Vector f = random_volume(rng, d);
  const CVector x = dft.forward(f);
  REQUIRE(x.norm() == Catch::Approx(f.norm()).epsilon(1e-12));
  const CVector back = dft.inverse(x);
  REQUIRE((back.real() - f).cwiseAbs().maxCoeff() < 1e-12);
  REQUIRE(back.imag().cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("DC-only coefficients invert to a constant volume") {
  const Dims d{2, 3, 2};
  const Dft3 dft(d);
  CVector x = CVector::Zero(d.samples());
  x[0] = std::sqrt(static_cast<double>(d.samples()));
  double imag = 0.0;
  const Vector f = dft.inverse_real(x, &imag);
  REQUIRE(imag < 1e-12);
  for (long i = 0; i < f.size(); ++i) REQUIRE(f[i] == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Laplacian of a spatially linear frame vanishes in the interior") {
  const Dims d{2, 6, 5};
  Vector f(d.samples());
  for (int v = 0; v < d.height; ++v)
    for (int u = 0; u < d.width; ++u)
      for (int t = 0; t < d.frames; ++t)
        f[volume_index(d, u, v, t)] = 3.0 * u - 2.0 * v + 7.0;
  const Vector lap = theta1_apply(f, d);
  for (int v = 1; v + 1 < d.height; ++v)
    for (int u = 1; u + 1 < d.width; ++u)
      for (int t = 0; t < d.frames; ++t)
        REQUIRE(std::abs(lap[volume_index(d, u, v, t)]) < 1e-12);
}

TEST_CASE("Laplacian stencil of an interior one-hot pixel") {
  const Dims d{1, 5, 5};
  Vector f = Vector::Zero(d.samples());
  f[volume_index(d, 2, 2, 0)] = 1.0;
  const Vector lap = theta1_apply(f, d);
  REQUIRE(lap[volume_index(d, 2, 2, 0)] == -4.0);
  REQUIRE(lap[volume_index(d, 1, 2, 0)] == 1.0);
  REQUIRE(lap[volume_index(d, 3, 2, 0)] == 1.0);
  REQUIRE(lap[volume_index(d, 2, 1, 0)] == 1.0);
  REQUIRE(lap[volume_index(d, 2, 3, 0)] == 1.0);
  REQUIRE(lap[volume_index(d, 0, 0, 0)] == 0.0);
}

TEST_CASE("Laplacian of u^2 on a 1x5x1 strip is 2 in the interior") {
  const Dims d{1, 5, 1};
  Vector f(d.samples());
  for (int u = 0; u < 5; ++u) f[volume_index(d, u, 0, 0)] = static_cast<double>(u) * u;
  const Vector lap = theta1_apply(f, d);
  for (int u = 1; u < 4; ++u)
    REQUIRE(lap[volume_index(d, u, 0, 0)] == Catch::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("theta2 vanishes on a globally linear volume with a uniform temporal ramp") {
  const Dims d{4, 5, 5};
  Vector f(d.samples());
  for (int v = 0; v < d.height; ++v)
    for (int u = 0; u < d.width; ++u)
      for (int t = 0; t < d.frames; ++t)
        f[volume_index(d, u, v, t)] = 2.0 * u + 3.0 * v + 1.0 + 0.5 * t;
  const Vector out = theta2_apply(f, d);
  REQUIRE(out.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("theta2 of a static video is zero") {
  const Dims d{3, 4, 4};
  Rng rng(5);
  Vector frame(static_cast<long>(d.width) * d.height);
  for (long i = 0; i < frame.size(); ++i) frame[i] = rng.uniform(0.0, 255.0);
  Vector f(d.samples());
  for (int v = 0; v < d.height; ++v)
    for (int u = 0; u < d.width; ++u)
      for (int t = 0; t < d.frames; ++t)
        f[volume_index(d, u, v, t)] = frame[v * d.width + u];
  REQUIRE(theta2_apply(f, d).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("theta2 of a one-hot temporal bump reproduces the difference stencil") {
  // T=2; frame 2 = frame 1 + bump at (2,2). d_0 is the bump image, d_1 = 0.
  const Dims d{2, 5, 5};
  Vector f = Vector::Zero(d.samples());
  for (int v = 0; v < 5; ++v)
    for (int u = 0; u < 5; ++u) f[volume_index(d, u, v, 0)] = 10.0;
  for (int v = 0; v < 5; ++v)
    for (int u = 0; u < 5; ++u) f[volume_index(d, u, v, 1)] = 10.0;
  f[volume_index(d, 2, 2, 1)] += 1.0;
  const Vector out = theta2_apply(f, d);
  // (d(u+1,v) - d(u,v)) + (d(u,v+1) - d(u,v)) with d one-hot at (2,2):
  REQUIRE(out[volume_index(d, 2, 2, 0)] == -2.0);
  REQUIRE(out[volume_index(d, 1, 2, 0)] == 1.0);
  REQUIRE(out[volume_index(d, 2, 1, 0)] == 1.0);
  REQUIRE(out[volume_index(d, 3, 2, 0)] == 0.0);
  for (int v = 0; v < 5; ++v)
    for (int u = 0; u < 5; ++u) REQUIRE(out[volume_index(d, u, v, 1)] == 0.0);
}

TEST_CASE("theta adjoints pass the dot test at 1e-12") {
  const Dims d{4, 6, 5};
  Rng rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const Vector f = random_volume(rng, d);
    Vector z(2 * d.samples());
    for (long i = 0; i < z.size(); ++i) z[i] = rng.gaussian();

    const double lhs = theta_apply(f, d).dot(z);
    const double rhs = f.dot(theta_adjoint(z, d));
    REQUIRE(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));

    const Vector z1 = z.head(d.samples());
    REQUIRE(std::abs(theta1_apply(f, d).dot(z1) - f.dot(theta1_adjoint(z1, d))) <=
            1e-12 * std::max(1.0, f.norm() * z1.norm()));
    REQUIRE(std::abs(theta2_apply(f, d).dot(z1) - f.dot(theta2_adjoint(z1, d))) <=
            1e-12 * std::max(1.0, f.norm() * z1.norm()));
  }
}

TEST_CASE("theta of the zero volume is the zero stack") {
  const Dims d{3, 4, 4};
  REQUIRE(theta_apply(Vector::Zero(d.samples()), d).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("all operators are linear to machine precision") {
  const Dims d{3, 5, 4};
  Rng rng(23);
  const Vector f = random_volume(rng, d);
  const Vector g = random_volume(rng, d);
  const double a = 1.7, b = -0.3;
  const Vector combo = a * f + b * g;
  REQUIRE((theta_apply(combo, d) - a * theta_apply(f, d) - b * theta_apply(g, d))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  const Dft3 dft(d);
  REQUIRE((dft.forward(combo) - a * dft.forward(f) - b * dft.forward(g)).norm() < 1e-10);
}

TEST_CASE("constants lie in the null space of both analysis planes") {
  const Dims d{4, 5, 5};
  const Vector c = Vector::Constant(d.samples(), 42.0);
  REQUIRE(theta1_apply(c, d).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(theta2_apply(c, d).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("the scripted scene has a sparse analysis image") {
  const VideoVolume scene = synth_scene(scripted_moving_scene());
  const Vector stack = theta_apply(scene.data(), scene.dims());
  long nonzero = 0;
  for (long i = 0; i < stack.size(); ++i)
    if (std::abs(stack[i]) > 1e-9) ++nonzero;
  REQUIRE(nonzero < stack.size() / 10);
}
