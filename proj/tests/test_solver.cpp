#include <catch2/catch_amalgamated.hpp>

#include "hfv/forward.hpp"
#include "hfv/scenes.hpp"
#include "hfv/solver.hpp"
#include "lp_oracle.hpp"

using namespace hfv;

namespace {

Matrix random_pm1(Rng& rng, long m, long n) {
  Matrix A(m, n);
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < n; ++j) A(i, j) = rng.bit() ? 1.0 : -1.0;
  return A;
}

}  // namespace

TEST_CASE("lp oracle sanity: identity and a known split") {
  // A = I: the unique feasible point is y itself.
  Matrix I = Matrix::Identity(3, 3);
  Vector y(3);
  y << 1.0, -2.0, 0.5;
  const auto sol = hfv_tests::basis_pursuit_lp(I, y);
  REQUIRE(sol.feasible);
  REQUIRE(sol.objective == Catch::Approx(3.5).epsilon(1e-10));
  REQUIRE((sol.x - y).cwiseAbs().maxCoeff() < 1e-10);

  // x1 + x2 = 2: every split has the same l1 norm 2.
  Matrix A(1, 2);
  A << 1.0, 1.0;
  Vector b(1);
  b << 2.0;
  const auto sol2 = hfv_tests::basis_pursuit_lp(A, b);
  REQUIRE(sol2.feasible);
  REQUIRE(sol2.objective == Catch::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("identity operator with sigma = 0 returns the data") {
  Rng rng(5);
  Vector y(12);
  for (long i = 0; i < y.size(); ++i) y[i] = rng.gaussian();
  SolverConfig cfg;
  cfg.max_iters = 200;
  const auto sol = solve_l1(Matrix(Matrix::Identity(12, 12)), y, cfg);
  REQUIRE(sol.converged);
  REQUIRE((sol.x - y).norm() <= 1e-12 * y.norm());
}

TEST_CASE("zero measurements with sigma = 0 return the zero vector") {
  SolverConfig cfg;
  const auto sol = solve_l1(Matrix(Matrix::Identity(8, 8) * 2.0), Vector::Zero(8), cfg);
  REQUIRE(sol.converged);
  REQUIRE(sol.x.cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(sol.objective == 0.0);
}

TEST_CASE("1-sparse recovery matches the LP oracle in support and value") {
  Rng rng(31);
  const Matrix A = random_pm1(rng, 6, 8);
  Vector x0 = Vector::Zero(8);
  x0[3] = 1.75;
  const Vector y = A * x0;

  const auto lp = hfv_tests::basis_pursuit_lp(A, y);
  REQUIRE(lp.feasible);

  SolverConfig cfg;
  cfg.max_iters = 20000;
  cfg.tol = 1e-12;
  const auto sol = solve_l1(A, y, cfg);
  REQUIRE((sol.x - lp.x).cwiseAbs().maxCoeff() < 1e-6);
  REQUIRE(sol.objective == Catch::Approx(lp.objective).epsilon(1e-6));
}

TEST_CASE("solver objective matches the LP oracle on random basis pursuit instances") {
  Rng rng(77);
  for (int inst = 0; inst < 8; ++inst) {
    const int n = 10 + static_cast<int>(rng.below(11));  // 10..20
    const int m = 6 + static_cast<int>(rng.below(std::min<std::uint64_t>(11, n - 5)));
    const Matrix A = random_pm1(rng, m, n);
    Vector x0 = Vector::Zero(n);
    const int s = 1 + static_cast<int>(rng.below(3));
    for (int j = 0; j < s; ++j) x0[rng.below(n)] = rng.gaussian();
    const Vector y = A * x0;

    const auto lp = hfv_tests::basis_pursuit_lp(A, y);
    REQUIRE(lp.feasible);

    SolverConfig cfg;
    cfg.max_iters = 30000;
    cfg.tol = 1e-12;
    const auto sol = solve_l1(A, y, cfg);
    REQUIRE(sol.residual <= 1e-9 * std::max(1.0, y.norm()));
    REQUIRE(sol.objective ==
            Catch::Approx(lp.objective).epsilon(1e-5).margin(1e-7));
  }
}

TEST_CASE("returned points are feasible to tolerance") {
  Rng rng(42);
  const Matrix A = random_pm1(rng, 10, 16);
  Vector x0 = Vector::Zero(16);
  x0[2] = 2.0;
  x0[9] = -1.0;
  const Vector clean = A * x0;

  SECTION("sigma = 0") {
    SolverConfig cfg;
    const auto sol = solve_l1(A, clean, cfg);
    REQUIRE(sol.feasible);
    REQUIRE(sol.residual <= cfg.tol * clean.norm());
  }
  SECTION("sigma > 0") {
    Vector y = clean;
    for (long i = 0; i < y.size(); ++i) y[i] += 0.05 * rng.gaussian();
    SolverConfig cfg;
    cfg.sigma = 0.25;
    const auto sol = solve_l1(A, y, cfg);
    REQUIRE(sol.feasible);
    REQUIRE(sol.residual <= cfg.sigma * (1.0 + cfg.tol));
    // the constraint should be active at the optimum here
    REQUIRE(sol.residual == Catch::Approx(cfg.sigma).epsilon(1e-6));
  }
}

TEST_CASE("the recorded objective trace is non-increasing") {
  Rng rng(88);
  const Matrix A = random_pm1(rng, 8, 14);
  Vector x0 = Vector::Zero(14);
  x0[1] = 1.0;
  x0[7] = -2.0;
  const Vector y = A * x0;
  SolverConfig cfg;
  cfg.max_iters = 500;
  const auto sol = solve_l1(A, y, cfg);
  for (size_t i = 1; i < sol.trace.size(); ++i)
    REQUIRE(sol.trace[i].objective <= sol.trace[i - 1].objective + 1e-9);
}

TEST_CASE("non-convergence is flagged, never silent") {
  Rng rng(3);
  const Matrix A = random_pm1(rng, 6, 12);
  Vector x0 = Vector::Zero(12);
  x0[4] = 1.0;
  const Vector y = A * x0;
  SolverConfig cfg;
  cfg.max_iters = 3;  // cannot possibly converge in 3 iterations
  const auto sol = solve_l1(A, y, cfg);
  REQUIRE_FALSE(sol.converged);
  REQUIRE(sol.iterations == 3);
}

TEST_CASE("synthesis recovery is exact when the frame-wise block is invertible") {
  // K = T with an invertible B: the feasible set is a single point, so the
  // solve must return the original volume regardless of sparsity.
  const int T = 4;
  ExposureCodeSet codes;
  std::uint64_t seed = 0;
  Matrix B(T, T);
  do {
    codes = gen_frame_wise(T, T, 4, 4, ++seed);
    for (int k = 0; k < T; ++k)
      for (int t = 0; t < T; ++t) B(k, t) = codes.frame_bit(k, t);
  } while (std::abs(B.determinant()) < 0.5);

  SyntheticSceneSpec spec = scripted_moving_scene();
  spec.frames = T;
  spec.width = 4;
  spec.height = 4;
  const VideoVolume scene = synth_scene(spec);
  const auto meas = acquire(scene, codes);

  SolverConfig cfg;
  cfg.mode = RecoveryMode::SynthesisFourier;
  cfg.max_iters = 3000;
  cfg.tol = 1e-10;
  const auto rep = recover_synthesis(meas, codes, cfg, &scene);
  REQUIRE((rep.recovered.data() - scene.data()).norm() <= 1e-8 * scene.data().norm());
}

TEST_CASE("synthesis recovery of zero measurements is the zero volume") {
  const auto codes = gen_pixel_wise(2, 4, 4, 4, 9);
  MeasurementTensor meas(2, 4, 4);
  SolverConfig cfg;
  cfg.mode = RecoveryMode::SynthesisFourier;
  cfg.max_iters = 100;
  const auto rep = recover_synthesis(meas, codes, cfg);
  REQUIRE(rep.recovered.data().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("synthesis recovers an exactly Fourier-sparse volume from pixel-wise codes") {
  SyntheticSceneSpec spec;
  spec.kind = SceneKind::FourierSparse;
  spec.frames = 8;
  spec.width = 6;
  spec.height = 6;
  spec.sparsity = 3;
  spec.seed = 5;
  const VideoVolume scene = synth_scene(spec);
  const auto codes = gen_pixel_wise(4, 8, 6, 6, 31);
  const auto meas = acquire(scene, codes);
  SolverConfig cfg;
  cfg.mode = RecoveryMode::SynthesisFourier;
  cfg.max_iters = 6000;
  cfg.tol = 1e-9;
  const auto rep = recover_synthesis(meas, codes, cfg, &scene);
  REQUIRE((rep.recovered.data() - scene.data()).norm() <= 1e-3 * scene.data().norm());
}

TEST_CASE("analysis recovery pins a constant video from a single camera") {
  // Constants lie in null(Theta); any code with at least one exposed frame
  // per pixel fixes the level through the data term.
  const int T = 4;
  ExposureCodeSet codes = gen_pixel_wise(1, T, 4, 4, 77);
  for (long p = 0; p < codes.pixels(); ++p) {
    bool any = false;
    for (int t = 0; t < T; ++t) any |= codes.bits[p * T + t] != 0;
    if (!any) codes.bits[p * T] = 1;
  }
  VideoVolume scene(T, 4, 4);
  scene.data().setConstant(123.0);
  const auto meas = acquire(scene, codes);
  SolverConfig cfg;
  cfg.max_iters = 30000;
  cfg.tol = 1e-13;
  const auto rep = recover_analysis(meas, codes, cfg, &scene);
  REQUIRE((rep.recovered.data() - scene.data()).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("analysis recovery of a static piecewise-linear scene is sharp at K=2") {
  SyntheticSceneSpec spec;
  spec.kind = SceneKind::StaticLinearPatch;
  spec.frames = 8;
  spec.width = 16;
  spec.height = 16;
  const VideoVolume scene = synth_scene(spec);
  const auto codes = gen_pixel_wise(2, 8, 16, 16, 13);
  const auto meas = acquire(scene, codes);
  SolverConfig cfg;
  cfg.max_iters = 4000;
  const auto rep = recover_analysis(meas, codes, cfg, &scene);
  REQUIRE(rep.mean_psnr >= 40.0);
}

TEST_CASE("analysis recovery of zero measurements is the zero volume") {
  const auto codes = gen_column_row(2, 4, 4, 4, 3);
  MeasurementTensor meas(2, 4, 4);
  SolverConfig cfg;
  cfg.max_iters = 100;
  const auto rep = recover_analysis(meas, codes, cfg);
  REQUIRE(rep.recovered.data().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sigma helper converts noise std to the l2 radius") {
  REQUIRE(sigma_radius_from_noise_std(256, 2.0) == Catch::Approx(32.0));
  REQUIRE(sigma_radius_from_noise_std(100, 0.0) == 0.0);
}

TEST_CASE("solver configs are validated") {
  SolverConfig cfg;
  cfg.tol = 0.0;
  REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.sigma = -1.0;
  REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.primal_step = 0.5;  // dual left unset
  REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
}
