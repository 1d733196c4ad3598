#ifndef HFV_FORWARD_HPP
#define HFV_FORWARD_HPP

#include <vector>

#include "hfv/codes.hpp"
#include "hfv/transforms.hpp"
#include "hfv/volume.hpp"

namespace hfv {

inline void check_video_codes(const Dims& d, const ExposureCodeSet& codes) {
  require(d.frames == codes.frames && d.width == codes.width && d.height == codes.height,
          "video/code dimension mismatch");
}

/// Noise-free application of the measurement matrix A: per pixel,
/// y_k(u,v) = <b_k^{u,v}, f_{u,v}>. Block-diagonal over pixels by layout.
inline Vector apply_A(const ExposureCodeSet& codes, const Vector& x) {
  require(x.size() == codes.dims().samples(), "apply_A: input size mismatch");
  const int K = codes.cameras, T = codes.frames;
  Vector y(codes.measurements());
  long p = 0;
  for (int v = 0; v < codes.height; ++v)
    for (int u = 0; u < codes.width; ++u, ++p) {
      const double* f = x.data() + p * T;
      for (int k = 0; k < K; ++k) {
        double acc = 0.0;
        for (int t = 0; t < T; ++t)
          if (codes.bit_at(k, u, v, t)) acc += f[t];
        y[p * K + k] = acc;
      }
    }
  return y;
}

/// Exact transpose of apply_A: (A^T y)_{u,v} = sum_k y_k(u,v) b_k^{u,v}.
inline Vector apply_A_adjoint(const ExposureCodeSet& codes, const Vector& y) {
  require(y.size() == codes.measurements(), "apply_A_adjoint: input size mismatch");
  const int K = codes.cameras, T = codes.frames;
  Vector x = Vector::Zero(codes.dims().samples());
  long p = 0;
  for (int v = 0; v < codes.height; ++v)
    for (int u = 0; u < codes.width; ++u, ++p) {
      double* f = x.data() + p * T;
      for (int k = 0; k < K; ++k) {
        const double w = y[p * K + k];
        if (w == 0.0) continue;
        for (int t = 0; t < T; ++t)
          if (codes.bit_at(k, u, v, t)) f[t] += w;
      }
    }
  return x;
}

/// Coded acquisition y = A f + n with i.i.d. zero-mean Gaussian noise of
/// std noise_sigma drawn from noise_seed. noise_sigma is recorded in the
/// output tensor.
inline MeasurementTensor acquire(const VideoVolume& video, const ExposureCodeSet& codes,
                                 double noise_sigma = 0.0, std::uint64_t noise_seed = 0) {
  check_video_codes(video.dims(), codes);
  require(noise_sigma >= 0.0, "acquire: noise_sigma must be >= 0");
  MeasurementTensor y(codes.cameras, codes.width, codes.height, noise_sigma);
  y.data() = apply_A(codes, video.data());
  if (noise_sigma > 0.0) {
    Rng rng(noise_seed);
    for (long i = 0; i < y.size(); ++i) y.data()[i] += rng.gaussian(0.0, noise_sigma);
  }
  return y;
}

/// Camera PSF: odd-support non-negative kernel summing to 1, plus one
/// sub-pixel displacement (dx, dy) per camera in pixel units.
struct PsfModel {
  Matrix kernel;  // (2r+1) x (2r+1), kernel(j, i) weights offset (i - r, j - r)
  std::vector<std::pair<double, double>> displacements;  // (dx_k, dy_k)

  static PsfModel delta(int cameras) {
    PsfModel psf;
    psf.kernel = Matrix::Ones(1, 1);
    psf.displacements.assign(cameras, {0.0, 0.0});
    return psf;
  }

  static PsfModel box(int cameras, int radius) {
    PsfModel psf;
    const int d = 2 * radius + 1;
    psf.kernel = Matrix::Constant(d, d, 1.0 / (d * d));
    psf.displacements.assign(cameras, {0.0, 0.0});
    return psf;
  }

  static PsfModel gaussian(int cameras, int radius, double sigma) {
    PsfModel psf;
    const int d = 2 * radius + 1;
    psf.kernel.resize(d, d);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) {
        const double dx = i - radius, dy = j - radius;
        psf.kernel(j, i) = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      }
    psf.kernel /= psf.kernel.sum();
    psf.displacements.assign(cameras, {0.0, 0.0});
    return psf;
  }

  void validate(int cameras) const {
    require(kernel.rows() % 2 == 1 && kernel.cols() % 2 == 1, "PSF: support must be odd");
    require(kernel.minCoeff() >= 0.0, "PSF: kernel weights must be non-negative");
    require(std::abs(kernel.sum() - 1.0) < 1e-9, "PSF: kernel must sum to 1");
    require(static_cast<int>(displacements.size()) == cameras,
            "PSF: one displacement per camera required");
  }
};

namespace detail {

/// Kernel taps after shifting by the camera displacement: each original tap
/// is split over the four surrounding integer offsets with bilinear weights.
/// Weights stay non-negative and still sum to 1.
struct ShiftedKernel {
  std::vector<std::tuple<int, int, double>> taps;  // (du, dv, weight)
};

inline ShiftedKernel shift_kernel(const Matrix& kernel, double dx, double dy) {
  const int ry = static_cast<int>(kernel.rows()) / 2;
  const int rx = static_cast<int>(kernel.cols()) / 2;
  const int fx = static_cast<int>(std::floor(dx));
  const int fy = static_cast<int>(std::floor(dy));
  const double ax = dx - fx, ay = dy - fy;
  const double w00 = (1 - ax) * (1 - ay), w10 = ax * (1 - ay);
  const double w01 = (1 - ax) * ay, w11 = ax * ay;

  std::vector<std::vector<double>> acc;
  const int out_w = static_cast<int>(kernel.cols()) + 2;
  const int out_h = static_cast<int>(kernel.rows()) + 2;
  acc.assign(out_h, std::vector<double>(out_w, 0.0));
  for (int j = 0; j < kernel.rows(); ++j)
    for (int i = 0; i < kernel.cols(); ++i) {
      const double w = kernel(j, i);
      if (w == 0.0) continue;
      acc[j][i] += w * w00;
      acc[j][i + 1] += w * w10;
      acc[j + 1][i] += w * w01;
      acc[j + 1][i + 1] += w * w11;
    }
  ShiftedKernel out;
  for (int j = 0; j < out_h; ++j)
    for (int i = 0; i < out_w; ++i)
      if (acc[j][i] != 0.0)
        out.taps.emplace_back(i - rx + fx, j - ry + fy, acc[j][i]);
  return out;
}

}  // namespace detail

/// Per-frame 2D convolution of the video with the PSF, evaluated on the
/// grid of camera `camera` shifted by its displacement. Mirror extension at
/// the frame borders keeps constant frames invariant.
inline Vector apply_psf_forward(const Vector& f, Dims d, const PsfModel& psf, int camera) {
  require(camera >= 0 && camera < static_cast<int>(psf.displacements.size()),
          "apply_psf_forward: camera out of range");
  require(f.size() == d.samples(), "apply_psf_forward: size mismatch");
  const auto [dx, dy] = psf.displacements[camera];
  const detail::ShiftedKernel kern = detail::shift_kernel(psf.kernel, dx, dy);
  Vector g = Vector::Zero(f.size());
  auto idx = [&](int u, int v, int t) -> long {
    return (static_cast<long>(v) * d.width + u) * d.frames + t;
  };
  for (int v = 0; v < d.height; ++v)
    for (int u = 0; u < d.width; ++u)
      for (const auto& [du, dv, w] : kern.taps) {
        const int su = mirror_index(u - du, d.width);
        const int sv = mirror_index(v - dv, d.height);
        for (int t = 0; t < d.frames; ++t) g[idx(u, v, t)] += w * f[idx(su, sv, t)];
      }
  return g;
}

inline Vector apply_psf_adjoint(const Vector& g, Dims d, const PsfModel& psf, int camera) {
  require(camera >= 0 && camera < static_cast<int>(psf.displacements.size()),
          "apply_psf_adjoint: camera out of range");
  require(g.size() == d.samples(), "apply_psf_adjoint: size mismatch");
  const auto [dx, dy] = psf.displacements[camera];
  const detail::ShiftedKernel kern = detail::shift_kernel(psf.kernel, dx, dy);
  Vector f = Vector::Zero(g.size());
  auto idx = [&](int u, int v, int t) -> long {
    return (static_cast<long>(v) * d.width + u) * d.frames + t;
  };
  for (int v = 0; v < d.height; ++v)
    for (int u = 0; u < d.width; ++u)
      for (const auto& [du, dv, w] : kern.taps) {
        const int su = mirror_index(u - du, d.width);
        const int sv = mirror_index(v - dv, d.height);
        for (int t = 0; t < d.frames; ++t) f[idx(su, sv, t)] += w * g[idx(u, v, t)];
      }
  return f;
}

/// Noise-free linear part of acquire_with_psf: per camera, PSF blur on the
/// displaced grid followed by the coded temporal inner product (A = B H).
inline Vector apply_A_psf(const ExposureCodeSet& codes, const PsfModel& psf, const Vector& x) {
  require(x.size() == codes.dims().samples(), "apply_A_psf: input size mismatch");
  psf.validate(codes.cameras);
  const int K = codes.cameras, T = codes.frames;
  const Dims d = codes.dims();
  Vector y(codes.measurements());
  for (int k = 0; k < K; ++k) {
    const Vector g = apply_psf_forward(x, d, psf, k);
    long p = 0;
    for (int v = 0; v < codes.height; ++v)
      for (int u = 0; u < codes.width; ++u, ++p) {
        double acc = 0.0;
        for (int t = 0; t < T; ++t)
          if (codes.bit_at(k, u, v, t)) acc += g[p * T + t];
        y[p * K + k] = acc;
      }
  }
  return y;
}

inline Vector apply_A_psf_adjoint(const ExposureCodeSet& codes, const PsfModel& psf,
                                  const Vector& y) {
  require(y.size() == codes.measurements(), "apply_A_psf_adjoint: size mismatch");
  psf.validate(codes.cameras);
  const int K = codes.cameras, T = codes.frames;
  const Dims d = codes.dims();
  Vector x = Vector::Zero(d.samples());
  Vector g(d.samples());
  for (int k = 0; k < K; ++k) {
    g.setZero();
    long p = 0;
    for (int v = 0; v < codes.height; ++v)
      for (int u = 0; u < codes.width; ++u, ++p) {
        const double w = y[p * K + k];
        if (w == 0.0) continue;
        for (int t = 0; t < T; ++t)
          if (codes.bit_at(k, u, v, t)) g[p * T + t] += w;
      }
    x += apply_psf_adjoint(g, d, psf, k);
  }
  return x;
}

inline MeasurementTensor acquire_with_psf(const VideoVolume& video, const ExposureCodeSet& codes,
                                          const PsfModel& psf, double noise_sigma = 0.0,
                                          std::uint64_t noise_seed = 0) {
  check_video_codes(video.dims(), codes);
  require(noise_sigma >= 0.0, "acquire_with_psf: noise_sigma must be >= 0");
  MeasurementTensor y(codes.cameras, codes.width, codes.height, noise_sigma);
  y.data() = apply_A_psf(codes, psf, video.data());
  if (noise_sigma > 0.0) {
    Rng rng(noise_seed);
    for (long i = 0; i < y.size(); ++i) y.data()[i] += rng.gaussian(0.0, noise_sigma);
  }
  return y;
}

inline constexpr long kDenseColumnCap = 4096;

/// Dense (K Nx Ny) x (T Nx Ny) measurement matrix, for oracles and
/// small-instance isometry enumeration only. Row m = p*K + k, column
/// i = p'*T + t; off-block entries are zero.
inline Matrix build_dense_A(const ExposureCodeSet& codes, long column_cap = kDenseColumnCap) {
  const long cols = codes.dims().samples();
  require(cols <= column_cap, "build_dense_A: instance exceeds dense size cap");
  Matrix A = Matrix::Zero(codes.measurements(), cols);
  long p = 0;
  for (int v = 0; v < codes.height; ++v)
    for (int u = 0; u < codes.width; ++u, ++p)
      for (int k = 0; k < codes.cameras; ++k)
        for (int t = 0; t < codes.frames; ++t)
          A(p * codes.cameras + k, p * codes.frames + t) = codes.bit_at(k, u, v, t);
  return A;
}

/// Dense form of the PSF forward model A = B H, built directly from the
/// shifted kernel taps rather than by probing the implicit operator.
inline Matrix build_dense_A_psf(const ExposureCodeSet& codes, const PsfModel& psf,
                                long column_cap = kDenseColumnCap) {
  const long cols = codes.dims().samples();
  require(cols <= column_cap, "build_dense_A_psf: instance exceeds dense size cap");
  psf.validate(codes.cameras);
  const Dims d = codes.dims();
  Matrix A = Matrix::Zero(codes.measurements(), cols);
  for (int k = 0; k < codes.cameras; ++k) {
    const auto [dx, dy] = psf.displacements[k];
    const detail::ShiftedKernel kern = detail::shift_kernel(psf.kernel, dx, dy);
    long p = 0;
    for (int v = 0; v < d.height; ++v)
      for (int u = 0; u < d.width; ++u, ++p)
        for (const auto& [du, dv, w] : kern.taps) {
          const int su = mirror_index(u - du, d.width);
          const int sv = mirror_index(v - dv, d.height);
          const long q = static_cast<long>(sv) * d.width + su;
          for (int t = 0; t < d.frames; ++t)
            if (codes.bit_at(k, u, v, t)) A(p * codes.cameras + k, q * d.frames + t) += w;
        }
  }
  return A;
}

/// Dense signed/scaled matrix (Appendix mapping), used by the isometry
/// estimators. Rows ordered like build_dense_A with the DC row, when
/// present, as the last camera of each pixel block.
inline Matrix build_dense_signed_A(const SignedCodeSet& signed_codes,
                                   long column_cap = kDenseColumnCap) {
  const ExposureCodeSet& src = signed_codes.source();
  const long cols = src.dims().samples();
  require(cols <= column_cap, "build_dense_signed_A: instance exceeds dense size cap");
  const int Ks = signed_codes.signed_cameras();
  Matrix A = Matrix::Zero(static_cast<long>(Ks) * src.pixels(), cols);
  long p = 0;
  for (int v = 0; v < src.height; ++v)
    for (int u = 0; u < src.width; ++u, ++p)
      for (int k = 0; k < Ks; ++k)
        for (int t = 0; t < src.frames; ++t)
          A(p * Ks + k, p * src.frames + t) = signed_codes.value_at(k, u, v, t);
  return A;
}

}  // namespace hfv

#endif  // HFV_FORWARD_HPP
