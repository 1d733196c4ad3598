#ifndef HFV_TRANSFORMS_HPP
#define HFV_TRANSFORMS_HPP

#include <complex>
#include <numbers>

#include "hfv/volume.hpp"

namespace hfv {

/// Half-sample symmetric (mirror) index extension, used by every spatial
/// stencil and by the PSF convolution.
inline int mirror_index(int i, int n) {
  if (n == 1) return 0;
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - 1 - i;
  }
  return i;
}

/// Unitary 3D DFT over (t, u, v), applied axis by axis with precomputed
/// per-axis coefficient matrices. Unitary normalization (1/sqrt(d) per axis)
/// makes the inverse equal the conjugate transpose.
class Dft3 {
 public:
  explicit Dft3(Dims dims) : dims_(dims) {
    axis_t_ = axis_matrix(dims.frames);
    axis_u_ = axis_matrix(dims.width);
    axis_v_ = axis_matrix(dims.height);
  }

  const Dims& dims() const { return dims_; }
  long size() const { return dims_.samples(); }

  template <typename Derived>
  CVector forward(const Eigen::MatrixBase<Derived>& volume) const {
    return apply(volume.template cast<std::complex<double>>(), false);
  }
  CVector inverse(const CVector& coeffs) const { return apply(coeffs, true); }

  /// Real part of the inverse transform; the imaginary part is returned via
  /// max_imag so callers can verify it is residue rather than signal.
  Vector inverse_real(const CVector& coeffs, double* max_imag = nullptr) const {
    const CVector full = inverse(coeffs);
    if (max_imag) *max_imag = full.imag().cwiseAbs().maxCoeff();
    return full.real();
  }

 private:
  static CMatrix axis_matrix(int d) {
    CMatrix w(d, d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const double angle = -2.0 * std::numbers::pi * static_cast<double>(j) * k / d;
        w(j, k) = std::polar(scale, angle);
      }
    return w;
  }

  CVector apply(const CVector& in, bool inverse) const {
    require(in.size() == size(), "Dft3: input size mismatch");
    const int T = dims_.frames, Nx = dims_.width, Ny = dims_.height;
    CVector buf = in;
    CVector tmp;

    auto apply_axis = [&](const CMatrix& w, long stride, long count, long block) {
      // Transforms `count` interleaved vectors of length w.rows(); elements
      // of each vector sit `stride` apart, vectors are grouped in `block`s.
      const int d = static_cast<int>(w.rows());
      CMatrix m = inverse ? w.adjoint() : w;
      CVector slice(d), out(d);
      tmp.resize(buf.size());
      for (long g = 0; g < count; ++g) {
        const long base = (g / block) * block * d + (g % block);
        for (int j = 0; j < d; ++j) slice[j] = buf[base + j * stride];
        out.noalias() = m * slice;
        for (int j = 0; j < d; ++j) tmp[base + j * stride] = out[j];
      }
      buf.swap(tmp);
    };

    // t axis: contiguous series per pixel.
    apply_axis(axis_t_, 1, static_cast<long>(Nx) * Ny, 1);
    // u axis: stride T within a row of pixels.
    apply_axis(axis_u_, T, static_cast<long>(Ny) * T, T);
    // v axis: stride Nx*T.
    apply_axis(axis_v_, static_cast<long>(Nx) * T, static_cast<long>(Nx) * T, static_cast<long>(Nx) * T);
    return buf;
  }

  Dims dims_{};
  CMatrix axis_t_, axis_u_, axis_v_;
};

/// Per-frame 5-point spatial Laplacian with mirror boundary:
/// f(u+1,v) + f(u-1,v) + f(u,v+1) + f(u,v-1) - 4 f(u,v).
inline Vector theta1_apply(const Vector& f, Dims d) {
  require(f.size() == d.samples(), "theta1: size mismatch");
  Vector out(f.size());
  auto at = [&](int u, int v, int t) -> double {
    return f[(static_cast<long>(v) * d.width + u) * d.frames + t];
  };
  for (int v = 0; v < d.height; ++v)
    for (int u = 0; u < d.width; ++u) {
      const int um = mirror_index(u - 1, d.width), up = mirror_index(u + 1, d.width);
      const int vm = mirror_index(v - 1, d.height), vp = mirror_index(v + 1, d.height);
      for (int t = 0; t < d.frames; ++t)
        out[(static_cast<long>(v) * d.width + u) * d.frames + t] =
            at(up, v, t) + at(um, v, t) + at(u, vp, t) + at(u, vm, t) - 4.0 * at(u, v, t);
    }
  return out;
}

inline Vector theta1_adjoint(const Vector& z, Dims d) {
  require(z.size() == d.samples(), "theta1 adjoint: size mismatch");
  Vector out = Vector::Zero(z.size());
  auto idx = [&](int u, int v, int t) -> long {
    return (static_cast<long>(v) * d.width + u) * d.frames + t;
  };
  for (int v = 0; v < d.height; ++v)
    for (int u = 0; u < d.width; ++u) {
      const int um = mirror_index(u - 1, d.width), up = mirror_index(u + 1, d.width);
      const int vm = mirror_index(v - 1, d.height), vp = mirror_index(v + 1, d.height);
      for (int t = 0; t < d.frames; ++t) {
        const double w = z[idx(u, v, t)];
        out[idx(up, v, t)] += w;
        out[idx(um, v, t)] += w;
        out[idx(u, vp, t)] += w;
        out[idx(u, vm, t)] += w;
        out[idx(u, v, t)] -= 4.0 * w;
      }
    }
  return out;
}

/// Spatial gradient of the temporal forward difference. With
/// d_t = f_{t+1} - f_t (zero-extended so d_{T-1} = 0), the output plane is
/// (d_t(u+1,v) - d_t(u,v)) + (d_t(u,v+1) - d_t(u,v)), mirror boundary.
/// One output per sample; the two spatial differences are summed so the
/// operator is square like the Laplacian plane.
inline Vector theta2_apply(const Vector& f, Dims d) {
  require(f.size() == d.samples(), "theta2: size mismatch");
  Vector out = Vector::Zero(f.size());
  auto at = [&](int u, int v, int t) -> double {
    return f[(static_cast<long>(v) * d.width + u) * d.frames + t];
  };
  auto dt = [&](int u, int v, int t) -> double {
    return t + 1 < d.frames ? at(u, v, t + 1) - at(u, v, t) : 0.0;
  };
  for (int v = 0; v < d.height; ++v)
    for (int u = 0; u < d.width; ++u) {
      const int up = mirror_index(u + 1, d.width);
      const int vp = mirror_index(v + 1, d.height);
      for (int t = 0; t < d.frames; ++t)
        out[(static_cast<long>(v) * d.width + u) * d.frames + t] =
            (dt(up, v, t) - dt(u, v, t)) + (dt(u, vp, t) - dt(u, v, t));
    }
  return out;
}

inline Vector theta2_adjoint(const Vector& z, Dims d) {
  require(z.size() == d.samples(), "theta2 adjoint: size mismatch");
  // Adjoint of the temporal difference applied after scattering the spatial
  // differences, mirroring the gather order of theta2_apply exactly.
  Vector dt_adj = Vector::Zero(z.size());
  auto idx = [&](int u, int v, int t) -> long {
    return (static_cast<long>(v) * d.width + u) * d.frames + t;
  };
  for (int v = 0; v < d.height; ++v)
    for (int u = 0; u < d.width; ++u) {
      const int up = mirror_index(u + 1, d.width);
      const int vp = mirror_index(v + 1, d.height);
      for (int t = 0; t < d.frames; ++t) {
        const double w = z[idx(u, v, t)];
        dt_adj[idx(up, v, t)] += w;
        dt_adj[idx(u, vp, t)] += w;
        dt_adj[idx(u, v, t)] -= 2.0 * w;
      }
    }
  Vector out = Vector::Zero(z.size());
  for (int v = 0; v < d.height; ++v)
    for (int u = 0; u < d.width; ++u)
      for (int t = 0; t + 1 < d.frames; ++t) {
        const double w = dt_adj[idx(u, v, t)];
        out[idx(u, v, t + 1)] += w;
        out[idx(u, v, t)] -= w;
      }
  return out;
}

/// Redundant analysis stack [theta1; theta2], size 2*T*Nx*Ny.
inline Vector theta_apply(const Vector& f, Dims d) {
  const long n = d.samples();
  Vector out(2 * n);
  out.head(n) = theta1_apply(f, d);
  out.tail(n) = theta2_apply(f, d);
  return out;
}

inline Vector theta_adjoint(const Vector& stack, Dims d) {
  const long n = d.samples();
  require(stack.size() == 2 * n, "theta adjoint: size mismatch");
  return theta1_adjoint(stack.head(n), d) + theta2_adjoint(stack.tail(n), d);
}

}  // namespace hfv

#endif  // HFV_TRANSFORMS_HPP
