#ifndef HFV_SOLVER_HPP
#define HFV_SOLVER_HPP

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>
#include <vector>

#include "hfv/codes.hpp"
#include "hfv/forward.hpp"
#include "hfv/metrics.hpp"
#include "hfv/operators.hpp"
#include "hfv/transforms.hpp"

namespace hfv {

enum class RecoveryMode { SynthesisFourier, AnalysisTheta };

inline const char* mode_name(RecoveryMode m) {
  return m == RecoveryMode::SynthesisFourier ? "synthesis" : "analysis";
}

struct SolverConfig {
  int max_iters = 2000;
  double tol = 1e-6;    // relative primal change at which iteration stops
  double sigma = 0.0;   // l2 constraint radius ||A f - y||_2 <= sigma
  RecoveryMode mode = RecoveryMode::AnalysisTheta;
  double primal_step = 0.0;  // 0 -> auto-scale from operator norm estimates
  double dual_step = 0.0;

  void validate() const {
    require(max_iters >= 1, "solver: max_iters must be >= 1");
    require(tol > 0.0, "solver: tol must be > 0");
    require(sigma >= 0.0, "solver: sigma must be >= 0");
    require(primal_step >= 0.0 && dual_step >= 0.0, "solver: steps must be >= 0");
    require((primal_step == 0.0) == (dual_step == 0.0),
            "solver: set both steps or neither");
  }
};

/// Helper from the noise model to the constraint radius: an i.i.d. Gaussian
/// error vector of std s over M measurements has expected norm ~ sqrt(M)*s.
inline double sigma_radius_from_noise_std(long measurements, double noise_std) {
  return std::sqrt(static_cast<double>(measurements)) * noise_std;
}

/// Eigen-structure of A A^T, the piece the exact l2-ball projection needs.
/// For coded acquisition A A^T is block diagonal with one K x K block per
/// pixel; for small generic operators a single dense block is used.
class MeasurementGram {
 public:
  static MeasurementGram from_codes(const ExposureCodeSet& codes) {
    MeasurementGram g;
    const int K = codes.cameras, T = codes.frames;
    g.block_size_ = K;
    const long P = codes.pixels();
    g.vectors_.reserve(codes.scheme == CodeScheme::FrameWise ? 1 : P);
    Eigen::SelfAdjointEigenSolver<Matrix> eig;
    Matrix B(K, T);
    long p = 0;
    for (int v = 0; v < codes.height; ++v)
      for (int u = 0; u < codes.width; ++u, ++p) {
        if (codes.scheme == CodeScheme::FrameWise && p > 0) break;
        for (int k = 0; k < K; ++k)
          for (int t = 0; t < T; ++t) B(k, t) = codes.bit_at(k, u, v, t);
        eig.compute(B * B.transpose());
        g.vectors_.push_back(eig.eigenvectors());
        g.values_.push_back(eig.eigenvalues().cwiseMax(0.0));
      }
    g.blocks_ = P;
    g.shared_block_ = codes.scheme == CodeScheme::FrameWise;
    g.finish();
    return g;
  }

  static MeasurementGram from_dense(const Matrix& A) {
    MeasurementGram g;
    g.block_size_ = static_cast<int>(A.rows());
    g.blocks_ = 1;
    g.shared_block_ = false;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(A * A.transpose());
    g.vectors_.push_back(eig.eigenvectors());
    g.values_.push_back(eig.eigenvalues().cwiseMax(0.0));
    g.finish();
    return g;
  }

  static MeasurementGram from_operator(const LinearOperatorPair& A) {
    Matrix dense(A.out_dim, A.in_dim);
    Vector e = Vector::Zero(A.in_dim);
    for (long j = 0; j < A.in_dim; ++j) {
      e[j] = 1.0;
      dense.col(j) = A.apply(e);
      e[j] = 0.0;
    }
    return from_dense(dense);
  }

  long dim() const { return static_cast<long>(blocks_) * block_size_; }

  /// Components of r in the eigenbasis of A A^T, aligned with eigenvalues().
  Vector to_eigenbasis(const Vector& r) const {
    Vector c(dim());
    for (long b = 0; b < blocks_; ++b)
      c.segment(b * block_size_, block_size_) =
          basis(b).transpose() * r.segment(b * block_size_, block_size_);
    return c;
  }

  Vector from_eigenbasis(const Vector& c) const {
    Vector r(dim());
    for (long b = 0; b < blocks_; ++b)
      r.segment(b * block_size_, block_size_) =
          basis(b) * c.segment(b * block_size_, block_size_);
    return r;
  }

  const Vector& eigenvalues() const { return flat_values_; }
  double eigenvalue_cutoff() const { return cutoff_; }

 private:
  const Matrix& basis(long b) const { return vectors_[shared_block_ ? 0 : b]; }

  void finish() {
    flat_values_.resize(dim());
    for (long b = 0; b < blocks_; ++b)
      flat_values_.segment(b * block_size_, block_size_) = values_[shared_block_ ? 0 : b];
    const double dmax = flat_values_.size() ? flat_values_.maxCoeff() : 0.0;
    cutoff_ = dmax * 1e-12;
  }

  int block_size_ = 0;
  long blocks_ = 0;
  bool shared_block_ = false;
  std::vector<Matrix> vectors_;
  std::vector<Vector> values_;
  Vector flat_values_;
  double cutoff_ = 0.0;
};

/// Exact Euclidean projection onto {x : ||A x - y||_2 <= sigma}. With
/// sigma = 0 this is the affine projection through the pseudo-inverse of
/// A A^T; with sigma > 0 the multiplier mu solving ||r(mu)|| = sigma is
/// found by Newton iteration on the secular equation, which is convex and
/// decreasing so the iteration converges monotonically from mu = 0.
class BallProjector {
 public:
  BallProjector(const LinearOperatorPair& A, MeasurementGram gram, Vector y, double sigma)
      : A_(A), gram_(std::move(gram)), y_(std::move(y)), sigma_(sigma) {
    require(A_.out_dim == y_.size(), "projector: measurement size mismatch");
    require(gram_.dim() == y_.size(), "projector: gram size mismatch");
  }

  double sigma() const { return sigma_; }

  /// Squared distance from y to range(A); the feasible set is empty when
  /// this exceeds sigma^2.
  double unreachable_energy(const Vector& c) const {
    const Vector& d = gram_.eigenvalues();
    double acc = 0.0;
    for (long i = 0; i < c.size(); ++i)
      if (d[i] <= gram_.eigenvalue_cutoff()) acc += c[i] * c[i];
    return acc;
  }

  Vector project(const Vector& x, double* out_residual = nullptr) const {
    Vector r0 = A_.apply(x) - y_;
    const double nr = r0.norm();
    if (nr <= sigma_) {
      if (out_residual) *out_residual = nr;
      return x;
    }
    const Vector c = gram_.to_eigenbasis(r0);
    const Vector& d = gram_.eigenvalues();
    const double cut = gram_.eigenvalue_cutoff();
    const double dead = unreachable_energy(c);

    Vector w(c.size());
    if (sigma_ == 0.0 || dead >= sigma_ * sigma_) {
      // Least-squares projection onto the closest reachable point.
      for (long i = 0; i < c.size(); ++i) w[i] = d[i] > cut ? c[i] / d[i] : 0.0;
      Vector xp = x - A_.apply_adjoint(gram_.from_eigenbasis(w));
      if (out_residual) *out_residual = std::sqrt(std::max(dead, 0.0));
      return xp;
    }

    double mu = 0.0;
    for (int it = 0; it < 80; ++it) {
      double phi = 0.0, dphi = 0.0;
      for (long i = 0; i < c.size(); ++i) {
        const double den = 1.0 + mu * d[i];
        const double q = c[i] / den;
        phi += q * q;
        dphi -= 2.0 * q * q * d[i] / den;
      }
      const double h = phi - sigma_ * sigma_;
      if (h <= sigma_ * sigma_ * 1e-12) break;
      mu -= h / dphi;
    }
    for (long i = 0; i < c.size(); ++i) w[i] = mu * c[i] / (1.0 + mu * d[i]);
    Vector xp = x - A_.apply_adjoint(gram_.from_eigenbasis(w));
    if (out_residual) *out_residual = sigma_;
    return xp;
  }

 private:
  const LinearOperatorPair& A_;
  MeasurementGram gram_;
  Vector y_;
  double sigma_;
};

struct SolveTraceEntry {
  int iter = 0;
  double objective = 0.0;
  double residual = 0.0;
};

struct SolveResult {
  Vector x;
  bool converged = false;
  bool feasible = false;
  int iterations = 0;
  double objective = 0.0;
  double residual = 0.0;
  std::vector<SolveTraceEntry> trace;
};

/// Sum of group l2 norms; group_size 1 gives the plain l1 norm, group_size
/// 2 the l1 norm of complex magnitudes over interleaved (re, im) pairs.
inline double group_l1_norm(const Vector& w, int group_size) {
  if (group_size == 1) return w.lpNorm<1>();
  double acc = 0.0;
  for (long g = 0; g < w.size(); g += group_size)
    acc += w.segment(g, group_size).norm();
  return acc;
}

inline void project_dual_groups(Vector& p, int group_size) {
  if (group_size == 1) {
    p = p.cwiseMax(-1.0).cwiseMin(1.0);
    return;
  }
  for (long g = 0; g < p.size(); g += group_size) {
    const double n = p.segment(g, group_size).norm();
    if (n > 1.0) p.segment(g, group_size) /= n;
  }
}

/// First-order primal-dual iteration for
///   min ||W x||_(group l1)  s.t.  ||A x - y||_2 <= sigma.
/// The ball constraint is handled by exact projection each iteration, so
/// every iterate is feasible; the returned point is the feasible iterate of
/// smallest objective seen (the incumbent), and the recorded trace reports
/// the incumbent, which is non-increasing by construction. W = nullptr means
/// the identity sparsifier.
inline SolveResult solve_l1(const LinearOperatorPair& A, const MeasurementGram& gram,
                            const LinearOperatorPair* W, int group_size, const Vector& y,
                            const SolverConfig& cfg) {
  cfg.validate();
  require(y.size() == A.out_dim, "solve_l1: measurement size mismatch");
  if (W) require(W->in_dim == A.in_dim, "solve_l1: sparsifier dimension mismatch");

  const BallProjector projector(A, gram, y, cfg.sigma);
  const double feas_thresh =
      cfg.sigma > 0.0 ? cfg.sigma * (1.0 + cfg.tol)
                      : std::max(cfg.tol * y.norm(), 1e-30);

  double wnorm = 1.0;
  double tau = cfg.primal_step, sig = cfg.dual_step;
  if (tau == 0.0) {
    if (W) wnorm = std::max(operator_norm_estimate(*W), 1e-12);
    tau = 0.95 / wnorm;
    sig = 0.95 / wnorm;
  }

  auto sparsify = [&](const Vector& x) -> Vector { return W ? W->apply(x) : x; };
  auto unsparsify = [&](const Vector& p) -> Vector { return W ? W->apply_adjoint(p) : p; };

  double resid = 0.0;
  Vector x = projector.project(Vector::Zero(A.in_dim), &resid);
  Vector xbar = x;
  Vector p = Vector::Zero(W ? W->out_dim : A.in_dim);

  SolveResult result;
  result.trace.reserve(cfg.max_iters);
  double best_obj = group_l1_norm(sparsify(x), group_size);
  double best_resid = resid;
  Vector best_x = x;
  bool have_feasible = resid <= feas_thresh;

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    p += sig * sparsify(xbar);
    project_dual_groups(p, group_size);

    Vector xnew = projector.project(x - tau * unsparsify(p), &resid);
    const double rel_change = (xnew - x).norm() / std::max(1.0, xnew.norm());
    xbar = 2.0 * xnew - x;
    x.swap(xnew);

    const double obj = group_l1_norm(sparsify(x), group_size);
    const bool feas = resid <= feas_thresh;
    if (feas && (!have_feasible || obj < best_obj)) {
      have_feasible = true;
      best_obj = obj;
      best_resid = resid;
      best_x = x;
    } else if (!have_feasible && resid < best_resid) {
      best_obj = obj;
      best_resid = resid;
      best_x = x;
    }
    result.trace.push_back({iter, best_obj, best_resid});
    result.iterations = iter;

    if (rel_change <= cfg.tol && iter >= 10) {
      result.converged = true;
      break;
    }
  }

  result.x = std::move(best_x);
  result.objective = best_obj;
  result.residual = best_resid;
  result.feasible = have_feasible;
  if (!have_feasible) result.converged = false;
  return result;
}

/// Convenience overload for small dense instances (oracle tests, generic
/// basis pursuit): plain l1 objective, operator and gram built densely.
inline SolveResult solve_l1(const Matrix& A, const Vector& y, const SolverConfig& cfg) {
  LinearOperatorPair op = dense_operator(A);
  MeasurementGram gram = MeasurementGram::from_dense(A);
  return solve_l1(op, gram, nullptr, 1, y, cfg);
}

// ---------------------------------------------------------------------------
// Recovery drivers
// ---------------------------------------------------------------------------

struct RecoveryReport {
  VideoVolume recovered;
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;
  double objective = 0.0;
  std::string fingerprint;
  std::vector<SolveTraceEntry> trace;
  std::vector<double> per_frame_psnr;  // filled when ground truth is supplied
  double mean_psnr = 0.0;
  std::vector<int> failed_tiles;       // tile ids whose solve did not converge
};

inline LinearOperatorPair make_A_operator(const ExposureCodeSet& codes) {
  return {codes.dims().samples(), codes.measurements(),
          [&codes](const Vector& x) { return apply_A(codes, x); },
          [&codes](const Vector& y) { return apply_A_adjoint(codes, y); }};
}

inline LinearOperatorPair make_theta_operator(const Dims& d) {
  return {d.samples(), 2 * d.samples(),
          [d](const Vector& x) { return theta_apply(x, d); },
          [d](const Vector& z) { return theta_adjoint(z, d); }};
}

namespace detail {

inline Vector pack_complex(const CVector& z) {
  Vector r(2 * z.size());
  for (long i = 0; i < z.size(); ++i) {
    r[2 * i] = z[i].real();
    r[2 * i + 1] = z[i].imag();
  }
  return r;
}

inline CVector unpack_complex(const Vector& r) {
  CVector z(r.size() / 2);
  for (long i = 0; i < z.size(); ++i) z[i] = {r[2 * i], r[2 * i + 1]};
  return z;
}

inline std::string fingerprint(std::uint64_t codes_seed, const SolverConfig& cfg) {
  std::ostringstream os;
  os << codes_seed << '|' << cfg.max_iters << '|' << cfg.tol << '|' << cfg.sigma << '|'
     << mode_name(cfg.mode) << '|' << cfg.primal_step << '|' << cfg.dual_step;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(os.str())));
  return std::string(buf);
}

inline void attach_psnr(RecoveryReport& rep, const VideoVolume* truth) {
  if (!truth) return;
  const PsnrReport p = psnr_per_frame(*truth, rep.recovered);
  rep.per_frame_psnr = p.per_frame;
  rep.mean_psnr = p.mean;
}

}  // namespace detail

/// Sparse synthesis recovery (3D Fourier basis): the unknown is the complex
/// coefficient vector, the measurement operator is A composed with the real
/// part of the inverse DFT, and the objective is the l1 norm of complex
/// magnitudes. All iterates stay conjugate-symmetric, so the reconstruction
/// is real by construction; the residue check guards the contract anyway.
inline RecoveryReport recover_synthesis(const MeasurementTensor& meas,
                                        const ExposureCodeSet& codes, const SolverConfig& cfg,
                                        const VideoVolume* truth = nullptr) {
  require(meas.cameras() == codes.cameras && meas.width() == codes.width &&
              meas.height() == codes.height,
          "recover_synthesis: measurement/code dimension mismatch");
  const Dims d = codes.dims();
  const Dft3 dft(d);
  const LinearOperatorPair A_codes = make_A_operator(codes);

  LinearOperatorPair K;
  K.in_dim = 2 * d.samples();
  K.out_dim = codes.measurements();
  K.forward = [&](const Vector& xr) {
    const CVector coeffs = detail::unpack_complex(xr);
    const Vector f = dft.inverse(coeffs).real();
    return apply_A(codes, f);
  };
  K.adjoint = [&](const Vector& q) {
    const Vector g = apply_A_adjoint(codes, q);
    return detail::pack_complex(dft.forward(g));
  };

  // K K^T = A A^T because the real-inverse-DFT factor is a coisometry.
  MeasurementGram gram = MeasurementGram::from_codes(codes);
  const SolveResult sol = solve_l1(K, gram, nullptr, 2, meas.data(), cfg);

  const CVector coeffs = detail::unpack_complex(sol.x);
  const CVector full = dft.inverse(coeffs);
  const double imag_residue = full.imag().cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, full.real().cwiseAbs().maxCoeff());
  if (imag_residue > 1e-8 * scale)
    throw std::runtime_error("recover_synthesis: non-real reconstruction (imaginary residue)");

  RecoveryReport rep;
  rep.recovered = VideoVolume(d, full.real());
  rep.converged = sol.converged;
  rep.iterations = sol.iterations;
  rep.residual = sol.residual;
  rep.objective = sol.objective;
  rep.trace = sol.trace;
  rep.fingerprint = detail::fingerprint(codes.seed, cfg);
  detail::attach_psnr(rep, truth);
  return rep;
}

/// Sparse analysis recovery: min ||Theta f||_1 s.t. ||A f - y||_2 <= sigma.
inline RecoveryReport recover_analysis(const MeasurementTensor& meas,
                                       const ExposureCodeSet& codes, const SolverConfig& cfg,
                                       const VideoVolume* truth = nullptr) {
  require(meas.cameras() == codes.cameras && meas.width() == codes.width &&
              meas.height() == codes.height,
          "recover_analysis: measurement/code dimension mismatch");
  const Dims d = codes.dims();
  const LinearOperatorPair A = make_A_operator(codes);
  const LinearOperatorPair W = make_theta_operator(d);
  MeasurementGram gram = MeasurementGram::from_codes(codes);
  const SolveResult sol = solve_l1(A, gram, &W, 1, meas.data(), cfg);

  RecoveryReport rep;
  rep.recovered = VideoVolume(d, sol.x);
  rep.converged = sol.converged;
  rep.iterations = sol.iterations;
  rep.residual = sol.residual;
  rep.objective = sol.objective;
  rep.trace = sol.trace;
  rep.fingerprint = detail::fingerprint(codes.seed, cfg);
  detail::attach_psnr(rep, truth);
  return rep;
}

inline RecoveryReport recover(const MeasurementTensor& meas, const ExposureCodeSet& codes,
                              const SolverConfig& cfg, const VideoVolume* truth = nullptr) {
  return cfg.mode == RecoveryMode::SynthesisFourier ? recover_synthesis(meas, codes, cfg, truth)
                                                    : recover_analysis(meas, codes, cfg, truth);
}

// ---------------------------------------------------------------------------
// Block-parallel recovery with overlapped-block fusion
// ---------------------------------------------------------------------------

enum class FusionRule { Average, WeightedWindow };

struct BlockSpec {
  int width = 0;    // W, tile core width in pixels
  int height = 0;   // H
  int overlap = 0;  // o, extension per side
  FusionRule fusion = FusionRule::Average;

  void validate(const Dims& d) const {
    require(width >= 1 && width <= d.width && height >= 1 && height <= d.height,
            "block spec: tile must fit the frame");
    require(overlap >= 0 && 2 * overlap < std::min(width, height),
            "block spec: overlap must satisfy 0 <= o < min(W,H)/2");
  }
};

struct TileRegion {
  int u0 = 0, v0 = 0, w = 0, h = 0;  // pixel window in the full frame
};

/// Tile windows: core tiles step by (W, H) across the frame, each extended
/// by the overlap on every side and clipped to the frame.
inline std::vector<TileRegion> make_tiles(const Dims& d, const BlockSpec& spec) {
  spec.validate(d);
  std::vector<TileRegion> tiles;
  for (int v0 = 0; v0 < d.height; v0 += spec.height)
    for (int u0 = 0; u0 < d.width; u0 += spec.width) {
      TileRegion r;
      r.u0 = std::max(0, u0 - spec.overlap);
      r.v0 = std::max(0, v0 - spec.overlap);
      r.w = std::min(d.width, u0 + spec.width + spec.overlap) - r.u0;
      r.h = std::min(d.height, v0 + spec.height + spec.overlap) - r.v0;
      tiles.push_back(r);
    }
  return tiles;
}

/// Fuse per-tile estimates into a full volume. Average takes the arithmetic
/// mean of the m covering tiles per pixel; WeightedWindow uses separable
/// triangular weights peaking at the tile center, normalized per pixel.
inline VideoVolume fuse_estimates(const Dims& d,
                                  const std::vector<std::pair<TileRegion, VideoVolume>>& tiles,
                                  FusionRule rule) {
  VideoVolume out(d.frames, d.width, d.height);
  Vector weight = Vector::Zero(d.samples());
  for (const auto& [region, est] : tiles) {
    require(est.frames() == d.frames && est.width() == region.w && est.height() == region.h,
            "fuse: tile volume does not match its region");
    for (int v = 0; v < region.h; ++v)
      for (int u = 0; u < region.w; ++u) {
        double wgt = 1.0;
        if (rule == FusionRule::WeightedWindow) {
          const double wu = std::min(u + 1, region.w - u);
          const double wv = std::min(v + 1, region.h - v);
          wgt = wu * wv;
        }
        for (int t = 0; t < d.frames; ++t) {
          out.at(region.u0 + u, region.v0 + v, t) += wgt * est.at(u, v, t);
        }
        for (int t = 0; t < d.frames; ++t)
          weight[out.index(region.u0 + u, region.v0 + v, t)] += wgt;
      }
  }
  for (long i = 0; i < weight.size(); ++i) {
    require(weight[i] > 0.0, "fuse: pixel not covered by any tile");
    out.data()[i] /= weight[i];
  }
  return out;
}

inline MeasurementTensor slice_measurements(const MeasurementTensor& meas, const TileRegion& r) {
  MeasurementTensor out(meas.cameras(), r.w, r.h, meas.noise_sigma());
  for (int v = 0; v < r.h; ++v)
    for (int u = 0; u < r.w; ++u)
      for (int k = 0; k < meas.cameras(); ++k)
        out.at(u, v, k) = meas.at(r.u0 + u, r.v0 + v, k);
  return out;
}

/// Block-partitioned recovery: the pixel grid is tiled, each tile is solved
/// independently against tile-restricted codes and measurements, and the
/// per-pixel estimates are fused. The constraint radius is split so that
/// each tile gets a share of sigma^2 proportional to its measurement count.
/// A single tile covering the frame reduces to the whole-frame solve.
inline RecoveryReport recover_blocks(const MeasurementTensor& meas,
                                     const ExposureCodeSet& codes, const BlockSpec& blocks,
                                     const SolverConfig& cfg,
                                     const VideoVolume* truth = nullptr) {
  const Dims d = codes.dims();
  const std::vector<TileRegion> tiles = make_tiles(d, blocks);
  const long total_meas = codes.measurements();

  RecoveryReport rep;
  rep.converged = true;
  std::vector<std::pair<TileRegion, VideoVolume>> estimates;
  estimates.reserve(tiles.size());
  for (size_t i = 0; i < tiles.size(); ++i) {
    const TileRegion& r = tiles[i];
    const ExposureCodeSet tile_codes = slice_codes(codes, r.u0, r.v0, r.w, r.h);
    const MeasurementTensor tile_meas = slice_measurements(meas, r);
    SolverConfig tile_cfg = cfg;
    const double share = static_cast<double>(tile_codes.measurements()) /
                         static_cast<double>(total_meas);
    tile_cfg.sigma = cfg.sigma * std::sqrt(share);
    RecoveryReport tile_rep = recover(tile_meas, tile_codes, tile_cfg);
    if (tiles.size() == 1) {
      // Degenerate partition: the tile solve IS the whole-frame solve.
      detail::attach_psnr(tile_rep, truth);
      return tile_rep;
    }
    if (!tile_rep.converged) {
      rep.converged = false;
      rep.failed_tiles.push_back(static_cast<int>(i));
    }
    rep.iterations = std::max(rep.iterations, tile_rep.iterations);
    rep.objective += tile_rep.objective;
    rep.residual = std::hypot(rep.residual, tile_rep.residual);
    estimates.emplace_back(r, std::move(tile_rep.recovered));
  }
  rep.recovered = fuse_estimates(d, estimates, blocks.fusion);
  rep.fingerprint = detail::fingerprint(codes.seed, cfg);
  detail::attach_psnr(rep, truth);
  return rep;
}

}  // namespace hfv

#endif  // HFV_SOLVER_HPP
