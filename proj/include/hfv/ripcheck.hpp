#ifndef HFV_RIPCHECK_HPP
#define HFV_RIPCHECK_HPP

#include <Eigen/SVD>
#include <limits>
#include <vector>

#include "hfv/codes.hpp"
#include "hfv/forward.hpp"
#include "hfv/transforms.hpp"

namespace hfv {

enum class IsometryMode { Canonical, Basis, Generalized };
enum class SparsityBasis { Canonical, Dft3 };

inline const char* isometry_mode_name(IsometryMode m) {
  switch (m) {
    case IsometryMode::Canonical: return "canonical";
    case IsometryMode::Basis: return "basis";
    case IsometryMode::Generalized: return "generalized";
  }
  return "?";
}

/// Observed extremes of ||A v||^2 / ||v||^2 over tested S-sparse vectors
/// (or, in generalized mode, of ||A f||^2 / ||Theta f||^2). A sampled
/// delta_hat is a lower bound of the true delta_S: sampling can only miss
/// extremes, never exceed them.
struct IsometryReport {
  IsometryMode mode = IsometryMode::Canonical;
  int order = 0;       // S
  long trials = 0;     // vectors tested (valid samples in generalized mode)
  long skipped = 0;    // generalized mode: samples with Theta f = 0
  long rows = 0;       // M
  long cols = 0;       // N
  double min_ratio = std::numeric_limits<double>::infinity();
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  double delta_hat = 0.0;
  bool exhaustive = false;

  void finish() {
    if (trials == 0) {
      min_ratio = 0.0;
      max_ratio = 0.0;
      delta_hat = 0.0;
      return;
    }
    delta_hat = std::max(1.0 - min_ratio, max_ratio - 1.0);
    delta_hat = std::max(delta_hat, 0.0);
  }
};

namespace detail {

/// Columns of A restricted to `support`, real or complex.
template <typename Mat>
Mat restrict_columns(const Mat& A, const std::vector<int>& support) {
  Mat sub(A.rows(), static_cast<long>(support.size()));
  for (size_t j = 0; j < support.size(); ++j) sub.col(j) = A.col(support[j]);
  return sub;
}

inline std::vector<int> random_support(Rng& rng, int n, int s) {
  std::vector<int> support;
  support.reserve(s);
  while (static_cast<int>(support.size()) < s) {
    const int cand = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    bool dup = false;
    for (int x : support) dup |= (x == cand);
    if (!dup) support.push_back(cand);
  }
  return support;
}

/// Dense complex matrix A Psi^*: column j is A applied to the j-th inverse
/// DFT basis volume.
inline CMatrix dense_A_in_dft_basis(const Matrix& A, const Dims& dims) {
  require(A.cols() == dims.samples(), "dense_A_in_dft_basis: dimension mismatch");
  const Dft3 dft(dims);
  CMatrix out(A.rows(), A.cols());
  CVector e = CVector::Zero(A.cols());
  for (long j = 0; j < A.cols(); ++j) {
    e[j] = 1.0;
    const CVector col = dft.inverse(e);
    out.col(j) = A * col.real() + std::complex<double>(0, 1) * (A * col.imag());
    e[j] = 0.0;
  }
  return out;
}

}  // namespace detail

/// Monte Carlo estimate of the order-S isometry constant of a dense matrix:
/// draws random supports and Gaussian coefficients, normalizes, and records
/// the extreme ratios. For the Dft3 basis the working matrix is A Psi^* and
/// coefficients are complex Gaussian.
inline IsometryReport estimate_isometry(const Matrix& A, SparsityBasis basis, int order,
                                        long trials, std::uint64_t seed,
                                        const Dims* dims = nullptr) {
  require(order >= 1 && order <= A.cols(), "estimate_isometry: order out of range");
  require(trials >= 1, "estimate_isometry: trials must be >= 1");
  IsometryReport rep;
  rep.mode = basis == SparsityBasis::Canonical ? IsometryMode::Canonical : IsometryMode::Basis;
  rep.order = order;
  rep.rows = A.rows();
  rep.cols = A.cols();

  Rng rng(seed);
  double mean_acc = 0.0;
  if (basis == SparsityBasis::Canonical) {
    Vector v(order);
    for (long trial = 0; trial < trials; ++trial) {
      const std::vector<int> support =
          detail::random_support(rng, static_cast<int>(A.cols()), order);
      for (int j = 0; j < order; ++j) v[j] = rng.gaussian();
      const double nv = v.norm();
      if (nv == 0.0) continue;
      Vector av = Vector::Zero(A.rows());
      for (int j = 0; j < order; ++j) av += A.col(support[j]) * v[j];
      const double ratio = av.squaredNorm() / (nv * nv);
      rep.min_ratio = std::min(rep.min_ratio, ratio);
      rep.max_ratio = std::max(rep.max_ratio, ratio);
      mean_acc += ratio;
      ++rep.trials;
    }
  } else {
    require(dims != nullptr, "estimate_isometry: Dft3 basis requires volume dims");
    const CMatrix AP = detail::dense_A_in_dft_basis(A, *dims);
    CVector v(order);
    for (long trial = 0; trial < trials; ++trial) {
      const std::vector<int> support =
          detail::random_support(rng, static_cast<int>(AP.cols()), order);
      for (int j = 0; j < order; ++j) v[j] = {rng.gaussian(), rng.gaussian()};
      const double nv = v.norm();
      if (nv == 0.0) continue;
      CVector av = CVector::Zero(AP.rows());
      for (int j = 0; j < order; ++j) av += AP.col(support[j]) * v[j];
      const double ratio = av.squaredNorm() / (nv * nv);
      rep.min_ratio = std::min(rep.min_ratio, ratio);
      rep.max_ratio = std::max(rep.max_ratio, ratio);
      mean_acc += ratio;
      ++rep.trials;
    }
  }
  rep.mean_ratio = rep.trials ? mean_acc / static_cast<double>(rep.trials) : 0.0;
  rep.finish();
  return rep;
}

/// Signed-code convenience: builds the dense Appendix-mapped matrix
/// (no DC row, scale 1/sqrt(K)) and estimates in the requested basis.
inline IsometryReport estimate_isometry(const ExposureCodeSet& codes, SparsityBasis basis,
                                        int order, long trials, std::uint64_t seed) {
  const Matrix A = build_dense_signed_A(to_signed(codes, false));
  const Dims d = codes.dims();
  return estimate_isometry(A, basis, order, trials, seed, &d);
}

inline long binomial_count(long n, long s, long cap) {
  double acc = 1.0;
  for (long j = 0; j < s; ++j) {
    acc *= static_cast<double>(n - j) / static_cast<double>(j + 1);
    if (acc > static_cast<double>(cap) * 4.0) return cap + 1;
  }
  return static_cast<long>(acc + 0.5);
}

inline constexpr long kSupportCap = 1000000;

/// Exact delta_S by enumerating every size-S support and taking the extreme
/// squared singular values of the restricted submatrix of A (or A Psi^*).
inline IsometryReport exhaustive_isometry(const Matrix& A, SparsityBasis basis, int order,
                                          const Dims* dims = nullptr,
                                          long support_cap = kSupportCap) {
  require(order >= 1 && order <= A.cols(), "exhaustive_isometry: order out of range");
  require(binomial_count(A.cols(), order, support_cap) <= support_cap,
          "exhaustive_isometry: support count exceeds cap");
  IsometryReport rep;
  rep.mode = basis == SparsityBasis::Canonical ? IsometryMode::Canonical : IsometryMode::Basis;
  rep.order = order;
  rep.rows = A.rows();
  rep.cols = A.cols();
  rep.exhaustive = true;

  CMatrix AP;
  if (basis == SparsityBasis::Dft3) {
    require(dims != nullptr, "exhaustive_isometry: Dft3 basis requires volume dims");
    AP = detail::dense_A_in_dft_basis(A, *dims);
  }

  std::vector<int> support(order);
  for (int j = 0; j < order; ++j) support[j] = j;
  const int n = static_cast<int>(A.cols());
  double mean_acc = 0.0;
  for (;;) {
    double smin, smax;
    if (basis == SparsityBasis::Canonical) {
      const Matrix sub = detail::restrict_columns(A, support);
      Eigen::JacobiSVD<Matrix> svd(sub);
      smin = svd.singularValues().minCoeff();
      smax = svd.singularValues().maxCoeff();
    } else {
      const CMatrix sub = detail::restrict_columns(AP, support);
      Eigen::JacobiSVD<CMatrix> svd(sub);
      smin = svd.singularValues().minCoeff();
      smax = svd.singularValues().maxCoeff();
    }
    rep.min_ratio = std::min(rep.min_ratio, smin * smin);
    rep.max_ratio = std::max(rep.max_ratio, smax * smax);
    mean_acc += 0.5 * (smin * smin + smax * smax);
    ++rep.trials;

    // next lexicographic combination
    int j = order - 1;
    while (j >= 0 && support[j] == n - order + j) --j;
    if (j < 0) break;
    ++support[j];
    for (int i = j + 1; i < order; ++i) support[i] = support[i - 1] + 1;
  }
  rep.mean_ratio = mean_acc / static_cast<double>(rep.trials);
  rep.finish();
  return rep;
}

inline IsometryReport exhaustive_isometry(const ExposureCodeSet& codes, SparsityBasis basis,
                                          int order, long support_cap = kSupportCap) {
  const Matrix A = build_dense_signed_A(to_signed(codes, false));
  const Dims d = codes.dims();
  return exhaustive_isometry(A, basis, order, &d, support_cap);
}

/// Family of volumes whose Theta image is sparse by construction: a constant
/// level plus localized interior bumps (each interior bump touches at most
/// 11 analysis samples: 5 from the Laplacian plane, 3 in each of the two
/// affected temporal-difference frames). bumps = floor(S / 11); S below the
/// single-bump footprint degenerates to constant volumes, which are skipped
/// and counted per the Theta-nullspace contract.
inline Vector sample_sparse_analysis_volume(Rng& rng, const Dims& d, int order) {
  Vector f = Vector::Constant(d.samples(), rng.uniform(10.0, 200.0));
  const int bumps = order / 11;
  if (d.width < 3 || d.height < 3 || d.frames < 3) return f;
  for (int b = 0; b < bumps; ++b) {
    const int u = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(d.width - 2)));
    const int v = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(d.height - 2)));
    const int t = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(d.frames - 2)));
    f[(static_cast<long>(v) * d.width + u) * d.frames + t] += rng.gaussian(0.0, 50.0);
  }
  return f;
}

/// Diagnostic sampler for the generalized (Definition-4 style) isometry:
/// ratios ||A f||^2 / ||Theta f||^2 over the bump family. Never exhaustive;
/// samples with Theta f = 0 are skipped and counted.
inline IsometryReport estimate_generalized_isometry(const Matrix& A, const Dims& dims, int order,
                                                    long trials, std::uint64_t seed) {
  require(A.cols() == dims.samples(), "estimate_generalized_isometry: dimension mismatch");
  require(trials >= 1, "estimate_generalized_isometry: trials must be >= 1");
  IsometryReport rep;
  rep.mode = IsometryMode::Generalized;
  rep.order = order;
  rep.rows = A.rows();
  rep.cols = A.cols();
  rep.exhaustive = false;

  Rng rng(seed);
  double mean_acc = 0.0;
  for (long trial = 0; trial < trials; ++trial) {
    const Vector f = sample_sparse_analysis_volume(rng, dims, order);
    const double tn = theta_apply(f, dims).squaredNorm();
    if (tn <= 0.0) {
      ++rep.skipped;
      continue;
    }
    const double ratio = (A * f).squaredNorm() / tn;
    rep.min_ratio = std::min(rep.min_ratio, ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    mean_acc += ratio;
    ++rep.trials;
  }
  rep.mean_ratio = rep.trials ? mean_acc / static_cast<double>(rep.trials) : 0.0;
  rep.finish();
  return rep;
}

/// One sufficiency-curve row per (scheme, K): sampled delta_hat of the
/// signed measurement matrix in the Fourier basis, at fixed scene size.
struct SufficiencyRow {
  CodeScheme scheme = CodeScheme::FrameWise;
  int cameras = 0;
  IsometryReport report;
};

inline std::vector<SufficiencyRow> measurement_sufficiency_curve(
    const std::vector<CodeScheme>& schemes, const std::vector<int>& camera_counts, const Dims& d,
    int order, long trials, std::uint64_t seed) {
  std::vector<SufficiencyRow> rows;
  for (const CodeScheme scheme : schemes)
    for (const int K : camera_counts) {
      const ExposureCodeSet codes =
          generate_codes(scheme, K, d.frames, d.width, d.height,
                         derive_seed(seed, static_cast<std::uint64_t>(scheme), K));
      SufficiencyRow row;
      row.scheme = scheme;
      row.cameras = K;
      row.report = estimate_isometry(codes, SparsityBasis::Dft3, order, trials,
                                     derive_seed(seed, static_cast<std::uint64_t>(scheme), K, 1));
      rows.push_back(std::move(row));
    }
  return rows;
}

}  // namespace hfv

#endif  // HFV_RIPCHECK_HPP
