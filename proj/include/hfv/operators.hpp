#ifndef HFV_OPERATORS_HPP
#define HFV_OPERATORS_HPP

#include <functional>
#include <utility>

#include "hfv/volume.hpp"

namespace hfv {

/// Forward/adjoint pair of linear maps with declared dimensions; the common
/// currency between the acquisition model, the sparsifiers and the solver.
struct LinearOperatorPair {
  long in_dim = 0;
  long out_dim = 0;
  std::function<Vector(const Vector&)> forward;
  std::function<Vector(const Vector&)> adjoint;

  Vector apply(const Vector& x) const {
    require(x.size() == in_dim, "operator: forward input size mismatch");
    Vector y = forward(x);
    require(y.size() == out_dim, "operator: forward output size mismatch");
    return y;
  }

  Vector apply_adjoint(const Vector& y) const {
    require(y.size() == out_dim, "operator: adjoint input size mismatch");
    Vector x = adjoint(y);
    require(x.size() == in_dim, "operator: adjoint output size mismatch");
    return x;
  }
};

inline LinearOperatorPair identity_operator(long n) {
  return {n, n, [](const Vector& x) { return x; }, [](const Vector& y) { return y; }};
}

inline LinearOperatorPair dense_operator(Matrix A) {
  auto mat = std::make_shared<Matrix>(std::move(A));
  return {mat->cols(), mat->rows(),
          [mat](const Vector& x) -> Vector { return *mat * x; },
          [mat](const Vector& y) -> Vector { return mat->transpose() * y; }};
}

/// Largest singular value of the operator, by power iteration on W^T W with
/// a fixed deterministic start vector.
inline double operator_norm_estimate(const LinearOperatorPair& op, int iterations = 60) {
  Vector v(op.in_dim);
  for (long i = 0; i < op.in_dim; ++i) v[i] = 1.0 + 0.37 * std::cos(0.7 * static_cast<double>(i));
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Vector w = op.apply_adjoint(op.apply(v));
    const double n = w.norm();
    if (n == 0.0) return 0.0;
    lambda = n;
    v = w / n;
  }
  return std::sqrt(lambda);
}

}  // namespace hfv

#endif  // HFV_OPERATORS_HPP
