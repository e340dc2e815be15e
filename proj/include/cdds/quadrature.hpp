#pragma once

#include "cdds/matrixkit.hpp"

#include <functional>
#include <optional>

namespace cdds {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double l, double h) : lo(l), hi(h) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
      throw Error("Interval: requires finite lo < hi");
  }
  double length() const { return hi - lo; }
  bool contains(double tau, double slack = 1e-12) const {
    return tau >= lo - slack * (1.0 + length()) && tau <= hi + slack * (1.0 + length());
  }
};

/// Integration weight: unit, or the affine weight (tau + offset).
struct Weight {
  enum class Kind { unit, affine };
  Kind kind = Kind::unit;
  double offset = 0.0;

  static Weight unit() { return {}; }
  static Weight affine(double c) { return {Kind::affine, c}; }
  double operator()(double tau) const { return kind == Kind::unit ? 1.0 : tau + offset; }
  bool is_unit() const { return kind == Kind::unit; }
};

struct QuadResult {
  Mat value;
  double abs_error_estimate = 0.0;
  int subdivisions = 0;
};

class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double worst_error)
      : Error(what), worst_error(worst_error) {}
  double worst_error;
};

using MatFn = std::function<Mat(double)>;
using VecFn = std::function<Vec(double)>;

struct QuadOptions {
  double tol = 1e-12;       // absolute error target per matrix entry
  int max_panels = 1 << 16; // panel budget before giving up
  double omega_max = 0.0;   // dominant angular frequency hint; 0 = none
};

/// Adaptive composite 15-point Gauss-Legendre integration of a matrix-valued
/// function, weight folded into the integrand. Deterministic subdivision
/// order (depth-first, left half first). Throws QuadratureError when the
/// panel budget is exhausted before reaching the tolerance.
QuadResult integrate(const MatFn& f, Interval iv, Weight w, const QuadOptions& opts);
QuadResult integrate(const MatFn& f, Interval iv, Weight w = Weight::unit(), double tol = 1e-12);

/// Scalar convenience wrapper.
double integrate_scalar(const std::function<double(double)>& f, Interval iv,
                        Weight w = Weight::unit(), double tol = 1e-12);

struct GramResult {
  SymMat gram;
  double min_eigenvalue = 0.0;
  bool near_dependent = false;  // min_eig < 1e-10 * trace
};

/// Weighted Gram matrix of a vector-valued family: int w(t) f(t) f(t)^T dt,
/// symmetrized exactly. Flags (does not fail on) numerically dependent
/// families.
GramResult gram(const VecFn& fs, int dim, Interval iv, Weight w = Weight::unit(),
                double tol = 1e-12, double omega_max = 0.0);

}  // namespace cdds
