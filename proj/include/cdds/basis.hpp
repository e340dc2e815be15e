#pragma once

#include "cdds/quadrature.hpp"

#include <memory>
#include <optional>
#include <string>

namespace cdds {

/// A differentiation-closed function family f : iv -> R^dim with companion
/// matrix M such that f'(tau) = M f(tau) on the interval.
class Basis {
 public:
  enum class Family { legendre, trig, exponential, custom };

  std::string label;
  int dim = 0;
  Interval iv;
  Mat companion;  // dim x dim
  VecFn evalfn;
  VecFn derivfn;                  // analytic derivative when available
  std::optional<Mat> gram_exact;  // closed-form int f f^T when known
  Family family = Family::custom;
  int degree = -1;          // legendre
  int order = 0;            // trig
  double freq = 0.0;        // trig
  std::vector<double> rates;  // exponential

  Vec eval(double tau) const { return evalfn(tau); }
  /// Evaluation restricted to the closed interval (errors outside it).
  Vec boundary(double tau) const;
  Mat gram(double tol = 1e-12) const;
  double omega_hint() const { return family == Family::trig ? freq * order : 0.0; }
  /// Whether an Eq.-(45)-style weighted companion family exists for this base.
  bool weighted_companion_available() const { return family == Family::legendre; }
};

/// A family derived from a Basis: either phi with phi' = relation * f (unit
/// weight) or g with (tau + offset) g' = relation * f (affine weight).
class DerivedBasis {
 public:
  Basis base;
  int dim = 0;
  Mat relation;           // dim x base.dim
  Mat expansion_in_base;  // W with phi = W f, when the family lies in span(f); else 0x0
  Weight weight;
  VecFn evalfn;
  std::optional<Mat> gram_exact;  // int w(tau) phi phi^T when known
  std::string label;

  Vec eval(double tau) const { return evalfn(tau); }
  Vec boundary(double tau) const;
  Mat gram(double tol = 1e-12) const;
  /// d/dtau [w(tau) phi(tau)] expanded in the base family; this is the matrix
  /// entering the boundary identities (relation + expansion for affine weight,
  /// relation alone for unit weight).
  Mat weighted_derivative_coeffs() const;
};

/// Shifted Legendre family l_0..l_degree rescaled to iv, with l_i(hi) = 1 and
/// l_i(lo) = (-1)^i. Companion computed from the exact derivative expansion.
Basis legendre_basis(int degree, Interval iv);

/// (1, sin(freq*i*tau), ..., cos(freq*i*tau), ...) for i = 1..order, evaluated
/// in absolute tau.
Basis trig_basis(int order, double freq, Interval iv);

/// (e^{a_i tau}) for distinct rates; Gram via closed-form antiderivatives.
Basis exp_basis(const std::vector<double>& rates, Interval iv);

/// Parses "legendre:<degree>", "trig:<order>@<freq>" or "exp:<a1,a2,...>".
Basis parse_basis(const std::string& spec, Interval iv);

/// The default derived family of Remark 1: a differentiation-closed
/// sub-family of `base` of the given dimension (phi = f when dim = base.dim).
DerivedBasis derived_unit_basis(const Basis& base, int dim);

/// Polynomials of degree 0..degree orthogonal under the weight (tau + offset)
/// on iv, with (tau+offset) g' = N f for the matching-degree Legendre basis;
/// N and the base expansion are computed by exact rational coefficient
/// matching. Requires the weight to vanish at iv.lo (offset == -lo).
DerivedBasis weighted_poly_basis(int degree, Interval iv, double offset);

/// Residual of the differentiation-closure invariant, max over a sample grid
/// of ||f'(tau) - M f(tau)||. Uses the analytic derivative when the basis
/// carries one, central finite differences (step 1e-6 * interval length)
/// otherwise.
double closure_residual(const Basis& b, int samples = 101);

}  // namespace cdds
