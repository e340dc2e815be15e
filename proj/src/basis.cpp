#include "cdds/basis.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <sstream>

namespace cdds {

using Rational = boost::multiprecision::cpp_rational;
using RatPoly = std::vector<Rational>;  // monomial coefficients, ascending degree

namespace {

RatPoly rp_add(const RatPoly& a, const RatPoly& b) {
  RatPoly out(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

RatPoly rp_scale(const RatPoly& a, const Rational& s) {
  RatPoly out(a);
  for (auto& c : out) c *= s;
  return out;
}

RatPoly rp_derivative(const RatPoly& a) {
  if (a.size() <= 1) return {Rational(0)};
  RatPoly out(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) out[i - 1] = a[i] * Rational(static_cast<long>(i));
  return out;
}

// multiply by (u + 1)
RatPoly rp_mul_u_plus_1(const RatPoly& a) {
  RatPoly out(a.size() + 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    out[i] += a[i];
    out[i + 1] += a[i];
  }
  return out;
}

// exact division by (u + 1); remainder must vanish
RatPoly rp_div_u_plus_1(const RatPoly& a) {
  RatPoly q(a.size() > 1 ? a.size() - 1 : 1, Rational(0));
  Rational rem(0);
  // synthetic division at root u = -1
  RatPoly work(a);
  for (size_t i = work.size(); i-- > 1;) {
    q[i - 1] = work[i];
    work[i - 1] -= work[i];  // a[i-1] + (-1)*q[i-1] carried down
  }
  rem = work[0];
  if (rem != 0) throw Error("weighted_poly_basis: non-exact polynomial division");
  return q;
}

Rational binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  boost::multiprecision::cpp_int num = 1, den = 1;
  for (long i = 0; i < k; ++i) {
    num *= (n - i);
    den *= (i + 1);
  }
  return Rational(num, den);
}

// Shifted Legendre l_i on u in [-1, 0]: l_i(u) = sum_k C(i,k) C(i+k,k) u^k.
RatPoly shifted_legendre(int i) {
  RatPoly p(i + 1, Rational(0));
  for (int k = 0; k <= i; ++k) p[k] = binom(i, k) * binom(i + k, k);
  return p;
}

// Expand a polynomial of degree <= maxdeg exactly in the shifted Legendre
// basis (triangular solve against leading coefficients).
RatPoly legendre_coeffs(RatPoly p, int maxdeg) {
  RatPoly coeffs(maxdeg + 1, Rational(0));
  p.resize(maxdeg + 1, Rational(0));
  for (int d = maxdeg; d >= 0; --d) {
    RatPoly ld = shifted_legendre(d);
    Rational c = p[d] / ld[d];
    coeffs[d] = c;
    for (int k = 0; k <= d; ++k) p[k] -= c * ld[k];
  }
  for (const auto& c : p)
    if (c != 0) throw Error("legendre_coeffs: residual after expansion");
  return coeffs;
}

// Stable evaluation of the shifted Legendre vector via the standard Legendre
// recurrence at x = 2u + 1.
Vec eval_shifted_legendre(int dim, double u) {
  const double x = 2.0 * u + 1.0;
  Vec v(dim);
  double pm1 = 1.0, p = x;
  if (dim > 0) v[0] = 1.0;
  if (dim > 1) v[1] = x;
  for (int i = 2; i < dim; ++i) {
    double pn = ((2.0 * i - 1.0) * x * p - (i - 1.0) * pm1) / i;
    v[i] = pn;
    pm1 = p;
    p = pn;
  }
  return v;
}

// Jacobi (0,1) polynomials at x = 2u + 1 via their three-term recurrence.
Vec eval_jacobi01(int dim, double u) {
  const double x = 2.0 * u + 1.0;
  Vec v(dim);
  if (dim > 0) v[0] = 1.0;
  if (dim > 1) v[1] = 0.5 * (3.0 * x - 1.0);
  for (int n = 2; n < dim; ++n) {
    // (n+1)(2n-1) P_n = [(2n+1)(2n-1)x - 1] P_{n-1} - (n-1)(2n+1) P_{n-2}
    v[n] = (((2.0 * n + 1.0) * (2.0 * n - 1.0) * x - 1.0) * v[n - 1] -
            (n - 1.0) * (2.0 * n + 1.0) * v[n - 2]) /
           ((n + 1.0) * (2.0 * n - 1.0));
  }
  return v;
}

void validate_closure(const Basis& b) {
  double res = closure_residual(b, 50);
  double mnorm = b.dim > 0 ? b.companion.cwiseAbs().maxCoeff() : 0.0;
  if (res > 1e-9 * (1.0 + mnorm))
    throw Error("basis '" + b.label + "': differentiation-closure residual " +
                std::to_string(res) + " too large");
}

}  // namespace

Vec Basis::boundary(double tau) const {
  if (!iv.contains(tau))
    throw Error("basis '" + label + "': evaluation point " + std::to_string(tau) +
                " outside interval");
  return evalfn(tau);
}

Mat Basis::gram(double tol) const {
  if (gram_exact) return *gram_exact;
  return cdds::gram(evalfn, dim, iv, Weight::unit(), tol, omega_hint()).gram.mat();
}

Vec DerivedBasis::boundary(double tau) const {
  if (!base.iv.contains(tau))
    throw Error("derived basis '" + label + "': evaluation point outside interval");
  return evalfn(tau);
}

Mat DerivedBasis::gram(double tol) const {
  if (gram_exact) return *gram_exact;
  return cdds::gram(evalfn, dim, base.iv, weight, tol, base.omega_hint()).gram.mat();
}

Mat DerivedBasis::weighted_derivative_coeffs() const {
  if (weight.is_unit()) return relation;
  if (expansion_in_base.size() == 0)
    throw Error("derived basis '" + label + "': no base expansion for weighted derivative");
  return relation + expansion_in_base;
}

Basis legendre_basis(int degree, Interval iv) {
  if (degree < 0) throw Error("legendre_basis: degree must be >= 0");
  Basis b;
  b.family = Basis::Family::legendre;
  b.degree = degree;
  b.dim = degree + 1;
  b.iv = iv;
  b.label = "legendre:" + std::to_string(degree);
  const double L = iv.length(), hi = iv.hi;
  b.evalfn = [dim = b.dim, L, hi](double tau) {
    return eval_shifted_legendre(dim, (tau - hi) / L);
  };
  // d l_i / du = sum_{j<i, i-j odd} 2(2j+1) l_j, then d/dtau = (1/L) d/du
  Mat M = Mat::Zero(b.dim, b.dim);
  for (int i = 0; i < b.dim; ++i)
    for (int j = i - 1; j >= 0; j -= 2) M(i, j) = 2.0 * (2.0 * j + 1.0) / L;
  b.companion = M;
  // independent analytic derivative via P'_n = P'_{n-2} + (2n-1) P_{n-1}
  b.derivfn = [dim = b.dim, L, hi](double tau) {
    const double u = (tau - hi) / L;
    Vec f = eval_shifted_legendre(dim, u);
    Vec d(dim);
    if (dim > 0) d[0] = 0.0;
    if (dim > 1) d[1] = 2.0 / L;
    for (int n = 2; n < dim; ++n) d[n] = d[n - 2] + (2.0 * n - 1.0) * 2.0 * f[n - 1] / L;
    return d;
  };
  Vec g(b.dim);
  for (int i = 0; i < b.dim; ++i) g[i] = L / (2.0 * i + 1.0);
  b.gram_exact = Mat(g.asDiagonal());
  validate_closure(b);
  return b;
}

Basis trig_basis(int order, double freq, Interval iv) {
  if (order < 1) throw Error("trig_basis: order must be >= 1");
  if (freq == 0.0) throw Error("trig_basis: freq must be nonzero");
  Basis b;
  b.family = Basis::Family::trig;
  b.order = order;
  b.freq = freq;
  b.dim = 2 * order + 1;
  b.iv = iv;
  std::ostringstream lbl;
  lbl << "trig:" << order << "@" << freq;
  b.label = lbl.str();
  b.evalfn = [order, freq](double tau) {
    Vec v(2 * order + 1);
    v[0] = 1.0;
    for (int i = 1; i <= order; ++i) {
      v[i] = std::sin(freq * i * tau);
      v[order + i] = std::cos(freq * i * tau);
    }
    return v;
  };
  Mat M = Mat::Zero(b.dim, b.dim);
  for (int i = 1; i <= order; ++i) {
    M(i, order + i) = freq * i;   // sin' = i w cos
    M(order + i, i) = -freq * i;  // cos' = -i w sin
  }
  b.companion = M;
  b.derivfn = [order, freq](double tau) {
    Vec d(2 * order + 1);
    d[0] = 0.0;
    for (int i = 1; i <= order; ++i) {
      d[i] = freq * i * std::cos(freq * i * tau);
      d[order + i] = -freq * i * std::sin(freq * i * tau);
    }
    return d;
  };
  validate_closure(b);
  return b;
}

Basis exp_basis(const std::vector<double>& rates, Interval iv) {
  if (rates.empty()) throw Error("exp_basis: needs at least one rate");
  for (size_t i = 0; i < rates.size(); ++i)
    for (size_t j = i + 1; j < rates.size(); ++j)
      if (rates[i] == rates[j]) throw Error("exp_basis: rates must be distinct");
  Basis b;
  b.family = Basis::Family::exponential;
  b.rates = rates;
  b.dim = static_cast<int>(rates.size());
  b.iv = iv;
  std::ostringstream lbl;
  lbl << "exp:";
  for (size_t i = 0; i < rates.size(); ++i) lbl << (i ? "," : "") << rates[i];
  b.label = lbl.str();
  b.evalfn = [rates](double tau) {
    Vec v(static_cast<Eigen::Index>(rates.size()));
    for (size_t i = 0; i < rates.size(); ++i) v[static_cast<Eigen::Index>(i)] = std::exp(rates[i] * tau);
    return v;
  };
  Mat M = Mat::Zero(b.dim, b.dim);
  for (int i = 0; i < b.dim; ++i) M(i, i) = rates[static_cast<size_t>(i)];
  b.companion = M;
  b.derivfn = [rates](double tau) {
    Vec d(static_cast<Eigen::Index>(rates.size()));
    for (size_t i = 0; i < rates.size(); ++i)
      d[static_cast<Eigen::Index>(i)] = rates[i] * std::exp(rates[i] * tau);
    return d;
  };
  Mat g(b.dim, b.dim);
  for (int i = 0; i < b.dim; ++i)
    for (int j = 0; j < b.dim; ++j) {
      double s = rates[static_cast<size_t>(i)] + rates[static_cast<size_t>(j)];
      g(i, j) = s == 0.0 ? iv.length() : (std::exp(s * iv.hi) - std::exp(s * iv.lo)) / s;
    }
  b.gram_exact = 0.5 * (g + g.transpose());
  validate_closure(b);
  return b;
}

Basis parse_basis(const std::string& spec, Interval iv) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw Error("parse_basis: expected '<family>:<params>', got '" + spec + "'");
  std::string fam = spec.substr(0, colon), params = spec.substr(colon + 1);
  try {
    if (fam == "legendre") return legendre_basis(std::stoi(params), iv);
    if (fam == "trig") {
      auto at = params.find('@');
      if (at == std::string::npos) throw Error("trig basis needs '<order>@<freq>'");
      return trig_basis(std::stoi(params.substr(0, at)), std::stod(params.substr(at + 1)), iv);
    }
    if (fam == "exp") {
      std::vector<double> rates;
      std::stringstream ss(params);
      std::string tok;
      while (std::getline(ss, tok, ',')) rates.push_back(std::stod(tok));
      return exp_basis(rates, iv);
    }
  } catch (const std::invalid_argument&) {
    throw Error("parse_basis: malformed parameters in '" + spec + "'");
  }
  throw Error("parse_basis: unknown family '" + fam + "'");
}

DerivedBasis derived_unit_basis(const Basis& base, int dim) {
  if (dim < 0 || dim > base.dim)
    throw Error("derived_unit_basis: dimension " + std::to_string(dim) + " not admissible");
  DerivedBasis d;
  d.base = base;
  d.weight = Weight::unit();
  d.label = base.label + "|prefix:" + std::to_string(dim);

  if (dim == base.dim) {
    d.dim = dim;
    d.relation = base.companion;
    d.expansion_in_base = Mat::Identity(dim, base.dim);
    d.evalfn = base.evalfn;
    d.gram_exact = base.gram_exact;
    return d;
  }

  std::vector<int> sel;  // indices of retained base components
  switch (base.family) {
    case Basis::Family::legendre:
    case Basis::Family::exponential:
      for (int i = 0; i < dim; ++i) sel.push_back(i);
      break;
    case Basis::Family::trig: {
      if (dim % 2 == 0)
        throw Error("derived_unit_basis: trig prefix of even dimension is not differentiation-closed");
      int sub = (dim - 1) / 2;
      sel.push_back(0);
      for (int i = 1; i <= sub; ++i) sel.push_back(i);
      for (int i = 1; i <= sub; ++i) sel.push_back(base.order + i);
      break;
    }
    default:
      throw Error("derived_unit_basis: prefix not differentiation-closed for custom basis");
  }

  d.dim = dim;
  d.relation = Mat::Zero(dim, base.dim);
  d.expansion_in_base = Mat::Zero(dim, base.dim);
  for (int r = 0; r < dim; ++r) {
    d.relation.row(r) = base.companion.row(sel[static_cast<size_t>(r)]);
    d.expansion_in_base(r, sel[static_cast<size_t>(r)]) = 1.0;
  }
  // a closed sub-family's derivative must not leave its own span
  for (int r = 0; r < dim; ++r) {
    Vec row = d.relation.row(r);
    for (int c = 0; c < base.dim; ++c) {
      bool kept = std::find(sel.begin(), sel.end(), c) != sel.end();
      if (!kept && row[c] != 0.0)
        throw Error("derived_unit_basis: prefix not differentiation-closed");
    }
  }
  d.evalfn = [base_eval = base.evalfn, sel](double tau) {
    Vec full = base_eval(tau);
    Vec v(static_cast<Eigen::Index>(sel.size()));
    for (size_t i = 0; i < sel.size(); ++i) v[static_cast<Eigen::Index>(i)] = full[sel[i]];
    return v;
  };
  return d;
}

DerivedBasis weighted_poly_basis(int degree, Interval iv, double offset) {
  if (degree < 0) throw Error("weighted_poly_basis: degree must be >= 0");
  // weight tau + offset must be nonnegative on iv (vanishing at lo at most)
  if (iv.lo + offset < -1e-12 * (1.0 + std::abs(iv.lo)))
    throw Error("weighted_poly_basis: weight negative on interval");
  if (std::abs(iv.lo + offset) > 1e-12 * (1.0 + std::abs(iv.lo)))
    throw Error("weighted_poly_basis: weight must vanish at the lower endpoint");

  const int dim = degree + 1;
  const double L = iv.length(), hi = iv.hi;

  // g_n(u) = P_n^{(0,1)}(2u+1) = (l_n(u) + l_{n+1}(u)) / (2(u+1)), exact.
  std::vector<RatPoly> g(static_cast<size_t>(dim));
  for (int n = 0; n < dim; ++n) {
    RatPoly s = rp_scale(rp_add(shifted_legendre(n), shifted_legendre(n + 1)), Rational(1, 2));
    g[static_cast<size_t>(n)] = rp_div_u_plus_1(s);
  }

  // Eq. (45) relation in u-coordinates: (u+1) g_n'(u) = sum_j N_{nj} l_j(u).
  // The tau-scaling cancels: (tau+offset) d/dtau = (u+1) d/du.
  Mat N = Mat::Zero(dim, dim);
  Mat W = Mat::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) {
    RatPoly lhs = rp_mul_u_plus_1(rp_derivative(g[static_cast<size_t>(n)]));
    RatPoly nc = legendre_coeffs(lhs, degree);
    RatPoly wc = legendre_coeffs(g[static_cast<size_t>(n)], degree);
    for (int j = 0; j < dim; ++j) {
      N(n, j) = static_cast<double>(nc[static_cast<size_t>(j)]);
      W(n, j) = static_cast<double>(wc[static_cast<size_t>(j)]);
    }
  }

  DerivedBasis d;
  d.base = legendre_basis(degree, iv);
  d.dim = dim;
  d.relation = N;
  d.expansion_in_base = W;
  d.weight = Weight::affine(offset);
  d.label = "jacobi01:" + std::to_string(degree);
  d.evalfn = [dim, L, hi](double tau) { return eval_jacobi01(dim, (tau - hi) / L); };
  Vec gd(dim);
  for (int n = 0; n < dim; ++n) gd[n] = L * L / (2.0 * (n + 1.0));
  d.gram_exact = Mat(gd.asDiagonal());
  return d;
}

double closure_residual(const Basis& b, int samples) {
  const double L = b.iv.length(), h = 1e-6 * L;
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    double tau = b.iv.lo + (k + 0.5) / samples * L;
    Vec deriv = b.derivfn ? b.derivfn(tau)
                          : Vec((b.evalfn(tau + h) - b.evalfn(tau - h)) / (2.0 * h));
    worst = std::max(worst, (deriv - b.companion * b.evalfn(tau)).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace cdds
