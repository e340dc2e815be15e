#include "cdds/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace cdds {
namespace {

// 15-point Gauss-Legendre nodes/weights on [-1,1], 30 significant digits.
constexpr int kGlOrder = 15;
constexpr double kGlNode[kGlOrder] = {
    -0.987992518020485428489565718587, -0.93727339240070590430775894771,
    -0.848206583410427216200648320774, -0.724417731360170047416186054614,
    -0.570972172608538847537226737254, -0.394151347077563369897207370981,
    -0.201194093997434522300628303395, 0.0,
    0.201194093997434522300628303395,  0.394151347077563369897207370981,
    0.570972172608538847537226737254,  0.724417731360170047416186054614,
    0.848206583410427216200648320774,  0.93727339240070590430775894771,
    0.987992518020485428489565718587};
constexpr double kGlWeight[kGlOrder] = {
    0.0307532419961172683546283935772, 0.0703660474881081247092674164507,
    0.107159220467171935011869546686,  0.139570677926154314447804794511,
    0.166269205816993933553200860481,  0.186161000015562211026800561866,
    0.198431485327111576456118326444,  0.202578241925561272880620199968,
    0.198431485327111576456118326444,  0.186161000015562211026800561866,
    0.166269205816993933553200860481,  0.139570677926154314447804794511,
    0.107159220467171935011869546686,  0.0703660474881081247092674164507,
    0.0307532419961172683546283935772};

struct PanelIntegrator {
  const MatFn& f;
  Weight w;

  Mat gl15(double a, double b) const {
    const double h = 0.5 * (b - a), c = 0.5 * (a + b);
    Mat acc;
    for (int k = 0; k < kGlOrder; ++k) {
      const double tau = c + h * kGlNode[k];
      Mat v = f(tau) * (w(tau) * kGlWeight[k] * h);
      if (k == 0)
        acc = std::move(v);
      else
        acc += v;
    }
    return acc;
  }
};

struct AdaptiveState {
  const PanelIntegrator& pi;
  double tol_per_width;
  int panels_used = 0;
  int max_panels;
  double err_accum = 0.0;
  double worst_err = 0.0;

  // Depth-first, left half first; accumulation order is therefore
  // left-to-right and run-to-run deterministic.
  void run(double a, double b, const Mat& whole, Mat& total) {
    Mat left = pi.gl15(a, 0.5 * (a + b));
    Mat right = pi.gl15(0.5 * (a + b), b);
    Mat refined = left + right;
    double err = (whole - refined).cwiseAbs().maxCoeff();
    worst_err = std::max(worst_err, err);
    if (err <= tol_per_width * (b - a) || b - a < 1e-14 * tol_scale_) {
      total += refined;
      err_accum += err;
      return;
    }
    panels_used += 2;
    if (panels_used > max_panels)
      throw QuadratureError("integrate: panel budget exhausted (worst entry error " +
                                std::to_string(err) + ")",
                            err);
    run(a, 0.5 * (a + b), left, total);
    run(0.5 * (a + b), b, right, total);
  }

  double tol_scale_ = 1.0;
};

}  // namespace

QuadResult integrate(const MatFn& f, Interval iv, Weight w, const QuadOptions& opts) {
  if (!(opts.tol > 0)) throw Error("integrate: tol must be positive");
  PanelIntegrator pi{f, w};

  // Probe once to learn dimensions (also handles empty integrands).
  Mat probe = f(0.5 * (iv.lo + iv.hi));
  Mat total = Mat::Zero(probe.rows(), probe.cols());
  if (probe.size() == 0) return {total, 0.0, 0};

  // Initial panels: bounded by a quarter of the dominant period when a
  // frequency hint is present, otherwise a single panel.
  int initial = 1;
  if (opts.omega_max > 0) {
    double max_width = (2.0 * M_PI / opts.omega_max) / 4.0;
    initial = std::max(1, static_cast<int>(std::ceil(iv.length() / max_width)));
    initial = std::min(initial, opts.max_panels / 2 + 1);
  }

  AdaptiveState st{pi, opts.tol / iv.length(), initial, opts.max_panels, 0.0, 0.0,
                   1.0 + std::abs(iv.lo) + std::abs(iv.hi)};
  const double step = iv.length() / initial;
  for (int k = 0; k < initial; ++k) {
    double a = iv.lo + k * step;
    double b = (k + 1 == initial) ? iv.hi : iv.lo + (k + 1) * step;
    st.run(a, b, pi.gl15(a, b), total);
  }
  return {total, st.err_accum, st.panels_used};
}

QuadResult integrate(const MatFn& f, Interval iv, Weight w, double tol) {
  QuadOptions opts;
  opts.tol = tol;
  return integrate(f, iv, w, opts);
}

double integrate_scalar(const std::function<double(double)>& f, Interval iv, Weight w,
                        double tol) {
  MatFn mf = [&f](double tau) {
    Mat m(1, 1);
    m(0, 0) = f(tau);
    return m;
  };
  return integrate(mf, iv, w, tol).value(0, 0);
}

GramResult gram(const VecFn& fs, int dim, Interval iv, Weight w, double tol, double omega_max) {
  MatFn outer = [&fs](double tau) {
    Vec v = fs(tau);
    return Mat(v * v.transpose());
  };
  QuadOptions opts;
  opts.tol = tol;
  opts.omega_max = omega_max;
  Mat g = dim == 0 ? Mat(0, 0) : integrate(outer, iv, w, opts).value;
  GramResult out;
  out.gram = SymMat::from(0.5 * (g + g.transpose()), 1.0);
  out.min_eigenvalue = min_eig(out.gram);
  out.near_dependent = dim > 0 && out.min_eigenvalue < 1e-10 * out.gram.trace();
  return out;
}

}  // namespace cdds
