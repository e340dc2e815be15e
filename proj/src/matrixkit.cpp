#include "cdds/matrixkit.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace cdds {

SymMat SymMat::from(const Mat& m, double tol) {
  if (m.rows() != m.cols()) throw DimensionError("SymMat::from: matrix not square");
  const int n = static_cast<int>(m.rows());
  double scale = n > 0 ? m.cwiseAbs().maxCoeff() : 0.0;
  if (n > 0) {
    double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > tol * std::max(1.0, scale))
      throw Error("SymMat::from: matrix is not symmetric (asymmetry " + std::to_string(asym) + ")");
  }
  SymMat s(n);
  for (int j = 0; j < n; ++j)
    for (int i = j; i < n; ++i) s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
  return s;
}

SymMat SymMat::identity(int dim) {
  SymMat s(dim);
  for (int i = 0; i < dim; ++i) s.set(i, i, 1.0);
  return s;
}

SymMat SymMat::diag(const Vec& d) {
  SymMat s(static_cast<int>(d.size()));
  for (int i = 0; i < d.size(); ++i) s.set(i, i, d[i]);
  return s;
}

Mat SymMat::mat() const {
  Mat m(dim_, dim_);
  for (int j = 0; j < dim_; ++j)
    for (int i = j; i < dim_; ++i) m(i, j) = m(j, i) = (*this)(i, j);
  return m;
}

double SymMat::trace() const {
  double t = 0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

Mat kron(const Mat& x, const Mat& y) {
  Mat out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return out;
}

Mat dsum(std::span<const Mat> blocks) {
  Eigen::Index rows = 0, cols = 0;
  for (const Mat& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Mat out = Mat::Zero(rows, cols);
  Eigen::Index r = 0, c = 0;
  for (const Mat& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

Mat dsum(std::initializer_list<Mat> blocks) {
  std::vector<Mat> v(blocks);
  return dsum(std::span<const Mat>(v));
}

SymMat sy(const Mat& x) {
  if (x.rows() != x.cols()) throw DimensionError("sy: matrix not square");
  Mat s = x + x.transpose();
  const int n = static_cast<int>(s.rows());
  SymMat out(n);
  for (int j = 0; j < n; ++j)
    for (int i = j; i < n; ++i) out.set(i, j, s(i, j));
  return out;
}

SymMat congruence(const SymMat& y, const Mat& x) {
  if (y.dim() != x.rows())
    throw DimensionError("congruence: Y dim " + std::to_string(y.dim()) + " vs X rows " +
                         std::to_string(x.rows()));
  Mat m = x.transpose() * y.mat() * x;
  // symmetric up to roundoff; store the exact symmetric part
  const int n = static_cast<int>(m.rows());
  SymMat out(n);
  for (int j = 0; j < n; ++j)
    for (int i = j; i < n; ++i) out.set(i, j, 0.5 * (m(i, j) + m(j, i)));
  return out;
}

Mat congruence(const Mat& y, const Mat& x) {
  if (y.rows() != x.rows()) throw DimensionError("congruence: dimension mismatch");
  return x.transpose() * y * x;
}

Vec svec(const SymMat& s) {
  static const double kSqrt2 = std::sqrt(2.0);
  const int n = s.dim();
  Vec v(SymMat::packed_size(n));
  int k = 0;
  for (int j = 0; j < n; ++j) {
    v[k++] = s(j, j);
    for (int i = j + 1; i < n; ++i) v[k++] = kSqrt2 * s(i, j);
  }
  return v;
}

SymMat smat(const Vec& v) {
  static const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
  // recover m from length m(m+1)/2
  const auto len = v.size();
  int n = static_cast<int>(std::floor((std::sqrt(8.0 * static_cast<double>(len) + 1.0) - 1.0) / 2.0 + 0.5));
  if (SymMat::packed_size(n) != len)
    throw DimensionError("smat: vector length " + std::to_string(len) + " is not triangular");
  SymMat s(n);
  int k = 0;
  for (int j = 0; j < n; ++j) {
    s.set(j, j, v[k++]);
    for (int i = j + 1; i < n; ++i) s.set(i, j, kInvSqrt2 * v[k++]);
  }
  return s;
}

double min_eig(const SymMat& s) {
  return min_eig_sym(s.mat());
}

double min_eig_sym(const Mat& m) {
  if (m.rows() == 0) return 0.0;
  if (!m.allFinite()) throw Error("min_eig: non-finite entries");
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("min_eig: eigensolver failed");
  return es.eigenvalues().minCoeff();
}

Signature signature(const SymMat& s, double rel_tol) {
  Signature sig;
  if (s.dim() == 0) return sig;
  Eigen::SelfAdjointEigenSolver<Mat> es(s.mat(), Eigen::EigenvaluesOnly);
  const Vec& ev = es.eigenvalues();
  double scale = ev.cwiseAbs().maxCoeff();
  double tol = rel_tol * std::max(1.0, scale);
  for (double v : ev) {
    if (v > tol)
      ++sig.pos;
    else if (v < -tol)
      ++sig.neg;
    else
      ++sig.zero;
  }
  return sig;
}

}  // namespace cdds
