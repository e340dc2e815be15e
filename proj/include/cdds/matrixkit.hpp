#pragma once

#include <Eigen/Dense>

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdds {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Base type for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(what) {}
};

/// Symmetric matrix with packed lower-triangle storage. Each entry is stored
/// once, so entries(i,j) == entries(j,i) holds exactly by construction.
/// Zero-dimensional instances are legal and follow the empty-matrix rules.
class SymMat {
 public:
  SymMat() : dim_(0) {}
  explicit SymMat(int dim) : dim_(dim), packed_(Vec::Zero(packed_size(dim))) {
    if (dim < 0) throw DimensionError("SymMat: negative dimension");
  }

  /// Wraps a square matrix, requiring symmetry up to `tol` (relative to the
  /// largest entry); the result is the exact symmetric part (m + m^T)/2.
  static SymMat from(const Mat& m, double tol = 1e-9);
  static SymMat identity(int dim);
  static SymMat diag(const Vec& d);

  int dim() const { return dim_; }
  double operator()(int i, int j) const { return packed_[index(i, j)]; }
  void set(int i, int j, double v) { packed_[index(i, j)] = v; }

  Mat mat() const;
  double trace() const;

  const Vec& packed() const { return packed_; }
  static int packed_size(int dim) { return dim * (dim + 1) / 2; }

 private:
  int index(int i, int j) const {
    if (i < 0 || j < 0 || i >= dim_ || j >= dim_)
      throw DimensionError("SymMat: index out of range");
    if (i < j) std::swap(i, j);
    // column-major packed lower triangle
    return j * dim_ - j * (j - 1) / 2 + (i - j);
  }

  int dim_;
  Vec packed_;
};

/// Kronecker product. Empty operands give an empty result with product
/// dimensions.
Mat kron(const Mat& x, const Mat& y);

/// Block-diagonal concatenation; empty blocks contribute zero rows/cols.
Mat dsum(std::span<const Mat> blocks);
Mat dsum(std::initializer_list<Mat> blocks);

/// X + X^T of a square matrix.
SymMat sy(const Mat& x);

/// X^T Y X.
SymMat congruence(const SymMat& y, const Mat& x);
Mat congruence(const Mat& y, const Mat& x);

/// Isometric symmetric vectorization: off-diagonal entries scaled by sqrt(2)
/// so that dot(svec(A), svec(B)) == trace(A B).
Vec svec(const SymMat& s);
SymMat smat(const Vec& v);

/// Smallest eigenvalue via a symmetric eigensolver.
double min_eig(const SymMat& s);
double min_eig_sym(const Mat& s);

/// Eigenvalue signature (negative, zero, positive counts) with a tolerance
/// relative to the largest absolute eigenvalue.
struct Signature {
  int neg = 0, zero = 0, pos = 0;
  bool operator==(const Signature&) const = default;
};
Signature signature(const SymMat& s, double rel_tol = 1e-9);

}  // namespace cdds
