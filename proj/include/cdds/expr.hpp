#pragma once

#include "cdds/matrixkit.hpp"

#include <memory>
#include <string>
#include <vector>

namespace cdds {

/// Position-annotated parse failure.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int col)
      : Error("line " + std::to_string(line) + " col " + std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line, col;
};

/// A parsed scalar expression in the variable `tau`. Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := atom ('^' integer)?
///   atom   := number | 'tau' | '(' expr ')' | func '(' expr ')'
///   func   := 'sin' | 'cos' | 'exp'
class Expr {
 public:
  Expr() = default;

  double eval(double tau) const;
  bool empty() const { return !root_; }
  const std::string& text() const { return text_; }

  /// Largest absolute numeric constant in the expression; a crude bandwidth
  /// hint for oscillatory integrands.
  double max_constant() const;

  static Expr parse(const std::string& text, int line_offset = 1, int col_offset = 1);
  static Expr constant(double v);

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

/// Dense matrix of expressions (a matrix-valued kernel).
struct MatExpr {
  int rows = 0, cols = 0;
  std::vector<Expr> entries;  // row-major

  bool empty() const { return rows == 0 || cols == 0; }
  const Expr& at(int i, int j) const { return entries[static_cast<size_t>(i * cols + j)]; }
  Mat eval(double tau) const;
  double max_constant() const;
  static MatExpr zero(int rows, int cols);
};

}  // namespace cdds
