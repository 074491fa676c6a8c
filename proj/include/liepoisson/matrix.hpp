#pragma once

#include <vector>

#include "liepoisson/expression.hpp"

namespace liepoisson {

// Dense matrix of expressions. Storage is 0-based; callers in group/algebra
// code use the 1-based accessors to match the usual index conventions.
class ExprMatrix {
 public:
  ExprMatrix() = default;
  ExprMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ExprMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Expression& at(int r, int c) { return data_[r * cols_ + c]; }
  const Expression& at(int r, int c) const { return data_[r * cols_ + c]; }

  // 1-based accessors.
  Expression& at1(int r, int c) { return at(r - 1, c - 1); }
  const Expression& at1(int r, int c) const { return at(r - 1, c - 1); }

  bool is_zero() const;

  friend bool operator==(const ExprMatrix& a, const ExprMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const ExprMatrix& a, const ExprMatrix& b) { return !(a == b); }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Expression> data_;
};

ExprMatrix add(const ExprMatrix& a, const ExprMatrix& b);
ExprMatrix sub(const ExprMatrix& a, const ExprMatrix& b);
ExprMatrix neg(const ExprMatrix& a);
ExprMatrix mul(const ExprMatrix& a, const ExprMatrix& b);
ExprMatrix mul(const ExprMatrix& a, const Expression& s);
ExprMatrix mul(const ExprMatrix& a, const Rational& s);
ExprMatrix transpose(const ExprMatrix& a);
Expression trace(const ExprMatrix& a);

Expression determinant(const ExprMatrix& a);
ExprMatrix adjugate(const ExprMatrix& a);  // a * adjugate(a) = det(a) * I

// Exact inverse for matrices whose determinant is a single invertible term.
ExprMatrix invert_unit_determinant(const ExprMatrix& a);

ExprMatrix partial(const ExprMatrix& a, Coordinate i);

bool is_antisymmetric(const ExprMatrix& a);

}  // namespace liepoisson
