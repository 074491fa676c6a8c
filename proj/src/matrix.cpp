#include "liepoisson/matrix.hpp"

#include <stdexcept>

namespace liepoisson {

namespace {

void require_same_shape(const ExprMatrix& a, const ExprMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix shape mismatch");
}

}  // namespace

ExprMatrix ExprMatrix::identity(int n) {
  ExprMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Expression::constant(Rational(1));
  return m;
}

bool ExprMatrix::is_zero() const {
  for (const Expression& e : data_)
    if (!e.is_zero()) return false;
  return true;
}

ExprMatrix add(const ExprMatrix& a, const ExprMatrix& b) {
  require_same_shape(a, b);
  ExprMatrix out(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out.at(r, c) = add(a.at(r, c), b.at(r, c));
  return out;
}

ExprMatrix sub(const ExprMatrix& a, const ExprMatrix& b) {
  require_same_shape(a, b);
  ExprMatrix out(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out.at(r, c) = sub(a.at(r, c), b.at(r, c));
  return out;
}

ExprMatrix neg(const ExprMatrix& a) {
  ExprMatrix out(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out.at(r, c) = neg(a.at(r, c));
  return out;
}

ExprMatrix mul(const ExprMatrix& a, const ExprMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  ExprMatrix out(a.rows(), b.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < b.cols(); ++c) {
      Expression acc;
      for (int k = 0; k < a.cols(); ++k) {
        if (a.at(r, k).is_zero() || b.at(k, c).is_zero()) continue;
        acc = add(acc, mul(a.at(r, k), b.at(k, c)));
      }
      out.at(r, c) = std::move(acc);
    }
  return out;
}

ExprMatrix mul(const ExprMatrix& a, const Expression& s) {
  ExprMatrix out(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out.at(r, c) = mul(a.at(r, c), s);
  return out;
}

ExprMatrix mul(const ExprMatrix& a, const Rational& s) {
  ExprMatrix out(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out.at(r, c) = mul(a.at(r, c), s);
  return out;
}

ExprMatrix transpose(const ExprMatrix& a) {
  ExprMatrix out(a.cols(), a.rows());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out.at(c, r) = a.at(r, c);
  return out;
}

Expression trace(const ExprMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("trace of a non-square matrix");
  Expression acc;
  for (int i = 0; i < a.rows(); ++i) acc = add(acc, a.at(i, i));
  return acc;
}

namespace {

Expression det_recursive(const ExprMatrix& a, std::vector<int>& rows, std::vector<int>& cols) {
  const std::size_t n = rows.size();
  if (n == 1) return a.at(rows[0], cols[0]);

  // Expand along the sparsest remaining row.
  std::size_t best = 0, best_nonzero = n + 1;
  for (std::size_t ri = 0; ri < n; ++ri) {
    std::size_t nz = 0;
    for (std::size_t ci = 0; ci < n; ++ci)
      if (!a.at(rows[ri], cols[ci]).is_zero()) ++nz;
    if (nz < best_nonzero) {
      best_nonzero = nz;
      best = ri;
    }
  }
  if (best_nonzero == 0) return Expression();

  int row = rows[best];
  rows.erase(rows.begin() + best);
  Expression acc;
  for (std::size_t ci = 0; ci < n; ++ci) {
    const Expression& pivot = a.at(row, cols[ci]);
    if (pivot.is_zero()) continue;
    int col = cols[ci];
    cols.erase(cols.begin() + ci);
    Expression minor = det_recursive(a, rows, cols);
    cols.insert(cols.begin() + ci, col);
    if (!minor.is_zero()) {
      Expression contribution = mul(pivot, minor);
      if ((best + ci) % 2 == 1) contribution = neg(contribution);
      acc = add(acc, contribution);
    }
  }
  rows.insert(rows.begin() + best, row);
  return acc;
}

}  // namespace

Expression determinant(const ExprMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (a.rows() == 0) return Expression::constant(Rational(1));
  std::vector<int> rows(a.rows()), cols(a.cols());
  for (int i = 0; i < a.rows(); ++i) rows[i] = cols[i] = i;
  return det_recursive(a, rows, cols);
}

ExprMatrix adjugate(const ExprMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("adjugate of a non-square matrix");
  const int n = a.rows();
  ExprMatrix out(n, n);
  if (n == 1) {
    out.at(0, 0) = Expression::constant(Rational(1));
    return out;
  }
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      std::vector<int> rows, cols;
      for (int i = 0; i < n; ++i) {
        if (i != r) rows.push_back(i);
        if (i != c) cols.push_back(i);
      }
      Expression minor = det_recursive(a, rows, cols);
      if ((r + c) % 2 == 1) minor = neg(minor);
      out.at(c, r) = std::move(minor);  // transposed cofactor
    }
  return out;
}

ExprMatrix invert_unit_determinant(const ExprMatrix& a) {
  Expression det = determinant(a);
  if (det.is_zero()) throw EvaluationError("matrix is singular");
  if (!is_invertible_term(det))
    throw EvaluationError("matrix determinant is not a single invertible term: " + to_string(det));
  ExprMatrix adj = adjugate(a);
  ExprMatrix out(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out.at(r, c) = divide_by_term(adj.at(r, c), det);
  return out;
}

ExprMatrix partial(const ExprMatrix& a, Coordinate i) {
  ExprMatrix out(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out.at(r, c) = partial(a.at(r, c), i);
  return out;
}

bool is_antisymmetric(const ExprMatrix& a) {
  if (a.rows() != a.cols()) return false;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = r; c < a.cols(); ++c)
      if (!add(a.at(r, c), a.at(c, r)).is_zero()) return false;
  return true;
}

}  // namespace liepoisson
