#include "weylps/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace weylps {

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Rat(1);
  return m;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
  RatMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

RatVector operator*(const RatMatrix& a, const RatVector& x) {
  if (a.cols_ != x.size()) throw std::invalid_argument("matrix/vector shape mismatch");
  RatVector y(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
  return y;
}

Rat determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Rat(1);
  RatMatrix a = m;
  Rat prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a(p, k).is_zero()) ++p;
      if (p == n) return Rat(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = Rat(0);
    }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

EchelonForm rref(const RatMatrix& m) {
  EchelonForm e{m, {}};
  RatMatrix& a = e.r;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t p = row;
    while (p < a.rows() && a(p, col).is_zero()) ++p;
    if (p == a.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
    const Rat inv = Rat(1) / a(row, col);
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      const Rat f = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    e.pivots.push_back(col);
    ++row;
  }
  return e;
}

std::size_t rank(const RatMatrix& m) { return rref(m).pivots.size(); }

std::size_t kernel_dimension(const RatMatrix& m) { return m.cols() - rank(m); }

std::vector<RatVector> kernel_basis(const RatMatrix& m) {
  const EchelonForm e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v(m.cols());
    v[f] = Rat(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.r(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

LinearSolution solve_linear(const RatMatrix& a, const RatVector& b, const std::vector<std::optional<Rat>>& free_values) {
  if (b.size() != a.rows()) throw std::invalid_argument("right-hand side length mismatch");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const EchelonForm e = rref(aug);
  LinearSolution s;
  s.consistent = e.pivots.empty() || e.pivots.back() < a.cols();
  if (!s.consistent) return s;
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  s.x.assign(a.cols(), Rat(0));
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (is_pivot[j]) continue;
    s.free_cols.push_back(j);
    if (j < free_values.size() && free_values[j]) s.x[j] = *free_values[j];
  }
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    Rat v = e.r(r, a.cols());
    for (auto f : s.free_cols) v -= e.r(r, f) * s.x[f];
    s.x[e.pivots[r]] = v;
  }
  return s;
}

std::optional<RatVector> solve_with_fixed(const RatMatrix& a, const RatVector& b,
                                          const std::vector<std::optional<Rat>>& fixed) {
  std::vector<std::size_t> unknown;
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (j >= fixed.size() || !fixed[j]) unknown.push_back(j);
  RatMatrix sub(a.rows(), unknown.size());
  RatVector rhs = b;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < unknown.size(); ++k) sub(i, k) = a(i, unknown[k]);
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (j < fixed.size() && fixed[j]) rhs[i] -= a(i, j) * *fixed[j];
  }
  const LinearSolution s = solve_linear(sub, rhs);
  if (!s.consistent || !s.free_cols.empty()) return std::nullopt;
  RatVector x(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (j < fixed.size() && fixed[j]) x[j] = *fixed[j];
  for (std::size_t k = 0; k < unknown.size(); ++k) x[unknown[k]] = s.x[k];
  return x;
}

}  // namespace weylps
