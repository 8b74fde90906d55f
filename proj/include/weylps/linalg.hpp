#pragma once

#include <optional>
#include <vector>

#include "weylps/rat.hpp"

namespace weylps {

using RatVector = std::vector<Rat>;

/// Dense row-major matrix over Rat.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static RatMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  [[nodiscard]] RatMatrix transpose() const;
  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend RatVector operator*(const RatMatrix& a, const RatVector& x);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> a_;
};

/// Determinant by fraction-free (Bareiss) elimination.
Rat determinant(const RatMatrix& m);

/// Reduced row echelon form; pivot columns chosen left to right.
struct EchelonForm {
  RatMatrix r;
  std::vector<std::size_t> pivots;
};
EchelonForm rref(const RatMatrix& m);

std::size_t rank(const RatMatrix& m);
std::size_t kernel_dimension(const RatMatrix& m);
/// Basis of the right kernel, one vector per non-pivot column.
std::vector<RatVector> kernel_basis(const RatMatrix& m);

/// Outcome of solving A x = b.
struct LinearSolution {
  bool consistent = false;
  RatVector x;                         // particular solution (free coordinates = supplied values)
  std::vector<std::size_t> free_cols;  // non-pivot columns
};

/// Solves A x = b. Free (non-pivot) columns take the values in `free_values`
/// keyed by column index (missing entries default to 0).
LinearSolution solve_linear(const RatMatrix& a, const RatVector& b,
                            const std::vector<std::optional<Rat>>& free_values = {});

/// Solves A x = b where the coordinates marked in `fixed` are prescribed.
/// The remaining coordinates must then be uniquely determined; returns
/// nullopt if the reduced system is inconsistent or underdetermined.
std::optional<RatVector> solve_with_fixed(const RatMatrix& a, const RatVector& b,
                                          const std::vector<std::optional<Rat>>& fixed);

}  // namespace weylps
