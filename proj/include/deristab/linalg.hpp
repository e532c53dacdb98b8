#pragma once

// Exact linear algebra over Q. Elimination is fraction-free (Bareiss) on an
// integer copy of the matrix; only back-substitution touches rationals.

#include <optional>
#include <vector>

#include "deristab/poly.hpp"

namespace deristab {

using RatVector = std::vector<Rat>;

class RatMatrix {
 public:
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rat& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rat& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void append_row(const RatVector& row);

 private:
  std::size_t rows_, cols_;
  std::vector<Rat> data_;
};

/// Row echelon data: rank and pivot columns.
struct Echelon {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
  // Integer echelon rows after fraction-free elimination, one per pivot.
  std::vector<std::vector<mpz_class>> rows;
};

Echelon fraction_free_echelon(const RatMatrix& a);

/// Basis of {x : A x = 0}. Each basis vector has a 1 in its own free column
/// and 0 in every other free column, so the basis is unique for a given
/// row space.
std::vector<RatVector> kernel_basis(const RatMatrix& a);

/// Some x with A x = b, or nullopt. Free variables are set to 0.
std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b);

}  // namespace deristab
