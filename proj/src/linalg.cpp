#include "deristab/linalg.hpp"

#include <algorithm>

namespace deristab {

void RatMatrix::append_row(const RatVector& row) {
  if (row.size() != cols_) throw PreconditionError("append_row: width mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

Echelon fraction_free_echelon(const RatMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  // Clear denominators row by row.
  std::vector<std::vector<mpz_class>> rows(m, std::vector<mpz_class>(n));
  for (std::size_t r = 0; r < m; ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < n; ++c)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < n; ++c) rows[r][c] = a(r, c).get_num() * (l / a(r, c).get_den());
  }

  Echelon e;
  mpz_class prev = 1;
  std::size_t pr = 0;
  for (std::size_t col = 0; col < n && pr < m; ++col) {
    std::size_t sel = pr;
    while (sel < m && rows[sel][col] == 0) ++sel;
    if (sel == m) continue;
    std::swap(rows[pr], rows[sel]);
    const mpz_class& piv = rows[pr][col];
    for (std::size_t r = pr + 1; r < m; ++r) {
      mpz_class f = rows[r][col];
      for (std::size_t c = col; c < n; ++c) {
        // Bareiss step; the division is exact.
        rows[r][c] = (piv * rows[r][c] - f * rows[pr][c]);
        mpz_divexact(rows[r][c].get_mpz_t(), rows[r][c].get_mpz_t(), prev.get_mpz_t());
      }
      for (std::size_t c = 0; c < col; ++c) rows[r][c] = 0;
    }
    prev = piv;
    e.pivot_cols.push_back(col);
    ++pr;
  }
  e.rank = pr;
  rows.resize(pr);
  e.rows = std::move(rows);
  return e;
}

namespace {

// Back-substitutes the echelon system for pivot variables given fixed values
// of the free variables and a right-hand side per echelon row.
RatVector back_substitute(const Echelon& e, std::size_t n, RatVector x, const RatVector& rhs) {
  for (std::size_t k = e.rank; k-- > 0;) {
    std::size_t pc = e.pivot_cols[k];
    Rat acc = rhs[k];
    for (std::size_t c = pc + 1; c < n; ++c)
      if (e.rows[k][c] != 0) acc -= Rat(e.rows[k][c]) * x[c];
    x[pc] = acc / Rat(e.rows[k][pc]);
  }
  return x;
}

}  // namespace

std::vector<RatVector> kernel_basis(const RatMatrix& a) {
  const std::size_t n = a.cols();
  Echelon e = fraction_free_echelon(a);
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<RatVector> basis;
  RatVector zero_rhs(e.rank, Rat(0));
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RatVector x(n, Rat(0));
    x[f] = 1;
    basis.push_back(back_substitute(e, n, std::move(x), zero_rhs));
  }
  return basis;
}

std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b) {
  if (b.size() != a.rows()) throw PreconditionError("solve: rhs length mismatch");
  const std::size_t n = a.cols();
  RatMatrix aug(a.rows(), n + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n) = b[r];
  }
  Echelon e = fraction_free_echelon(aug);
  if (e.rank > 0 && e.pivot_cols.back() == n) return std::nullopt;
  RatVector rhs(e.rank);
  for (std::size_t k = 0; k < e.rank; ++k) rhs[k] = Rat(e.rows[k][n]);
  // Drop the augmented column from the echelon rows for back-substitution.
  return back_substitute(e, n, RatVector(n, Rat(0)), rhs);
}

}  // namespace deristab
