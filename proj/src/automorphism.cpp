#include "deristab/automorphism.hpp"

#include <algorithm>

namespace deristab {

PolyMap::PolyMap(std::vector<MultiPoly> components) : components_(std::move(components)) {
  for (const auto& p : components_)
    if (p.nvars() != components_.size())
      throw AmbientMismatch("map component lives in " + std::to_string(p.nvars()) +
                            " variables, expected " + std::to_string(components_.size()));
}

PolyMap PolyMap::identity(std::size_t n) {
  std::vector<MultiPoly> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(MultiPoly::variable(n, i));
  return PolyMap(std::move(c));
}

PolyMap PolyMap::translation(std::span<const Rat> c) {
  const std::size_t n = c.size();
  std::vector<MultiPoly> comps;
  for (std::size_t i = 0; i < n; ++i)
    comps.push_back(MultiPoly::variable(n, i) + MultiPoly::constant(n, c[i]));
  return PolyMap(std::move(comps));
}

PolyMap PolyMap::parse(std::span<const std::string> components, std::size_t n) {
  if (components.size() != n)
    throw PreconditionError("expected " + std::to_string(n) + " map components, got " +
                            std::to_string(components.size()));
  std::vector<MultiPoly> c;
  for (const auto& s : components) c.push_back(deristab::parse(s, n));
  return PolyMap(std::move(c));
}

bool PolyMap::is_identity() const { return *this == identity(nvars()); }

std::vector<std::string> to_strings(const PolyMap& f) {
  std::vector<std::string> out;
  for (const auto& p : f.components()) out.push_back(to_string(p));
  return out;
}

std::string to_string(const PolyMap& f) {
  std::string s = "(";
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    if (i) s += ", ";
    s += to_string(f[i]);
  }
  return s + ")";
}

bool canonical_less(const PolyMap& a, const PolyMap& b) {
  return std::lexicographical_compare(
      a.components().begin(), a.components().end(), b.components().begin(),
      b.components().end(),
      [](const MultiPoly& x, const MultiPoly& y) { return canonical_less(x, y); });
}

PolyMap compose(const PolyMap& f, const PolyMap& g) {
  if (f.nvars() != g.nvars()) throw AmbientMismatch("compose: ring mismatch");
  std::vector<MultiPoly> out;
  for (const auto& fi : f.components()) out.push_back(substitute(fi, g.components()));
  return PolyMap(std::move(out));
}

bool is_inverse_pair(const PolyMap& f, const PolyMap& h) {
  if (f.nvars() != h.nvars()) throw AmbientMismatch("is_inverse_pair: ring mismatch");
  return compose(h, f).is_identity() && compose(f, h).is_identity();
}

InversePair::InversePair(PolyMap forward, PolyMap backward)
    : forward_(std::move(forward)), backward_(std::move(backward)) {
  if (!is_inverse_pair(forward_, backward_))
    throw PreconditionError("InversePair: maps are not mutually inverse");
}

namespace {

MultiPoly det(std::vector<std::vector<MultiPoly>> m, std::size_t n, std::size_t ring) {
  if (n == 0) return MultiPoly::constant(ring, 1);
  if (n == 1) return m[0][0];
  MultiPoly sum(ring);
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    std::vector<std::vector<MultiPoly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<MultiPoly> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    MultiPoly term = m[0][col] * det(std::move(minor), n - 1, ring);
    if (col % 2)
      sum -= term;
    else
      sum += term;
  }
  return sum;
}

}  // namespace

MultiPoly jacobian_det(const PolyMap& f) {
  const std::size_t n = f.nvars();
  std::vector<std::vector<MultiPoly>> j(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) j[r].push_back(partial(f[r], c));
  return det(std::move(j), n, n);
}

RatVector constant_part(const PolyMap& f) {
  RatVector c;
  for (const auto& p : f.components()) c.push_back(p.constant_term());
  return c;
}

PolyMap subtract_constant(const PolyMap& f) {
  std::vector<MultiPoly> out;
  for (const auto& p : f.components()) out.push_back(p - MultiPoly::constant(p.nvars(), p.constant_term()));
  return PolyMap(std::move(out));
}

std::optional<RatVector> is_translation(const PolyMap& f) {
  RatVector c = constant_part(f);
  if (subtract_constant(f).is_identity()) return c;
  return std::nullopt;
}

std::optional<PolyMap> invert_affine(const PolyMap& f) {
  const std::size_t n = f.nvars();
  for (const auto& p : f.components())
    if (p.total_degree() > 1) return std::nullopt;
  // f(x) = A x + b  =>  f^{-1}(y) = A^{-1}(y - b)
  RatMatrix a(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a(r, c) = f[r].coeff(Monomial::variable(n, c));
  if (fraction_free_echelon(a).rank != n) return std::nullopt;
  RatVector b = constant_part(f);
  std::vector<MultiPoly> comps(n, MultiPoly(n));
  for (std::size_t col = 0; col < n; ++col) {
    RatVector e(n, Rat(0));
    e[col] = 1;
    auto column = solve(a, e);  // column `col` of A^{-1}
    for (std::size_t r = 0; r < n; ++r)
      comps[r] += (*column)[r] * (MultiPoly::variable(n, col) - MultiPoly::constant(n, b[col]));
  }
  PolyMap inv(std::move(comps));
  if (!is_inverse_pair(f, inv)) throw InternalError("invert_affine: inverse failed verification");
  return inv;
}

std::optional<PolyMap> invert_bounded_degree(const PolyMap& f, unsigned d) {
  const std::size_t n = f.nvars();
  auto monos = monomials_up_to(n, d);
  std::vector<MultiPoly> images;  // f^alpha for each monomial alpha
  images.reserve(monos.size());
  for (const auto& m : monos) images.push_back(substitute(MultiPoly::term(m, 1), f.components()));

  // Rows are indexed by the monomials appearing in any image.
  std::map<Monomial, std::size_t, GrlexDescending> row_of;
  for (const auto& img : images)
    for (const auto& [m, c] : img.terms()) row_of.try_emplace(m, 0);
  for (std::size_t i = 0; i < n; ++i) row_of.try_emplace(Monomial::variable(n, i), 0);
  std::size_t r = 0;
  for (auto& [m, idx] : row_of) idx = r++;

  RatMatrix a(row_of.size(), monos.size());
  for (std::size_t c = 0; c < images.size(); ++c)
    for (const auto& [m, v] : images[c].terms()) a(row_of[m], c) = v;
  // An invertible f makes the f^alpha linearly independent.
  if (fraction_free_echelon(a).rank != monos.size()) return std::nullopt;

  std::vector<MultiPoly> comps;
  for (std::size_t i = 0; i < n; ++i) {
    RatVector rhs(row_of.size(), Rat(0));
    rhs[row_of[Monomial::variable(n, i)]] = 1;
    auto sol = solve(a, rhs);
    if (!sol) return std::nullopt;
    MultiPoly h(n);
    for (std::size_t c = 0; c < monos.size(); ++c) h.add_term(monos[c], (*sol)[c]);
    comps.push_back(std::move(h));
  }
  PolyMap inv(std::move(comps));
  if (!is_inverse_pair(f, inv)) return std::nullopt;
  return inv;
}

}  // namespace deristab
