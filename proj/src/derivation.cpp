#include "deristab/derivation.hpp"

#include "deristab/automorphism.hpp"

namespace deristab {

Derivation::Derivation(std::vector<MultiPoly> coeffs) : coeffs_(std::move(coeffs)) {
  for (const auto& p : coeffs_)
    if (p.nvars() != coeffs_.size())
      throw AmbientMismatch("derivation coefficient lives in " + std::to_string(p.nvars()) +
                            " variables, expected " + std::to_string(coeffs_.size()));
}

Derivation Derivation::zero(std::size_t n) {
  return Derivation(std::vector<MultiPoly>(n, MultiPoly(n)));
}

Derivation Derivation::parse(std::span<const std::string> coeffs, std::size_t n) {
  if (coeffs.size() != n)
    throw PreconditionError("expected " + std::to_string(n) + " derivation coefficients, got " +
                            std::to_string(coeffs.size()));
  std::vector<MultiPoly> ps;
  for (const auto& s : coeffs) ps.push_back(deristab::parse(s, n));
  return Derivation(std::move(ps));
}

MultiPoly Derivation::apply(const MultiPoly& f) const {
  if (f.nvars() != nvars()) throw AmbientMismatch("apply: polynomial and derivation rings differ");
  MultiPoly r(nvars());
  for (std::size_t i = 0; i < nvars(); ++i) {
    if (coeffs_[i].is_zero() || !f.involves(i)) continue;
    r += coeffs_[i] * partial(f, i);
  }
  return r;
}

std::vector<std::string> to_strings(const Derivation& d) {
  std::vector<std::string> out;
  for (const auto& p : d.coeffs()) out.push_back(to_string(p));
  return out;
}

std::optional<ShamsuddinForm> recognize_shamsuddin(const Derivation& d) {
  const std::size_t n = d.nvars();
  if (n == 0 || d.coeff(0) != MultiPoly::constant(n, 1)) return std::nullopt;
  ShamsuddinForm form{n, {}, {}};
  for (std::size_t i = 1; i < n; ++i) {
    const auto& p = d.coeff(i);
    if (!p.involves_only({0, i}) || p.degree_in(i) > 1) return std::nullopt;
    MultiPoly a(n), b(n);
    for (const auto& [m, c] : p.terms()) {
      if (m[i] == 1) {
        Monomial mm(m);
        mm[i] = 0;
        a.add_term(mm, c);
      } else {
        b.add_term(m, c);
      }
    }
    form.a.push_back(std::move(a));
    form.b.push_back(std::move(b));
  }
  return form;
}

Derivation to_derivation(const ShamsuddinForm& f) {
  std::vector<MultiPoly> coeffs{MultiPoly::constant(f.n, 1)};
  for (std::size_t k = 0; k + 1 < f.n; ++k)
    coeffs.push_back(f.a[k] * MultiPoly::variable(f.n, k + 1) + f.b[k]);
  return Derivation(std::move(coeffs));
}

std::optional<PairwiseForm> recognize_pairwise(const Derivation& d) {
  const std::size_t n = d.nvars();
  if (n == 0 || !d.coeff(0).involves_only({0})) return std::nullopt;
  PairwiseForm form{n, d.coeff(0), {}};
  for (std::size_t i = 1; i < n; ++i) {
    if (!d.coeff(i).involves_only({0, i})) return std::nullopt;
    form.q.push_back(d.coeff(i));
  }
  return form;
}

Derivation to_derivation(const PairwiseForm& f) {
  std::vector<MultiPoly> coeffs{f.p};
  coeffs.insert(coeffs.end(), f.q.begin(), f.q.end());
  return Derivation(std::move(coeffs));
}

std::optional<MultiPoly> darboux_cofactor(const Derivation& d, const MultiPoly& g) {
  if (g.is_zero()) throw PreconditionError("stability of the zero ideal is not asked");
  return exact_divide(d.apply(g), g);
}

bool principal_ideal_stable(const Derivation& d, const MultiPoly& g) {
  return darboux_cofactor(d, g).has_value();
}

Derivation conjugate(const Derivation& d, const PolyMap& rho, const PolyMap& rho_inv) {
  if (rho.nvars() != d.nvars()) throw AmbientMismatch("conjugate: ring mismatch");
  if (!is_inverse_pair(rho, rho_inv))
    throw PreconditionError("conjugate: maps are not mutually inverse");
  std::vector<MultiPoly> coeffs;
  for (std::size_t i = 0; i < d.nvars(); ++i)
    coeffs.push_back(substitute(d.apply(rho[i]), rho_inv.components()));
  return Derivation(std::move(coeffs));
}

}  // namespace deristab
