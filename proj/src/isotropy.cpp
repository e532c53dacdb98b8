#include "deristab/isotropy.hpp"

#include <array>

namespace deristab {

std::optional<std::size_t> first_commutation_failure(const PolyMap& rho, const Derivation& d) {
  if (rho.nvars() != d.nvars()) throw AmbientMismatch("commutes: ring mismatch");
  for (std::size_t j = 0; j < d.nvars(); ++j)
    if (d.apply(rho[j]) != substitute(d.coeff(j), rho.components())) return j;
  return std::nullopt;
}

bool commutes(const PolyMap& rho, const Derivation& d) {
  return !first_commutation_failure(rho, d).has_value();
}

bool coefficients_invariant(const Derivation& d, std::span<const Rat> c) {
  for (const auto& p : d.coeffs())
    if (translate(p, c) != p) return false;
  return true;
}

std::vector<RatVector> invariant_translations(const Derivation& d) {
  const std::size_t n = d.nvars();
  // One row per (coefficient j, monomial) pair: sum_i c_i [m] dp_j/dx_i = 0.
  RatMatrix a(0, n);
  for (const auto& p : d.coeffs()) {
    std::vector<MultiPoly> grads;
    for (std::size_t i = 0; i < n; ++i) grads.push_back(partial(p, i));
    std::map<Monomial, RatVector, GrlexDescending> rows;
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& [m, v] : grads[i].terms()) {
        auto [it, _] = rows.try_emplace(m, RatVector(n, Rat(0)));
        it->second[i] = v;
      }
    for (const auto& [m, row] : rows) a.append_row(row);
  }
  auto basis = kernel_basis(a);
  for (const auto& c : basis)
    if (!coefficients_invariant(d, c))
      throw InternalError("invariant_translations: kernel vector fails translation check");
  return basis;
}

std::vector<MultiPoly> barred_coordinates(std::span<const Rat> c, std::size_t k) {
  const std::size_t n = c.size();
  if (k >= n || c[k] == 0) throw PreconditionError("barred coordinates need c_k != 0");
  std::vector<MultiPoly> out;
  const auto xk = MultiPoly::variable(n, k);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == k)
      out.push_back(xk);
    else
      out.push_back(c[k] * MultiPoly::variable(n, j) - c[j] * xk);
  }
  return out;
}

MultiPoly reduce_by_invariant_direction(const MultiPoly& p, std::span<const Rat> c,
                                        std::size_t k) {
  const std::size_t n = p.nvars();
  if (c.size() != n) throw AmbientMismatch("reduce: vector length mismatch");
  if (k >= n || c[k] == 0) throw PreconditionError("reduce: c_k must be nonzero");
  if (translate(p, c) != p) throw PreconditionError("reduce: polynomial is not invariant under c");
  // x_k = xbar_k,  x_j = (xbar_j + c_j xbar_k) / c_k
  const auto xk = MultiPoly::variable(n, k);
  std::vector<MultiPoly> images;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == k)
      images.push_back(xk);
    else
      images.push_back((MultiPoly::variable(n, j) + c[j] * xk) * Rat(1 / c[k]));
  }
  MultiPoly barred = substitute(p, images);
  if (barred.involves(k))
    throw InternalError("reduce: invariant polynomial kept a dependence on the k-th coordinate");
  return barred;
}

MultiPoly reduce_by_invariant_direction(const MultiPoly& p, std::span<const Rat> c) {
  for (std::size_t k = 0; k < c.size(); ++k)
    if (c[k] != 0) return reduce_by_invariant_direction(p, c, k);
  throw PreconditionError("reduce: c must be nonzero");
}

std::string to_string(ShiftClass c) {
  switch (c) {
    case ShiftClass::kTranslation:
      return "translation";
    case ShiftClass::kNonTranslationFlag:
      return "nontranslation-flag";
    case ShiftClass::kShiftBreaks:
      return "shift-breaks";
  }
  return "?";
}

ShiftClassification classify_shift(const PolyMap& f, const Derivation& d,
                                   const std::optional<PolyMap>& inverse) {
  if (!commutes(f, d)) throw PreconditionError("classify_shift: map does not commute with D");
  ShiftClassification out{};
  out.shift = constant_part(f);
  out.shifted_commutes = commutes(subtract_constant(f), d);
  RatVector back(out.shift.size());
  for (std::size_t i = 0; i < back.size(); ++i) back[i] = -out.shift[i];
  out.coefficients_fixed = coefficients_invariant(d, back);
  out.tests_agree = out.shifted_commutes == out.coefficients_fixed;
  out.verified_automorphism = inverse && is_inverse_pair(f, *inverse);
  if (out.verified_automorphism && !out.tests_agree)
    throw InternalError("classify_shift: shift tests disagree for a verified automorphism");
  if (!out.shifted_commutes)
    out.outcome = ShiftClass::kShiftBreaks;
  else if (is_translation(f))
    out.outcome = ShiftClass::kTranslation;
  else
    out.outcome = ShiftClass::kNonTranslationFlag;
  return out;
}

namespace {

void check_b(const MultiPoly& b) {
  if (b.nvars() != 2 || !b.involves_only({0}))
    throw PreconditionError("b must be a polynomial in x1 inside K[x1, x2]");
}

}  // namespace

Derivation shear_derivation(const MultiPoly& b) {
  check_b(b);
  return Derivation({MultiPoly::constant(2, 1), b});
}

PolyMap triangular_isotropy_map(const TriangularIsotropyParams& e) {
  check_b(e.b);
  if (e.p.nvars() != 1) throw PreconditionError("p must be univariate in w");
  if (e.c_tilde == 0) throw PreconditionError("c_tilde must be nonzero");
  const auto x1 = MultiPoly::variable(2, 0), x2 = MultiPoly::variable(2, 1);
  const MultiPoly h = antiderivative(e.b, 0);
  const MultiPoly w = x2 - h;
  const MultiPoly f = x1 + substitute(e.p, std::vector{w});
  const MultiPoly g =
      substitute(h, std::vector{f, x2}) + e.c_tilde * w + MultiPoly::constant(2, e.c_bar);
  return PolyMap({f, g});
}

TriangularDecomposition decompose_triangular_isotropy(const PolyMap& rho, const MultiPoly& b) {
  check_b(b);
  if (rho.nvars() != 2) throw AmbientMismatch("decompose: expected a map of the plane");
  if (!commutes(rho, shear_derivation(b))) return {DecomposeStatus::kNotCommuting, std::nullopt};

  const auto x1 = MultiPoly::variable(2, 0), x2 = MultiPoly::variable(2, 1);
  const MultiPoly h = antiderivative(b, 0);
  // Variable 2 of the rewritten polynomials stands for w = x2 - h(x1).
  const std::vector<MultiPoly> to_w{x1, x2 + h};
  const std::array<std::size_t, 2> onto_w{0, 0};

  MultiPoly p_part = substitute(rho[0] - x1, to_w);
  MultiPoly q_part = substitute(rho[1] - substitute(h, std::vector{rho[0], x2}), to_w);
  if (p_part.involves(0) || q_part.involves(0) || q_part.degree_in(1) > 1)
    return {DecomposeStatus::kShapeMismatch, std::nullopt};
  Rat c_tilde = q_part.coeff(Monomial::variable(2, 1));
  if (c_tilde == 0) return {DecomposeStatus::kShapeMismatch, std::nullopt};

  TriangularIsotropyParams e{b, embed(p_part, 1, onto_w), c_tilde, q_part.constant_term()};
  if (triangular_isotropy_map(e) != rho)
    throw InternalError("decompose: parameters do not reproduce the map");
  return {DecomposeStatus::kOk, std::move(e)};
}

PolyMap invert_triangular_isotropy(const TriangularIsotropyParams& e) {
  check_b(e.b);
  if (e.c_tilde == 0) throw PreconditionError("c_tilde must be nonzero");
  const auto x1 = MultiPoly::variable(2, 0), x2 = MultiPoly::variable(2, 1);
  const MultiPoly h = antiderivative(e.b, 0);
  const MultiPoly w_new = (x2 - h - MultiPoly::constant(2, e.c_bar)) * Rat(1 / e.c_tilde);
  const MultiPoly f = x1 - substitute(e.p, std::vector{w_new});
  const MultiPoly g = w_new + substitute(h, std::vector{f, x2});
  return PolyMap({f, g});
}

}  // namespace deristab
