#include "deristab/simplicity.hpp"

#include <algorithm>

#include "deristab/isotropy.hpp"

namespace deristab {

std::string to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::kLinearDependence: return "LinearDependence";
    case WitnessKind::kUnivariateCoefficient: return "UnivariateCoefficient";
    case WitnessKind::kVanishingAtZero: return "VanishingAtZero";
    case WitnessKind::kPlanarAntiderivative: return "Thm27Antiderivative";
    case WitnessKind::kPlanarNonconstantDrift: return "Thm27NonconstantS";
    case WitnessKind::kPlanarZeroDrift: return "Thm27ZeroS";
    case WitnessKind::kPairwiseZeroP: return "Thm31P0";
    case WitnessKind::kPairwiseNonconstantP: return "Thm31PNonconstant";
    case WitnessKind::kPairwiseShiftedNonconstantQ: return "Thm31C1Nonzero_NonconstQ";
    case WitnessKind::kPairwiseShiftedConstantQ: return "Thm31C1Nonzero_ConstQ";
    case WitnessKind::kPairwiseUnshiftedUnivariateQ: return "Thm31C1Zero_UnivariateQ";
  }
  return "?";
}

NonSimplicityWitness make_witness(const Derivation& d, WitnessKind kind,
                                  std::vector<MultiPoly> generators) {
  if (generators.empty()) throw InternalError("witness without generators");
  NonSimplicityWitness w{kind, {}, std::nullopt, false};
  long max_image_degree = 0;
  for (auto& g : generators) {
    if (g.is_constant())
      throw InternalError(to_string(kind) + ": generator " + to_string(g) +
                          " is constant, ideal is not proper and nonzero");
    w.generators.push_back(normalize_generator(g));
    max_image_degree = std::max(max_image_degree, d.apply(w.generators.back()).total_degree());
  }
  if (w.generators.size() == 1) {
    w.cofactor = darboux_cofactor(d, w.generators[0]);
    if (!w.cofactor)
      throw InternalError(to_string(kind) + ": ideal (" + to_string(w.generators[0]) +
                          ") is not D-stable");
  } else if (!multi_generator_stability(d, w.generators,
                                        static_cast<unsigned>(std::max(0L, max_image_degree)))) {
    throw InternalError(to_string(kind) + ": no stability certificate for the ideal");
  }
  w.checked = true;
  return w;
}

std::optional<NonSimplicityWitness> necessary_condition_witness(const Derivation& d) {
  const std::size_t n = d.nvars();

  // Linear dependence of p_1..p_n: kernel of the matrix whose columns are
  // the coefficient vectors of the p_i.
  std::map<Monomial, std::size_t, GrlexDescending> row_of;
  for (const auto& p : d.coeffs())
    for (const auto& [m, c] : p.terms()) row_of.try_emplace(m, row_of.size());
  RatMatrix a(row_of.size(), n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [m, c] : d.coeff(i).terms()) a(row_of[m], i) = c;
  if (auto kernel = kernel_basis(a); !kernel.empty()) {
    MultiPoly g(n);
    for (std::size_t i = 0; i < n; ++i) g += kernel[0][i] * MultiPoly::variable(n, i);
    return make_witness(d, WitnessKind::kLinearDependence, {g});
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = d.coeff(i);
    if (p.involves_only({i}) && !p.is_constant())
      return make_witness(d, WitnessKind::kUnivariateCoefficient, {p});
  }

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<MultiPoly> images;
    for (std::size_t j = 0; j < n; ++j)
      images.push_back(j == i ? MultiPoly(n) : MultiPoly::variable(n, j));
    if (substitute(d.coeff(i), images).is_zero())
      return make_witness(d, WitnessKind::kVanishingAtZero, {MultiPoly::variable(n, i)});
  }
  return std::nullopt;
}

NonSimplicityWitness planar_translation_witness(const Derivation& d, std::span<const Rat> c) {
  if (d.nvars() != 2) throw PreconditionError("planar witness needs two variables");
  if (c.size() != 2) throw AmbientMismatch("planar witness: c must have two entries");
  if (c[0] == 0 && c[1] == 0) throw PreconditionError("planar witness: c must be nonzero");
  if (!coefficients_invariant(d, c))
    throw PreconditionError("planar witness: coefficients are not invariant under c");

  const std::size_t k = c[0] != 0 ? 0 : 1;
  const std::size_t o = 1 - k;
  // In barred coordinates variable o is u and variable k is v.
  const MultiPoly r = reduce_by_invariant_direction(d.coeff(k), c, k);
  const MultiPoly s =
      c[k] * reduce_by_invariant_direction(d.coeff(o), c, k) - c[o] * r;
  const MultiPoly u = MultiPoly::variable(2, o), v = MultiPoly::variable(2, k);

  MultiPoly barred(2);
  WitnessKind kind;
  if (s.is_zero()) {
    barred = u;
    kind = WitnessKind::kPlanarZeroDrift;
  } else if (auto sc = s.as_constant()) {
    barred = v - antiderivative(r, o) * Rat(1 / *sc);
    kind = WitnessKind::kPlanarAntiderivative;
  } else {
    barred = s;
    kind = WitnessKind::kPlanarNonconstantDrift;
  }
  return make_witness(d, kind, {substitute(barred, barred_coordinates(c, k))});
}

PairwiseWitnessResult pairwise_translation_witness(const PairwiseForm& form,
                                                   std::span<const Rat> c) {
  const std::size_t n = form.n;
  if (n < 2) throw PreconditionError("pairwise witness needs at least two variables");
  if (c.size() != n) throw AmbientMismatch("pairwise witness: c has wrong length");
  if (std::all_of(c.begin(), c.end(), [](const Rat& v) { return v == 0; }))
    throw PreconditionError("pairwise witness: c must be nonzero");
  const Derivation d = to_derivation(form);

  const auto e = form.p.as_constant();
  const bool p_unit = e && *e != 0;
  if (p_unit && c[0] == 0) {
    bool all_involve = true;
    for (std::size_t i = 1; i < n; ++i) all_involve = all_involve && form.q[i - 1].involves(i);
    if (all_involve) return {std::nullopt, "invariance forces c = 0"};
  }

  if (translate(form.p, c) != form.p)
    throw PreconditionError("pairwise witness: p is not invariant under c");
  for (const auto& q : form.q)
    if (translate(q, c) != q)
      throw PreconditionError("pairwise witness: q_i(x1 + c1, x_i + c_i) != q_i");

  const MultiPoly x1 = MultiPoly::variable(n, 0);
  if (form.p.is_zero())
    return {make_witness(d, WitnessKind::kPairwiseZeroP, {x1}), {}};
  if (!p_unit)
    return {make_witness(d, WitnessKind::kPairwiseNonconstantP, {form.p}), {}};

  if (c[0] != 0) {
    // xbar_1 = x1, xbar_i = c1 x_i - c_i x1; each q_i becomes a polynomial
    // in xbar_i alone and D(xbar_i) = c1 q_i(xbar_i) - e c_i.
    const auto back = barred_coordinates(c, 0);
    for (std::size_t i = 1; i < n; ++i) {
      MultiPoly qbar = reduce_by_invariant_direction(form.q[i - 1], c, 0);
      if (!qbar.involves_only({i}))
        throw InternalError("pairwise witness: rewritten q_i involves other coordinates");
      if (!qbar.is_constant()) {
        MultiPoly g = c[0] * qbar - MultiPoly::constant(n, *e * c[i]);
        return {make_witness(d, WitnessKind::kPairwiseShiftedNonconstantQ,
                             {substitute(g, back)}),
                {}};
      }
    }
    Rat q2 = reduce_by_invariant_direction(form.q[0], c, 0).constant_term();
    MultiPoly g = (c[0] * q2 - *e * c[1]) * MultiPoly::variable(n, 0) -
                  *e * MultiPoly::variable(n, 1);
    return {make_witness(d, WitnessKind::kPairwiseShiftedConstantQ, {substitute(g, back)}), {}};
  }

  for (std::size_t i = 1; i < n; ++i) {
    const auto& q = form.q[i - 1];
    if (q.involves(i)) continue;
    MultiPoly g = *e * MultiPoly::variable(n, i) - antiderivative(q, 0);
    return {make_witness(d, WitnessKind::kPairwiseUnshiftedUnivariateQ, {g}), {}};
  }
  throw InternalError("pairwise witness: unreachable case");
}

ShamsuddinDecision shamsuddin_simplicity(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars() != b.nvars()) throw AmbientMismatch("shamsuddin: a and b live in different rings");
  if (a.nvars() == 0 || !a.involves_only({0}) || !b.involves_only({0}))
    throw PreconditionError("shamsuddin: a and b must be polynomials in x1 only");
  const std::size_t n = a.nvars();

  auto verified = [&](MultiPoly y) {
    if (partial(y, 0) != a * y + b) throw InternalError("shamsuddin: solution fails y' = a y + b");
    return ShamsuddinDecision{false, std::move(y)};
  };

  if (a.is_zero()) return verified(antiderivative(b, 0));
  if (b.is_zero()) return verified(MultiPoly(n));

  const long deg_y = b.total_degree() - a.total_degree();
  if (deg_y < 0) return {true, std::nullopt};

  auto ac = univariate_coefficients(a, 0);
  auto bc = univariate_coefficients(b, 0);
  // Unknowns y_0..y_deg; equation for x1^t: (t+1) y_{t+1} - sum_s a_s y_{t-s} = b_t.
  const std::size_t unknowns = static_cast<std::size_t>(deg_y) + 1;
  const std::size_t eqs = std::max(bc.size(), unknowns + ac.size() - 1);
  RatMatrix m(eqs, unknowns);
  RatVector rhs(eqs, Rat(0));
  for (std::size_t t = 0; t < eqs; ++t) {
    if (t + 1 < unknowns) m(t, t + 1) += Rat(static_cast<long>(t + 1));
    for (std::size_t s = 0; s < ac.size() && s <= t; ++s)
      if (t - s < unknowns) m(t, t - s) -= ac[s];
    if (t < bc.size()) rhs[t] = bc[t];
  }
  auto sol = solve(m, rhs);
  if (!sol) return {true, std::nullopt};
  return verified(from_univariate(*sol, n, 0));
}

bool multi_generator_stability(const Derivation& d, std::span<const MultiPoly> gens,
                               unsigned cofactor_degree_bound) {
  if (gens.empty()) throw PreconditionError("multi_generator_stability: no generators");
  const std::size_t n = d.nvars();
  for (const auto& g : gens) {
    if (g.nvars() != n) throw AmbientMismatch("multi_generator_stability: ring mismatch");
    if (g.is_zero()) throw PreconditionError("multi_generator_stability: zero generator");
  }
  const auto monos = monomials_up_to(n, cofactor_degree_bound);
  std::vector<MultiPoly> columns;
  for (const auto& g : gens)
    for (const auto& m : monos) columns.push_back(MultiPoly::term(m, 1) * g);

  for (const auto& g : gens) {
    MultiPoly target = d.apply(g);
    std::map<Monomial, std::size_t, GrlexDescending> row_of;
    for (const auto& col : columns)
      for (const auto& [m, c] : col.terms()) row_of.try_emplace(m, 0);
    for (const auto& [m, c] : target.terms()) row_of.try_emplace(m, 0);
    std::size_t r = 0;
    for (auto& [m, idx] : row_of) idx = r++;
    RatMatrix a(row_of.size(), columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
      for (const auto& [m, v] : columns[c].terms()) a(row_of[m], c) = v;
    RatVector rhs(row_of.size(), Rat(0));
    for (const auto& [m, v] : target.terms()) rhs[row_of[m]] = v;
    if (!solve(a, rhs)) return false;
  }
  return true;
}

WitnessSearch find_witness(const Derivation& d, const std::optional<RatVector>& c) {
  WitnessSearch out;
  std::optional<RatVector> shift = c;
  if (shift) {
    if (shift->size() != d.nvars()) throw AmbientMismatch("witness: c has wrong length");
    if (std::all_of(shift->begin(), shift->end(), [](const Rat& v) { return v == 0; }))
      throw PreconditionError("witness: c must be nonzero");
  } else if (auto basis = invariant_translations(d); !basis.empty()) {
    shift = basis.front();
  }

  if (shift) {
    out.translation = shift;
    if (d.nvars() >= 2) {
      if (auto form = recognize_pairwise(d)) {
        auto r = pairwise_translation_witness(*form, *shift);
        if (r.witness) {
          out.witness = std::move(r.witness);
          return out;
        }
        out.diagnostic = r.diagnostic;
      }
    }
    if (d.nvars() == 2) {
      out.witness = planar_translation_witness(d, *shift);
      return out;
    }
  }

  out.witness = necessary_condition_witness(d);
  if (!out.witness && out.diagnostic.empty()) out.diagnostic = "inconclusive";
  return out;
}

}  // namespace deristab
