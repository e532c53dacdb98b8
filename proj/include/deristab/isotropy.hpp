#pragma once

// Automorphisms commuting with a derivation: the commutation test, the
// subspace of translations fixing every coefficient, the change to
// coordinates adapted to such a translation, shift classification, and the
// explicit isotropy group of D = d/dx1 + b(x1) d/dx2.

#include <optional>
#include <string>
#include <vector>

#include "deristab/automorphism.hpp"
#include "deristab/derivation.hpp"
#include "deristab/linalg.hpp"

namespace deristab {

/// rho D = D rho, tested componentwise:
///   sum_i p_i * d(rho_j)/dx_i == p_j(rho_1, ..., rho_n)  for every j.
/// Invertibility of rho is not checked here.
bool commutes(const PolyMap& rho, const Derivation& d);

/// Index of the first component equation that fails, if any.
std::optional<std::size_t> first_commutation_failure(const PolyMap& rho, const Derivation& d);

/// Basis of {c : p_j(x + c) = p_j(x) for all j}, obtained as the kernel of
/// sum_i c_i dp_j/dx_i = 0. Each basis vector is re-verified by translating.
std::vector<RatVector> invariant_translations(const Derivation& d);

/// True when translating every coefficient of d by c leaves it unchanged.
bool coefficients_invariant(const Derivation& d, std::span<const Rat> c);

/// Rewrites a c-invariant polynomial in the coordinates
///   xbar_j = c_k x_j - c_j x_k  (j != k),   xbar_k = x_k,
/// where variable j of the result stands for xbar_j. The result never
/// involves xbar_k. Throws PreconditionError if p is not c-invariant or
/// c_k == 0.
MultiPoly reduce_by_invariant_direction(const MultiPoly& p, std::span<const Rat> c,
                                        std::size_t k);
/// The default direction: smallest k with c_k != 0.
MultiPoly reduce_by_invariant_direction(const MultiPoly& p, std::span<const Rat> c);

/// Images of the barred variables in the original coordinates, i.e. the map
/// to substitute into a barred polynomial to get back to x.
std::vector<MultiPoly> barred_coordinates(std::span<const Rat> c, std::size_t k);

enum class ShiftClass {
  kTranslation,        // f and f - f(0) both commute, f = x + f(0)
  kNonTranslationFlag, // both commute, f is not a translation
  kShiftBreaks,        // f commutes, f - f(0) does not
};

std::string to_string(ShiftClass c);

struct ShiftClassification {
  ShiftClass outcome;
  RatVector shift;             // f(0)
  bool shifted_commutes;       // direct test on f - f(0)
  bool coefficients_fixed;     // p_j(x - f(0)) == p_j(x) for all j
  bool tests_agree;            // the two tests above agree
  bool verified_automorphism;  // an inverse was supplied and checked
};

/// Requires commutes(f, d). When `inverse` is supplied and verified, a
/// disagreement between the direct test and the coefficient-translation test
/// is a contradiction and raises InternalError.
ShiftClassification classify_shift(const PolyMap& f, const Derivation& d,
                                   const std::optional<PolyMap>& inverse = std::nullopt);

/// One element of the isotropy group of D = d/dx1 + b(x1) d/dx2. With
/// h = integral of b and w = x2 - h(x1), the element is
///   x1 -> x1 + p(w),   x2 -> h(x1 + p(w)) + c_tilde * w + c_bar,
/// i.e. (x1, w) -> (x1 + p(w), c_tilde * w + c_bar).
struct TriangularIsotropyParams {
  MultiPoly b;  // in x1, ring of 2 variables
  MultiPoly p;  // in w, ring of 1 variable
  Rat c_tilde;
  Rat c_bar;

  bool operator==(const TriangularIsotropyParams&) const = default;
};

PolyMap triangular_isotropy_map(const TriangularIsotropyParams& e);

enum class DecomposeStatus { kOk, kNotCommuting, kShapeMismatch };

struct TriangularDecomposition {
  DecomposeStatus status;
  std::optional<TriangularIsotropyParams> params;
  explicit operator bool() const { return params.has_value(); }
};

/// Recovers (p, c_tilde, c_bar) from a map commuting with d/dx1 + b d/dx2.
/// A commuting map that does not fit the shape is reported as
/// kShapeMismatch; if such a map is invertible the parametrization would be
/// incomplete, so callers treat that combination as a red flag.
TriangularDecomposition decompose_triangular_isotropy(const PolyMap& rho, const MultiPoly& b);

/// Inverse of triangular_isotropy_map(e): in (x1, w) coordinates,
/// w -> (w - c_bar)/c_tilde, then x1 -> x1 - p(w).
PolyMap invert_triangular_isotropy(const TriangularIsotropyParams& e);

/// d/dx1 + b(x1) d/dx2.
Derivation shear_derivation(const MultiPoly& b);

}  // namespace deristab
