#pragma once

// Bounded search for automorphisms commuting with a derivation.
//
// The search space is every map whose components have total degree
// <= bounds.degree and integer coefficients in [-bounds.coeff, bounds.coeff].
// A map is reported when it commutes with D and its inverse lies in the same
// space. Components are assigned in order x1, x2, ...; the equation for
// component j is tested as soon as every component it reads is assigned.
//
// bounded_isotropy_enumeration is the production kernel: candidates are
// screened by evaluating the commutation equations modulo 2^61 - 1 at fixed
// points, survivors are checked exactly, and the first component is split
// across OpenMP threads. bounded_isotropy_enumeration_reference is the
// serial exact-arithmetic version kept for cross-checking.

#include <cstdint>
#include <vector>

#include "deristab/automorphism.hpp"
#include "deristab/derivation.hpp"

namespace deristab {

struct EnumerationBounds {
  unsigned degree = 2;
  unsigned coeff = 2;
};

/// Feasibility guard: n, degree and coefficient bound are each capped.
struct EnumerationGuard {
  unsigned max_vars = 3;
  unsigned max_degree = 3;
  unsigned max_coeff = 3;

  static EnumerationGuard uniform(unsigned limit) { return {limit, limit, limit}; }
};

/// Throws PreconditionError when the request exceeds the guard.
void check_enumeration_guard(std::size_t n, EnumerationBounds bounds, EnumerationGuard guard);

std::vector<PolyMap> bounded_isotropy_enumeration(const Derivation& d, EnumerationBounds bounds,
                                                  EnumerationGuard guard = {});

std::vector<PolyMap> bounded_isotropy_enumeration_reference(const Derivation& d,
                                                            EnumerationBounds bounds,
                                                            EnumerationGuard guard = {});

/// Degree and coefficient membership in the search space.
bool in_enumeration_box(const PolyMap& f, EnumerationBounds bounds);

}  // namespace deristab
