#pragma once

// Constructive non-simplicity. Every witness returned here carries a proper
// nonzero D-stable ideal, and has been checked before it is handed out.

#include <optional>
#include <string>
#include <vector>

#include "deristab/derivation.hpp"
#include "deristab/linalg.hpp"

namespace deristab {

enum class WitnessKind {
  kLinearDependence,       // sum lambda_i x_i with sum lambda_i p_i = 0
  kUnivariateCoefficient,  // p_i in K[x_i] \ K
  kVanishingAtZero,        // p_i vanishes on x_i = 0
  kPlanarAntiderivative,   // invariant translation in the plane, constant drift
  kPlanarNonconstantDrift,
  kPlanarZeroDrift,
  kPairwiseZeroP,          // p(x1) = 0
  kPairwiseNonconstantP,
  kPairwiseShiftedNonconstantQ,  // c_1 != 0, some q_i nonconstant after rewriting
  kPairwiseShiftedConstantQ,     // c_1 != 0, every q_i constant after rewriting
  kPairwiseUnshiftedUnivariateQ, // c_1 = 0, some q_i free of x_i
};

/// Wire tag, e.g. "LinearDependence" or "Thm31C1Zero_UnivariateQ".
std::string to_string(WitnessKind k);

struct NonSimplicityWitness {
  WitnessKind rationale;
  std::vector<MultiPoly> generators;
  /// For a principal witness, the L with D(g) = L g.
  std::optional<MultiPoly> cofactor;
  bool checked = false;
};

/// Normalizes the generators (primitive integer, positive leading
/// coefficient), then checks that every generator is nonconstant and that
/// the ideal is D-stable. A failed check throws InternalError.
NonSimplicityWitness make_witness(const Derivation& d, WitnessKind kind,
                                  std::vector<MultiPoly> generators);

/// Tests three necessary conditions for simplicity in order (independent
/// coefficients; no p_i in K[x_i] \ K; no p_i vanishing on x_i = 0) and
/// returns the witness for the first that fails. nullopt is inconclusive.
std::optional<NonSimplicityWitness> necessary_condition_witness(const Derivation& d);

/// Two variables, coefficients invariant under a nonzero translation c.
/// With k the first index where c_k != 0 and o the other one, put
/// u = c_k x_o - c_o x_k and v = x_k. Then D(v) = r(u) and D(u) = s(u), and
/// the witness is v - H(u)/s (s constant, H' = r), s(u) (s nonconstant) or
/// u (s = 0).
NonSimplicityWitness planar_translation_witness(const Derivation& d, std::span<const Rat> c);

struct PairwiseWitnessResult {
  std::optional<NonSimplicityWitness> witness;
  /// Set when no witness is produced.
  std::string diagnostic;
};

/// D = p(x1) d/dx1 + sum q_i(x1, x_i) d/dx_i with q_i(x1 + c1, x_i + c_i) = q_i.
/// When p is a nonzero constant, c_1 = 0 and every q_i involves x_i, the
/// invariance forces c = 0; that case returns no witness and the diagnostic
/// "invariance forces c = 0". Otherwise a violated invariance throws.
PairwiseWitnessResult pairwise_translation_witness(const PairwiseForm& form,
                                                   std::span<const Rat> c);

struct ShamsuddinDecision {
  bool simple = false;
  /// A polynomial solution of y' = a y + b, present iff not simple.
  std::optional<MultiPoly> solution;
};

/// Simplicity of d/dx1 + (a(x1) x2 + b(x1)) d/dx2, decided by whether
/// y' = a y + b has a polynomial solution. a and b must share a ring and
/// involve only x1; the solution lives in that ring.
ShamsuddinDecision shamsuddin_simplicity(const MultiPoly& a, const MultiPoly& b);

/// Certificate search for D(I) in I, I = (gens): looks for cofactors of total
/// degree <= bound with D(g_j) = sum_k u_jk g_k. false only means no
/// certificate exists within the bound.
bool multi_generator_stability(const Derivation& d, std::span<const MultiPoly> gens,
                               unsigned cofactor_degree_bound);

struct WitnessSearch {
  std::optional<NonSimplicityWitness> witness;
  std::optional<RatVector> translation;  // the c that was used, if any
  std::string diagnostic;
};

/// Dispatcher used by the CLI: pick c (given, or the first invariant
/// translation basis vector), try the pairwise construction, then the planar
/// one, then the necessary-condition checks.
WitnessSearch find_witness(const Derivation& d, const std::optional<RatVector>& c);

}  // namespace deristab
