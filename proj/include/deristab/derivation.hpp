#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deristab/poly.hpp"

namespace deristab {

class PolyMap;

/// D = sum_i p_i * d/dx_i, stored as the coefficient vector (p_1, ..., p_n).
class Derivation {
 public:
  explicit Derivation(std::vector<MultiPoly> coeffs);
  static Derivation zero(std::size_t n);
  /// One polynomial string per coefficient.
  static Derivation parse(std::span<const std::string> coeffs, std::size_t n);

  std::size_t nvars() const { return coeffs_.size(); }
  const std::vector<MultiPoly>& coeffs() const { return coeffs_; }
  const MultiPoly& coeff(std::size_t i) const { return coeffs_.at(i); }

  /// D(f) = sum_i p_i * df/dx_i.
  MultiPoly apply(const MultiPoly& f) const;
  MultiPoly operator()(const MultiPoly& f) const { return apply(f); }

  bool operator==(const Derivation&) const = default;

 private:
  std::vector<MultiPoly> coeffs_;
};

std::vector<std::string> to_strings(const Derivation& d);

/// D = d/dx1 + sum_{i>=2} (a_i(x1) x_i + b_i(x1)) d/dx_i. The vectors are
/// indexed from 0 for i = 2.
struct ShamsuddinForm {
  std::size_t n = 0;
  std::vector<MultiPoly> a;
  std::vector<MultiPoly> b;
};

/// D = p(x1) d/dx1 + sum_{i>=2} q_i(x1, x_i) d/dx_i.
struct PairwiseForm {
  std::size_t n = 0;
  MultiPoly p;
  std::vector<MultiPoly> q;  // q[0] is q_2
};

std::optional<ShamsuddinForm> recognize_shamsuddin(const Derivation& d);
Derivation to_derivation(const ShamsuddinForm& f);

std::optional<PairwiseForm> recognize_pairwise(const Derivation& d);
Derivation to_derivation(const PairwiseForm& f);

/// (g) is D-stable iff g divides D(g). Requires g != 0.
bool principal_ideal_stable(const Derivation& d, const MultiPoly& g);
/// The cofactor L with D(g) = L*g, when it exists.
std::optional<MultiPoly> darboux_cofactor(const Derivation& d, const MultiPoly& g);

/// rho^{-1} o D o rho, computed coefficientwise as rho_inv applied to
/// D(rho(x_i)). The pair is verified to be mutually inverse first.
Derivation conjugate(const Derivation& d, const PolyMap& rho, const PolyMap& rho_inv);

}  // namespace deristab
