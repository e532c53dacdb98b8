#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deristab/linalg.hpp"
#include "deristab/poly.hpp"

namespace deristab {

/// A polynomial map f = (f_1, ..., f_n) : K^n -> K^n. As a ring
/// endomorphism it sends g to g(f).
class PolyMap {
 public:
  explicit PolyMap(std::vector<MultiPoly> components);
  static PolyMap identity(std::size_t n);
  static PolyMap translation(std::span<const Rat> c);
  static PolyMap parse(std::span<const std::string> components, std::size_t n);

  std::size_t nvars() const { return components_.size(); }
  const std::vector<MultiPoly>& components() const { return components_; }
  const MultiPoly& operator[](std::size_t i) const { return components_.at(i); }

  bool is_identity() const;
  bool operator==(const PolyMap&) const = default;

 private:
  std::vector<MultiPoly> components_;
};

std::vector<std::string> to_strings(const PolyMap& f);
/// "(x1 + 1, x2)".
std::string to_string(const PolyMap& f);
bool canonical_less(const PolyMap& a, const PolyMap& b);

/// Component i is f_i(g_1, ..., g_n).
PolyMap compose(const PolyMap& f, const PolyMap& g);

bool is_inverse_pair(const PolyMap& f, const PolyMap& h);

/// Forward and backward maps checked to be mutually inverse on construction.
class InversePair {
 public:
  InversePair(PolyMap forward, PolyMap backward);
  const PolyMap& forward() const { return forward_; }
  const PolyMap& backward() const { return backward_; }

 private:
  PolyMap forward_, backward_;
};

/// det (d f_j / d x_i) by cofactor expansion.
MultiPoly jacobian_det(const PolyMap& f);

RatVector constant_part(const PolyMap& f);
PolyMap subtract_constant(const PolyMap& f);

/// c when f = x + c.
std::optional<RatVector> is_translation(const PolyMap& f);

/// Affine inverse via an exact linear solve; nullopt when f is not affine or
/// its linear part is singular.
std::optional<PolyMap> invert_affine(const PolyMap& f);

/// Searches for an inverse whose components have total degree <= d by
/// solving h_i(f) = x_i linearly in the coefficients of h_i, then verifies
/// the candidate both ways.
std::optional<PolyMap> invert_bounded_degree(const PolyMap& f, unsigned d);

}  // namespace deristab
