#pragma once

// Sparse multivariate polynomials over Q.
//
// Variables are 0-based internally (x1 in text is index 0). Every polynomial
// carries its ambient variable count; binary operations refuse to mix rings.
// Terms are kept in a map ordered graded-lexicographically with
// x1 > x2 > ... > xn, largest monomial first, and zero coefficients are never
// stored, so structural equality is mathematical equality.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace deristab {

using Rat = mpq_class;

/// Thrown when operands live in polynomial rings of different sizes.
class AmbientMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an operation is called outside its domain.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a constructed certificate fails its own verification. Seeing
/// this means a bug (or a counterexample), never bad user input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

std::string to_string(const Rat& r);
Rat parse_rat(std::string_view text);
/// True when gcd(|num|, den) = 1 and den > 0.
bool is_canonical(const Rat& r);

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t n) : exps_(n, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

  static Monomial variable(std::size_t n, std::size_t i);

  std::size_t size() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }
  std::uint64_t degree() const;
  bool divides(const Monomial& other) const;

  Monomial operator*(const Monomial& other) const;
  /// Requires divides(other); returns other / *this.
  Monomial quotient_of(const Monomial& other) const;

  bool operator==(const Monomial&) const = default;

 private:
  std::vector<std::uint32_t> exps_;
};

/// Graded lex, x1 > x2 > ... ; `operator()` answers "a sorts before b",
/// i.e. a is the larger monomial.
struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const;
};
/// <0 if a < b in graded lex order.
int grlex_compare(const Monomial& a, const Monomial& b);

class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Rat, GrlexDescending>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t n) : n_(n) {}

  static MultiPoly constant(std::size_t n, const Rat& c);
  static MultiPoly variable(std::size_t n, std::size_t i);
  static MultiPoly term(const Monomial& m, const Rat& c);

  std::size_t nvars() const { return n_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::optional<Rat> as_constant() const;
  Rat constant_term() const;
  Rat coeff(const Monomial& m) const;

  /// Total degree; -1 for the zero polynomial.
  long total_degree() const;
  std::uint32_t degree_in(std::size_t i) const;
  bool involves(std::size_t i) const { return degree_in(i) > 0; }
  /// True when every variable outside `allowed` has degree 0.
  bool involves_only(std::span<const std::size_t> allowed) const;
  bool involves_only(std::initializer_list<std::size_t> allowed) const {
    return involves_only(std::span<const std::size_t>(allowed.begin(), allowed.size()));
  }

  /// Largest term in the canonical order. Requires a nonzero polynomial.
  const std::pair<const Monomial, Rat>& leading_term() const;

  /// Adds c*m in place, dropping the term if it cancels.
  void add_term(const Monomial& m, const Rat& c);

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const Rat& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rat& c) { return a *= c; }
  friend MultiPoly operator*(const Rat& c, MultiPoly a) { return a *= c; }
  MultiPoly operator-() const;

  bool operator==(const MultiPoly& other) const = default;

  MultiPoly pow(unsigned k) const;

 private:
  void check_same_ring(const MultiPoly& other) const;
  void accumulate(const Monomial& m, const Rat& c);  // c already canonical

  std::size_t n_ = 0;
  TermMap terms_;
};

/// Total order used for deterministic sorting of results.
bool canonical_less(const MultiPoly& a, const MultiPoly& b);

/// Parses the grammar
///   poly := ['-'] term (('+'|'-') term)*
///   term := coeff ['*' factors] | factors
///   factors := varpow ('*' varpow)*
///   varpow := 'x' INT ['^' INT]
///   coeff := INT ['/' INT]
/// with insignificant whitespace. When `w_alias` is given, the bare token `w`
/// is accepted as a name for that variable index.
MultiPoly parse(std::string_view text, std::size_t n,
                std::optional<std::size_t> w_alias = std::nullopt);

/// Prints terms in descending canonical order: "-1/2*x1^2 + x2", "0".
/// `var_names` overrides the default x1..xn names.
std::string to_string(const MultiPoly& p,
                      std::span<const std::string> var_names = {});

MultiPoly partial(const MultiPoly& p, std::size_t i);

/// p(images[0], ..., images[n-1]). The result lives in the images' ring.
MultiPoly substitute(const MultiPoly& p, std::span<const MultiPoly> images);

/// p(x + c).
MultiPoly translate(const MultiPoly& p, std::span<const Rat> c);

/// Sum of the terms of total degree exactly m.
MultiPoly homogeneous_part(const MultiPoly& p, std::uint64_t m);

/// Formal antiderivative in variable i with zero constant of integration.
/// Requires p to involve no variable other than i.
MultiPoly antiderivative(const MultiPoly& p, std::size_t i);

/// Returns q with a == q*b, or nullopt if b does not divide a.
std::optional<MultiPoly> exact_divide(const MultiPoly& a, const MultiPoly& b);

Rat evaluate(const MultiPoly& p, std::span<const Rat> point);

/// Re-embeds a polynomial into a ring of size m, variable i going to
/// index `mapping[i]`.
MultiPoly embed(const MultiPoly& p, std::size_t m, std::span<const std::size_t> mapping);

/// Univariate coefficients in variable i, low degree first. Requires p to
/// involve only variable i.
std::vector<Rat> univariate_coefficients(const MultiPoly& p, std::size_t i);
MultiPoly from_univariate(std::span<const Rat> coeffs, std::size_t n, std::size_t i);

/// Scales p to a primitive integer polynomial with positive leading
/// coefficient. Zero stays zero.
MultiPoly normalize_generator(const MultiPoly& p);

/// Every exponent vector in n variables of total degree <= d, listed in
/// ascending graded lex order.
std::vector<Monomial> monomials_up_to(std::size_t n, unsigned d);

}  // namespace deristab
