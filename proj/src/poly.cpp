#include "deristab/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace deristab {

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::invalid_argument(what + " at position " + std::to_string(position)),
      position_(position) {}

std::string to_string(const Rat& r) { return r.get_str(); }

Rat parse_rat(std::string_view text) {
  auto p = parse(text, 0);
  auto c = p.as_constant();
  if (!c) throw ParseError("expected a rational constant", 0);
  return *c;
}

bool is_canonical(const Rat& r) {
  if (sgn(r.get_den()) <= 0) return false;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return g == 1 || (r.get_num() == 0 && r.get_den() == 1);
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(std::size_t n, std::size_t i) {
  Monomial m(n);
  m.exps_.at(i) = 1;
  return m;
}

std::uint64_t Monomial::degree() const {
  return std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
  return r;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial r(other);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= exps_[i];
  return r;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
  auto da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

bool GrlexDescending::operator()(const Monomial& a, const Monomial& b) const {
  return grlex_compare(a, b) > 0;
}

// --------------------------------------------------------------- MultiPoly

MultiPoly MultiPoly::constant(std::size_t n, const Rat& c) {
  MultiPoly p(n);
  p.add_term(Monomial(n), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t n, std::size_t i) {
  if (i >= n) throw PreconditionError("variable index out of range");
  MultiPoly p(n);
  p.add_term(Monomial::variable(n, i), 1);
  return p;
}

MultiPoly MultiPoly::term(const Monomial& m, const Rat& c) {
  MultiPoly p(m.size());
  p.add_term(m, c);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
}

std::optional<Rat> MultiPoly::as_constant() const {
  if (!is_constant()) return std::nullopt;
  return constant_term();
}

Rat MultiPoly::constant_term() const { return coeff(Monomial(n_)); }

Rat MultiPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rat(0) : it->second;
}

long MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<long>(terms_.begin()->first.degree());
}

std::uint32_t MultiPoly::degree_in(std::size_t i) const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[i]);
  return d;
}

bool MultiPoly::involves_only(std::span<const std::size_t> allowed) const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (std::find(allowed.begin(), allowed.end(), i) != allowed.end()) continue;
    if (involves(i)) return false;
  }
  return true;
}

const std::pair<const Monomial, Rat>& MultiPoly::leading_term() const {
  if (terms_.empty()) throw PreconditionError("leading term of zero polynomial");
  return *terms_.begin();
}

void MultiPoly::add_term(const Monomial& m, const Rat& c) {
  if (m.size() != n_) throw AmbientMismatch("monomial length differs from ring size");
  // GMP results are canonical; a caller-built Rat such as Rat(2, 4) may not be.
  if (c.get_den() != 1) {
    Rat reduced = c;
    reduced.canonicalize();
    accumulate(m, reduced);
  } else {
    accumulate(m, c);
  }
}

void MultiPoly::accumulate(const Monomial& m, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void MultiPoly::check_same_ring(const MultiPoly& other) const {
  if (n_ != other.n_)
    throw AmbientMismatch("polynomials in " + std::to_string(n_) + " and " +
                          std::to_string(other.n_) + " variables");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  check_same_ring(other);
  for (const auto& [m, c] : other.terms_) accumulate(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  check_same_ring(other);
  for (const auto& [m, c] : other.terms_) accumulate(m, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rat& scalar) {
  Rat c = scalar;
  c.canonicalize();
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_same_ring(b);
  MultiPoly r(a.n_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.accumulate(ma * mb, ca * cb);
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(*this);
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly result = constant(n_, 1);
  MultiPoly base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

bool canonical_less(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars() != b.nvars()) return a.nvars() < b.nvars();
  auto ia = a.terms().begin(), ib = b.terms().begin();
  for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
    if (int c = grlex_compare(ia->first, ib->first); c != 0) return c < 0;
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return ia == a.terms().end() && ib != b.terms().end();
}

// ------------------------------------------------------------------ parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t n, std::optional<std::size_t> w_alias)
      : text_(text), n_(n), w_alias_(w_alias) {}

  MultiPoly run() {
    MultiPoly result(n_);
    skip_ws();
    bool negate = false;
    if (peek() == '-') {
      negate = true;
      ++pos_;
    }
    add_term(result, negate);
    for (;;) {
      skip_ws();
      if (at_end()) break;
      char c = peek();
      if (c != '+' && c != '-') fail("expected '+' or '-'");
      ++pos_;
      add_term(result, c == '-');
    }
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  mpz_class integer() {
    skip_ws();
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  std::uint32_t small_integer() {
    std::size_t start = pos_;
    mpz_class v = integer();
    if (!v.fits_uint_p() || v > 1'000'000) {
      pos_ = start;
      fail("integer too large");
    }
    return static_cast<std::uint32_t>(v.get_ui());
  }

  void add_term(MultiPoly& out, bool negate) {
    skip_ws();
    Rat coeff = 1;
    Monomial mono(n_);
    bool have_factor = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      mpz_class num = integer();
      mpz_class den = 1;
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        std::size_t at = pos_;
        den = integer();
        if (den == 0) {
          pos_ = at;
          fail("zero denominator");
        }
      }
      coeff = Rat(num, den);
      coeff.canonicalize();
      skip_ws();
      if (peek() != '*') {
        if (negate) coeff = -coeff;
        out.add_term(mono, coeff);
        return;
      }
      ++pos_;
    }
    for (;;) {
      varpow(mono);
      have_factor = true;
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
    }
    (void)have_factor;
    if (negate) coeff = -coeff;
    out.add_term(mono, coeff);
  }

  void varpow(Monomial& mono) {
    skip_ws();
    std::size_t at = pos_;
    std::size_t index = 0;
    if (peek() == 'x') {
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected variable index");
      auto i = small_integer();
      if (i == 0 || i > n_) {
        pos_ = at;
        fail("variable x" + std::to_string(i) + " out of range for " + std::to_string(n_) +
             " variables");
      }
      index = i - 1;
    } else if (peek() == 'w' && w_alias_) {
      ++pos_;
      index = *w_alias_;
    } else {
      fail("expected variable");
    }
    std::uint32_t e = 1;
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      e = small_integer();
    }
    mono[index] += e;
  }

  std::string_view text_;
  std::size_t n_;
  std::optional<std::size_t> w_alias_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse(std::string_view text, std::size_t n, std::optional<std::size_t> w_alias) {
  if (w_alias && *w_alias >= n) throw PreconditionError("w alias out of range");
  return Parser(text, n, w_alias).run();
}

std::string to_string(const MultiPoly& p, std::span<const std::string> var_names) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    bool negative = c < 0;
    if (first)
      out << (negative ? "-" : "");
    else
      out << (negative ? " - " : " + ");
    first = false;
    Rat mag = abs(c);
    bool is_const = m.degree() == 0;
    if (is_const) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << '*';
    bool first_var = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!first_var) out << '*';
      first_var = false;
      if (i < var_names.size())
        out << var_names[i];
      else
        out << 'x' << (i + 1);
      if (m[i] > 1) out << '^' << m[i];
    }
  }
  return out.str();
}

// -------------------------------------------------------------- operations

MultiPoly partial(const MultiPoly& p, std::size_t i) {
  if (i >= p.nvars()) throw PreconditionError("partial: variable index out of range");
  MultiPoly r(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    if (m[i] == 0) continue;
    Monomial d(m);
    d[i] -= 1;
    r.add_term(d, c * m[i]);
  }
  return r;
}

MultiPoly substitute(const MultiPoly& p, std::span<const MultiPoly> images) {
  if (images.size() != p.nvars())
    throw AmbientMismatch("substitute: expected " + std::to_string(p.nvars()) + " images, got " +
                          std::to_string(images.size()));
  std::size_t m = images.empty() ? 0 : images[0].nvars();
  for (const auto& img : images)
    if (img.nvars() != m) throw AmbientMismatch("substitute: images live in different rings");

  // powers[i][e] = images[i]^e, built lazily
  std::vector<std::vector<MultiPoly>> powers(images.size());
  auto power = [&](std::size_t i, std::uint32_t e) -> const MultiPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(MultiPoly::constant(m, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
    return cache[e];
  };

  MultiPoly result(m);
  for (const auto& [mono, c] : p.terms()) {
    MultiPoly t = MultiPoly::constant(m, c);
    for (std::size_t i = 0; i < mono.size(); ++i)
      if (mono[i]) t = t * power(i, mono[i]);
    result += t;
  }
  return result;
}

MultiPoly translate(const MultiPoly& p, std::span<const Rat> c) {
  if (c.size() != p.nvars()) throw AmbientMismatch("translate: vector length mismatch");
  std::vector<MultiPoly> images;
  images.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    images.push_back(MultiPoly::variable(p.nvars(), i) + MultiPoly::constant(p.nvars(), c[i]));
  return substitute(p, images);
}

MultiPoly homogeneous_part(const MultiPoly& p, std::uint64_t m) {
  MultiPoly r(p.nvars());
  for (const auto& [mono, c] : p.terms())
    if (mono.degree() == m) r.add_term(mono, c);
  return r;
}

MultiPoly antiderivative(const MultiPoly& p, std::size_t i) {
  if (i >= p.nvars()) throw PreconditionError("antiderivative: variable index out of range");
  if (!p.involves_only({i}))
    throw PreconditionError("antiderivative: polynomial involves a variable other than x" +
                            std::to_string(i + 1));
  MultiPoly r(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    Monomial up(m);
    up[i] += 1;
    r.add_term(up, c / up[i]);
  }
  return r;
}

std::optional<MultiPoly> exact_divide(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars() != b.nvars()) throw AmbientMismatch("exact_divide: ring mismatch");
  if (b.is_zero()) throw PreconditionError("exact_divide: division by zero");
  const auto& [lm, lc] = b.leading_term();
  MultiPoly quotient(a.nvars());
  MultiPoly rem = a;
  while (!rem.is_zero()) {
    const auto& [rm, rc] = rem.leading_term();
    if (!lm.divides(rm)) return std::nullopt;
    auto q = MultiPoly::term(lm.quotient_of(rm), rc / lc);
    quotient += q;
    rem -= q * b;
  }
  return quotient;
}

Rat evaluate(const MultiPoly& p, std::span<const Rat> point) {
  if (point.size() != p.nvars()) throw AmbientMismatch("evaluate: point length mismatch");
  Rat sum = 0;
  for (const auto& [m, c] : p.terms()) {
    Rat t = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      mpq_class pw;
      mpz_pow_ui(pw.get_num_mpz_t(), point[i].get_num_mpz_t(), m[i]);
      mpz_pow_ui(pw.get_den_mpz_t(), point[i].get_den_mpz_t(), m[i]);
      t *= pw;
    }
    sum += t;
  }
  return sum;
}

MultiPoly embed(const MultiPoly& p, std::size_t m, std::span<const std::size_t> mapping) {
  if (mapping.size() != p.nvars()) throw AmbientMismatch("embed: mapping length mismatch");
  MultiPoly r(m);
  for (const auto& [mono, c] : p.terms()) {
    Monomial out(m);
    for (std::size_t i = 0; i < mono.size(); ++i) {
      if (mono[i] == 0) continue;
      if (mapping[i] >= m) throw PreconditionError("embed: target index out of range");
      out[mapping[i]] += mono[i];
    }
    r.add_term(out, c);
  }
  return r;
}

std::vector<Rat> univariate_coefficients(const MultiPoly& p, std::size_t i) {
  if (!p.involves_only({i}))
    throw PreconditionError("expected a polynomial in x" + std::to_string(i + 1) + " only");
  std::vector<Rat> out(p.is_zero() ? 0 : p.degree_in(i) + 1, Rat(0));
  for (const auto& [m, c] : p.terms()) out[m[i]] = c;
  return out;
}

MultiPoly from_univariate(std::span<const Rat> coeffs, std::size_t n, std::size_t i) {
  MultiPoly r(n);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    Monomial m(n);
    m[i] = static_cast<std::uint32_t>(k);
    r.add_term(m, coeffs[k]);
  }
  return r;
}

MultiPoly normalize_generator(const MultiPoly& p) {
  if (p.is_zero()) return p;
  mpz_class den_lcm = 1, num_gcd = 0;
  for (const auto& [m, c] : p.terms()) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
  }
  // content = gcd(numerators) / lcm(denominators)
  Rat scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (p.leading_term().second < 0) scale = -scale;
  return p * scale;
}

std::vector<Monomial> monomials_up_to(std::size_t n, unsigned d) {
  std::vector<Monomial> out;
  Monomial cur(n);
  // depth-first over exponent vectors with remaining degree budget
  auto rec = [&](auto&& self, std::size_t i, unsigned budget) -> void {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (unsigned e = 0; e <= budget; ++e) {
      cur[i] = e;
      self(self, i + 1, budget - e);
    }
    cur[i] = 0;
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(),
            [](const Monomial& a, const Monomial& b) { return grlex_compare(a, b) < 0; });
  return out;
}

}  // namespace deristab
