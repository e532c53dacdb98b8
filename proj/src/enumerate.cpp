#include "deristab/enumerate.hpp"

#include <array>
#include <algorithm>
#include <exception>
#include <limits>

#include <omp.h>

#include "deristab/isotropy.hpp"

namespace deristab {

namespace {

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;
constexpr int kPoints = 3;

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= kPrime ? s - kPrime : s;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(p & kPrime) + static_cast<std::uint64_t>(p >> 61);
  return r >= kPrime ? r - kPrime : r;
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul_mod(r, a);
    a = mul_mod(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t int_mod(long v) {
  return v >= 0 ? static_cast<std::uint64_t>(v) % kPrime
                : (kPrime - static_cast<std::uint64_t>(-v) % kPrime) % kPrime;
}

std::optional<std::uint64_t> rat_mod(const Rat& r) {
  std::uint64_t num = mpz_fdiv_ui(r.get_num_mpz_t(), kPrime);
  std::uint64_t den = mpz_fdiv_ui(r.get_den_mpz_t(), kPrime);
  if (den == 0) return std::nullopt;
  return mul_mod(num, pow_mod(den, kPrime - 2));
}

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct ModPoly {
  std::vector<std::pair<std::vector<std::uint32_t>, std::uint64_t>> terms;

  std::uint64_t eval(std::span<const std::uint64_t> x) const {
    std::uint64_t s = 0;
    for (const auto& [e, c] : terms) {
      std::uint64_t t = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i]) t = mul_mod(t, pow_mod(x[i], e[i]));
      s = add_mod(s, t);
    }
    return s;
  }
};

// Immutable data shared by all workers.
struct Plan {
  const Derivation& d;
  EnumerationBounds bounds;
  std::size_t n;
  std::vector<Monomial> monos;
  std::uint64_t radix;
  std::uint64_t count;  // candidates per component
  // eqs_at[t]: equations whose inputs are all assigned once component t is.
  std::vector<std::vector<std::size_t>> eqs_at;

  bool screen = false;
  // Per point: monomial values, per-variable derivative values, p_i(point).
  std::array<std::vector<std::uint64_t>, kPoints> mono_val;
  std::array<std::vector<std::vector<std::uint64_t>>, kPoints> dmono_val;
  std::array<std::vector<std::uint64_t>, kPoints> coeff_at;
  std::vector<ModPoly> coeff_mod;

  Plan(const Derivation& der, EnumerationBounds b, bool use_screen) : d(der), bounds(b) {
    n = d.nvars();
    monos = monomials_up_to(n, bounds.degree);
    radix = 2 * std::uint64_t{bounds.coeff} + 1;
    count = 1;
    for (std::size_t i = 0; i < monos.size(); ++i) {
      if (count > std::numeric_limits<std::uint64_t>::max() / radix)
        throw PreconditionError("enumeration: search space too large");
      count *= radix;
    }
    eqs_at.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t ready = j;
      for (std::size_t i = 0; i < n; ++i)
        if (d.coeff(j).involves(i)) ready = std::max(ready, i);
      eqs_at[ready].push_back(j);
    }
    if (use_screen) setup_screen();
  }

  void setup_screen() {
    for (const auto& p : d.coeffs()) {
      ModPoly mp;
      for (const auto& [m, c] : p.terms()) {
        auto v = rat_mod(c);
        if (!v) return;  // denominator divisible by the prime: exact checks only
        mp.terms.emplace_back(m.exponents(), *v);
      }
      coeff_mod.push_back(std::move(mp));
    }
    std::uint64_t state = 0x5eed;
    for (int k = 0; k < kPoints; ++k) {
      std::vector<std::uint64_t> pt(n);
      for (auto& x : pt) x = splitmix(state) % kPrime;
      auto& mv = mono_val[k];
      auto& dv = dmono_val[k];
      mv.assign(monos.size(), 0);
      dv.assign(n, std::vector<std::uint64_t>(monos.size(), 0));
      for (std::size_t a = 0; a < monos.size(); ++a) {
        std::uint64_t v = 1;
        for (std::size_t i = 0; i < n; ++i) v = mul_mod(v, pow_mod(pt[i], monos[a][i]));
        mv[a] = v;
        for (std::size_t i = 0; i < n; ++i) {
          if (monos[a][i] == 0) continue;
          std::uint64_t dvv = monos[a][i];
          for (std::size_t l = 0; l < n; ++l)
            dvv = mul_mod(dvv, pow_mod(pt[l], monos[a][l] - (l == i ? 1 : 0)));
          dv[i][a] = dvv;
        }
      }
      coeff_at[k].resize(n);
      for (std::size_t i = 0; i < n; ++i) coeff_at[k][i] = coeff_mod[i].eval(pt);
    }
    screen = true;
  }
};

// Mutable per-worker search state.
class Searcher {
 public:
  explicit Searcher(const Plan& plan)
      : plan_(plan),
        digits_(plan.monos.size()),
        comps_(plan.n, MultiPoly(plan.n)),
        values_(plan.n, std::vector<std::uint64_t>(kPoints * (plan.n + 1))) {}

  void run_from(std::uint64_t first, std::vector<PolyMap>& out) {
    if (assign(0, first)) descend(1, out);
  }

 private:
  void descend(std::size_t level, std::vector<PolyMap>& out) {
    if (level == plan_.n) {
      finish(out);
      return;
    }
    for (std::uint64_t idx = 0; idx < plan_.count; ++idx)
      if (assign(level, idx)) descend(level + 1, out);
  }

  // Assigns candidate `idx` to component `level` and tests every equation
  // that became decidable. Returns false on rejection.
  bool assign(std::size_t level, std::uint64_t idx) {
    for (std::size_t a = 0; a < digits_.size(); ++a) {
      digits_[a] = static_cast<long>(idx % plan_.radix) - static_cast<long>(plan_.bounds.coeff);
      idx /= plan_.radix;
    }
    if (plan_.screen) {
      fill_values(level);
      for (std::size_t j : plan_.eqs_at[level])
        if (!screen_equation(j)) return false;
    }
    MultiPoly p(plan_.n);
    for (std::size_t a = 0; a < digits_.size(); ++a)
      if (digits_[a]) p.add_term(plan_.monos[a], Rat(digits_[a]));
    comps_[level] = std::move(p);
    for (std::size_t j : plan_.eqs_at[level])
      if (plan_.d.apply(comps_[j]) != substitute(plan_.d.coeff(j), comps_)) return false;
    return true;
  }

  void fill_values(std::size_t level) {
    auto& v = values_[level];
    const std::size_t n = plan_.n;
    for (int k = 0; k < kPoints; ++k) {
      std::uint64_t* row = v.data() + k * (n + 1);
      std::fill(row, row + n + 1, 0);
      for (std::size_t a = 0; a < digits_.size(); ++a) {
        if (!digits_[a]) continue;
        std::uint64_t c = int_mod(digits_[a]);
        row[0] = add_mod(row[0], mul_mod(c, plan_.mono_val[k][a]));
        for (std::size_t i = 0; i < n; ++i)
          if (plan_.dmono_val[k][i][a]) row[i + 1] = add_mod(row[i + 1], mul_mod(c, plan_.dmono_val[k][i][a]));
      }
    }
  }

  bool screen_equation(std::size_t j) const {
    const std::size_t n = plan_.n;
    std::vector<std::uint64_t> image(n);
    for (int k = 0; k < kPoints; ++k) {
      const std::uint64_t* fj = values_[j].data() + k * (n + 1);
      std::uint64_t lhs = 0;
      for (std::size_t i = 0; i < n; ++i) lhs = add_mod(lhs, mul_mod(plan_.coeff_at[k][i], fj[i + 1]));
      for (std::size_t i = 0; i < n; ++i)
        image[i] = plan_.d.coeff(j).involves(i) ? values_[i][k * (n + 1)] : 0;
      if (lhs != plan_.coeff_mod[j].eval(image)) return false;
    }
    return true;
  }

  void finish(std::vector<PolyMap>& out) {
    PolyMap f(comps_);
    auto inv = invert_bounded_degree(f, plan_.bounds.degree);
    if (inv && in_enumeration_box(*inv, plan_.bounds)) out.push_back(std::move(f));
  }

  const Plan& plan_;
  std::vector<long> digits_;
  std::vector<MultiPoly> comps_;
  std::vector<std::vector<std::uint64_t>> values_;
};

void sort_maps(std::vector<PolyMap>& maps) {
  std::sort(maps.begin(), maps.end(),
            [](const PolyMap& a, const PolyMap& b) { return canonical_less(a, b); });
}

}  // namespace

void check_enumeration_guard(std::size_t n, EnumerationBounds bounds, EnumerationGuard guard) {
  if (n == 0) throw PreconditionError("enumeration: empty ring");
  if (n > guard.max_vars || bounds.degree > guard.max_degree || bounds.coeff > guard.max_coeff)
    throw PreconditionError("enumeration guard: need n <= " + std::to_string(guard.max_vars) +
                            ", degree <= " + std::to_string(guard.max_degree) +
                            ", coeff <= " + std::to_string(guard.max_coeff));
}

bool in_enumeration_box(const PolyMap& f, EnumerationBounds bounds) {
  for (const auto& p : f.components()) {
    if (p.total_degree() > static_cast<long>(bounds.degree)) return false;
    for (const auto& [m, c] : p.terms())
      if (c.get_den() != 1 || abs(c) > bounds.coeff) return false;
  }
  return true;
}

std::vector<PolyMap> bounded_isotropy_enumeration(const Derivation& d, EnumerationBounds bounds,
                                                  EnumerationGuard guard) {
  check_enumeration_guard(d.nvars(), bounds, guard);
  const Plan plan(d, bounds, true);
  std::vector<PolyMap> result;
  std::exception_ptr failure;
  const auto count = static_cast<std::int64_t>(plan.count);

#pragma omp parallel
  {
    std::vector<PolyMap> local;
    Searcher searcher(plan);
#pragma omp for schedule(dynamic, 64) nowait
    for (std::int64_t idx = 0; idx < count; ++idx) {
      try {
        searcher.run_from(static_cast<std::uint64_t>(idx), local);
      } catch (...) {
#pragma omp critical(deristab_enum_error)
        if (!failure) failure = std::current_exception();
      }
    }
#pragma omp critical(deristab_enum_merge)
    result.insert(result.end(), std::make_move_iterator(local.begin()),
                  std::make_move_iterator(local.end()));
  }
  if (failure) std::rethrow_exception(failure);
  sort_maps(result);
  return result;
}

std::vector<PolyMap> bounded_isotropy_enumeration_reference(const Derivation& d,
                                                            EnumerationBounds bounds,
                                                            EnumerationGuard guard) {
  check_enumeration_guard(d.nvars(), bounds, guard);
  const Plan plan(d, bounds, false);
  std::vector<PolyMap> result;
  Searcher searcher(plan);
  for (std::uint64_t idx = 0; idx < plan.count; ++idx) searcher.run_from(idx, result);
  sort_maps(result);
  return result;
}

}  // namespace deristab
