#include "deristab/isotropy.hpp"

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace deristab {
namespace {

using testing::D;
using testing::F;
using testing::P;
using testing::R;

const std::vector<std::string> kIntro{"1 - x1*x2", "x1^3", "x2"};

bool in_span(const std::vector<RatVector>& basis, const RatVector& v) {
  RatMatrix a(v.size(), basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c)
    for (std::size_t r = 0; r < v.size(); ++r) a(r, c) = basis[c][r];
  return solve(a, v).has_value();
}

TEST(Commutes, Examples) {
  auto d = D(kIntro);
  for (int c = -3; c <= 3; ++c) {
    auto f = PolyMap({P("x1", 3), P("x2", 3), P("x3", 3) + MultiPoly::constant(3, c)});
    EXPECT_TRUE(commutes(f, d)) << c;
  }
  EXPECT_TRUE(commutes(PolyMap::identity(3), d));
  auto scaling = D({"x1", "x2"});
  EXPECT_FALSE(commutes(F({"x1 + 1", "x2"}), scaling));
  EXPECT_EQ(first_commutation_failure(F({"x1 + 1", "x2"}), scaling), 0u);
  EXPECT_THROW(commutes(PolyMap::identity(2), d), AmbientMismatch);
}

TEST(InvariantTranslations, Examples) {
  auto b1 = invariant_translations(D({"1"}));
  ASSERT_EQ(b1.size(), 1u);
  EXPECT_EQ(b1[0], R({1}));
  auto b3 = invariant_translations(D(kIntro));
  ASSERT_EQ(b3.size(), 1u);
  EXPECT_EQ(b3[0], R({0, 0, 1}));
  EXPECT_TRUE(invariant_translations(D({"x1"})).empty());
  EXPECT_EQ(invariant_translations(Derivation::zero(2)).size(), 2u);
}

TEST(Reduce, Examples) {
  auto c = R({1, 1});
  // x2 - x1 in barred coordinates is xbar2 (variable index 1).
  EXPECT_EQ(reduce_by_invariant_direction(P("x2 - x1", 2), c, 0), P("x2", 2));
  EXPECT_EQ(reduce_by_invariant_direction(P("5/3", 2), c), P("5/3", 2));
  EXPECT_EQ(reduce_by_invariant_direction(P("x2 - x1", 2).pow(3) + P("2", 2), c, 0),
            P("x2^3 + 2", 2));
}

TEST(Reduce, Errors) {
  EXPECT_THROW(reduce_by_invariant_direction(P("x1", 2), R({1, 1}), 0), PreconditionError);
  EXPECT_THROW(reduce_by_invariant_direction(P("x2", 2), R({1, 0}), 1), PreconditionError);
  EXPECT_THROW(reduce_by_invariant_direction(P("x2", 2), R({0, 0})), PreconditionError);
  EXPECT_THROW(reduce_by_invariant_direction(P("x2", 2), R({1}), 0), AmbientMismatch);
}

TEST(Classify, Examples) {
  auto d = D(kIntro);
  auto t = classify_shift(F({"x1", "x2", "x3 + 4"}), d);
  EXPECT_EQ(t.outcome, ShiftClass::kTranslation);
  EXPECT_EQ(t.shift, R({0, 0, 4}));
  EXPECT_TRUE(t.tests_agree);
  EXPECT_EQ(classify_shift(PolyMap::identity(3), d).outcome, ShiftClass::kTranslation);

  // (x1, 2 x2) commutes with d/dx1 on two variables; not a translation.
  auto flag = classify_shift(F({"x1", "2*x2"}), D({"1", "0"}), F({"x1", "1/2*x2"}));
  EXPECT_EQ(flag.outcome, ShiftClass::kNonTranslationFlag);
  EXPECT_TRUE(flag.verified_automorphism);
  EXPECT_EQ(to_string(flag.outcome), "nontranslation-flag");

  auto breaks = classify_shift(F({"x1 + 1", "x2 + x1"}), D({"1", "x1"}));
  EXPECT_EQ(breaks.outcome, ShiftClass::kShiftBreaks);
  EXPECT_FALSE(breaks.shifted_commutes);
  EXPECT_FALSE(breaks.coefficients_fixed);
  EXPECT_FALSE(breaks.verified_automorphism);

  EXPECT_THROW(classify_shift(F({"x1 + 1", "x2"}), D({"x1", "x2"})), PreconditionError);
}

TEST(Triangular, ElementExamples) {
  auto zero = MultiPoly(2);
  auto m1 = triangular_isotropy_map({zero, P("x1^2", 1), 1, 0});
  EXPECT_EQ(m1, F({"x1 + x2^2", "x2"}));
  EXPECT_TRUE(commutes(m1, D({"1", "0"})));

  auto id = triangular_isotropy_map({P("x1", 2), MultiPoly(1), 1, 0});
  EXPECT_TRUE(id.is_identity());

  // b = x1: h = x1^2/2, w = x2 - h; f = x1 + w^2, g = f^2/2 + 2w + 3.
  auto w = P("x2", 2) - P("1/2*x1^2", 2);
  auto f = P("x1", 2) + w * w;
  auto g = f * f * Rat(1, 2) + w * Rat(2) + P("3", 2);
  auto m3 = triangular_isotropy_map({P("x1", 2), P("x1^2", 1), 2, 3});
  EXPECT_EQ(m3, PolyMap({f, g}));
  EXPECT_TRUE(commutes(m3, D({"1", "x1"})));
  EXPECT_EQ(jacobian_det(m3), P("2", 2));

  EXPECT_THROW(triangular_isotropy_map({P("x1", 2), MultiPoly(1), 0, 0}), PreconditionError);
  EXPECT_THROW(triangular_isotropy_map({P("x2", 2), MultiPoly(1), 1, 0}), PreconditionError);
}

TEST(Triangular, DecomposeExamples) {
  auto b = P("x1", 2);
  auto id = decompose_triangular_isotropy(PolyMap::identity(2), b);
  ASSERT_TRUE(id);
  EXPECT_TRUE(id.params->p.is_zero());
  EXPECT_EQ(id.params->c_tilde, 1);
  EXPECT_EQ(id.params->c_bar, 0);

  TriangularIsotropyParams e{b, P("x1^2", 1), 2, 3};
  auto back = decompose_triangular_isotropy(triangular_isotropy_map(e), b);
  ASSERT_TRUE(back);
  EXPECT_EQ(*back.params, e);

  auto shift = decompose_triangular_isotropy(F({"x1 + 1", "x2"}), MultiPoly(2));
  ASSERT_TRUE(shift);
  EXPECT_EQ(shift.params->p, P("1", 1));
  EXPECT_EQ(shift.params->c_tilde, 1);
  EXPECT_EQ(shift.params->c_bar, 0);

  auto no = decompose_triangular_isotropy(F({"x2", "x1"}), b);
  EXPECT_FALSE(no);
  EXPECT_EQ(no.status, DecomposeStatus::kNotCommuting);
}

TEST(Triangular, InverseExamples) {
  auto idp = TriangularIsotropyParams{P("x1", 2), MultiPoly(1), 1, 0};
  EXPECT_TRUE(invert_triangular_isotropy(idp).is_identity());
  EXPECT_EQ(invert_triangular_isotropy({MultiPoly(2), P("x1^2", 1), 1, 0}),
            F({"x1 - x2^2", "x2"}));
  TriangularIsotropyParams e{P("x1", 2), P("x1^2", 1), 2, 3};
  EXPECT_TRUE(is_inverse_pair(triangular_isotropy_map(e), invert_triangular_isotropy(e)));
  EXPECT_THROW(invert_triangular_isotropy({P("x1", 2), MultiPoly(1), 0, 1}), PreconditionError);
}

// ------------------------------------------------------------- properties

class IsotropyProperties : public ::testing::TestWithParam<int> {};

Derivation translation_invariant_derivation(std::mt19937_64& rng) {
  // Coefficients built from x2 - x1 and x3 are invariant under (1, 1, 0).
  auto u = P("x2 - x1", 3);
  std::vector<MultiPoly> c;
  for (int i = 0; i < 3; ++i) {
    auto r = testing::random_poly(rng, 3, 2, 2, 3);
    // Substitute (x1, x2, x3) -> (u, x3, 1) to make r a polynomial in u, x3.
    c.push_back(substitute(r, std::vector{u, P("x3", 3), P("1", 3)}));
  }
  return Derivation(c);
}

TEST_P(IsotropyProperties, TranslationsSoundCompleteAndScaleInvariant) {
  std::mt19937_64 rng(GetParam());
  auto d = GetParam() % 2 ? translation_invariant_derivation(rng)
                          : testing::random_derivation(rng, 3, 2);
  auto basis = invariant_translations(d);
  for (const auto& c : basis) {
    EXPECT_TRUE(coefficients_invariant(d, c));
    RatVector twice, half;
    for (const auto& v : c) {
      twice.push_back(v * 2);
      half.push_back(v / 2);
    }
    EXPECT_TRUE(in_span(basis, twice));
    EXPECT_TRUE(in_span(basis, half));
  }
  if (GetParam() % 2) {
    EXPECT_TRUE(in_span(basis, R({1, 1, 0})));
  }
  // Every small integer vector: invariant exactly when it lies in the span.
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      for (int e = -2; e <= 2; ++e) {
        auto v = R({a, b, e});
        EXPECT_EQ(coefficients_invariant(d, v), basis.empty() ? (a == 0 && b == 0 && e == 0)
                                                              : in_span(basis, v));
      }
}

TEST_P(IsotropyProperties, ReduceRoundTrip) {
  std::mt19937_64 rng(100 + GetParam());
  std::uniform_int_distribution<int> coef(-3, 3);
  RatVector c(3);
  do {
    for (auto& v : c) v = coef(rng);
  } while (c[0] == 0 && c[1] == 0 && c[2] == 0);
  std::size_t k = 0;
  while (c[k] == 0) ++k;
  // Random polynomial in the barred variables, pushed back to x.
  auto bar = barred_coordinates(c, k);
  std::vector<MultiPoly> args = bar;
  args[k] = MultiPoly::constant(3, 0);
  auto r = testing::random_poly(rng, 3, 3);
  auto p = substitute(r, args);
  auto red = reduce_by_invariant_direction(p, c, k);
  EXPECT_FALSE(red.involves(k));
  EXPECT_EQ(substitute(red, bar), p);
}

TriangularIsotropyParams random_params(std::mt19937_64& rng, const MultiPoly& b,
                                       unsigned pdeg) {
  std::uniform_int_distribution<int> v(-3, 3);
  Rat ct(0);
  while (ct == 0) ct = Rat(v(rng), 1 + (v(rng) + 3) % 2);
  ct.canonicalize();
  Rat cb(v(rng), 2);
  cb.canonicalize();
  return {b, testing::random_univariate(rng, 1, 0, pdeg), ct, cb};
}

TEST_P(IsotropyProperties, TriangularFamily) {
  std::mt19937_64 rng(200 + GetParam());
  // Degrees kept small: g has degree deg(p) * (deg(b) + 1)^2, and
  // composition multiplies degrees.
  auto b = testing::random_univariate(rng, 2, 0, 1);
  auto d = shear_derivation(b);
  auto e1 = random_params(rng, b, 2), e2 = random_params(rng, b, 1);
  auto f1 = triangular_isotropy_map(e1), f2 = triangular_isotropy_map(e2);

  EXPECT_TRUE(commutes(f1, d));
  EXPECT_EQ(jacobian_det(f1), MultiPoly::constant(2, e1.c_tilde));
  EXPECT_TRUE(is_inverse_pair(f1, invert_triangular_isotropy(e1)));

  auto back = decompose_triangular_isotropy(f1, b);
  ASSERT_TRUE(back);
  EXPECT_EQ(*back.params, e1);
  EXPECT_EQ(triangular_isotropy_map(*back.params), f1);

  auto prod = compose(f1, f2);
  EXPECT_TRUE(commutes(prod, d));
  EXPECT_TRUE(decompose_triangular_isotropy(prod, b));
}

TEST_P(IsotropyProperties, ShiftTestsAgreeOnTriangularFamily) {
  std::mt19937_64 rng(300 + GetParam());
  auto b = testing::random_univariate(rng, 2, 0, 2);
  auto d = shear_derivation(b);
  auto e = random_params(rng, b, 1);
  auto f = triangular_isotropy_map(e);
  auto shift = constant_part(f);
  RatVector neg;
  for (const auto& v : shift) neg.push_back(-v);
  bool direct = commutes(subtract_constant(f), d);
  bool via_translation = coefficients_invariant(d, neg);
  EXPECT_EQ(direct, via_translation);
  auto cls = classify_shift(f, d, invert_triangular_isotropy(e));
  EXPECT_TRUE(cls.tests_agree);
  EXPECT_TRUE(cls.verified_automorphism);
  EXPECT_EQ(cls.shifted_commutes, direct);
}

INSTANTIATE_TEST_SUITE_P(Seeds, IsotropyProperties, ::testing::Range(0, 30));

}  // namespace
}  // namespace deristab
