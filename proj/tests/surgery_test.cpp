#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracle.hpp"
#include "swcalc/surgery.hpp"

using namespace swcalc;

namespace {

ManifoldDescriptor builtin(const char* name) { return *builtin_manifold(name); }

// SW restricted to the T coordinate, as an oracle polynomial.
oracle::Poly t_part(const ManifoldDescriptor& m) {
  oracle::Poly p;
  for (const auto& [e, c] : m.sw.polynomial().terms()) {
    for (std::size_t i = 1; i < e.free.size(); ++i) EXPECT_EQ(e.free[i], 0);
    p[e.free[0]] += static_cast<std::int64_t>(c);
  }
  return oracle::trim(p);
}

oracle::Poly family_squared(std::int64_t d, std::int64_t n) {
  oracle::Poly p{{0, 1}};
  for (std::int64_t j = 1; j <= 2 * d; ++j) {
    std::int64_t s = j % 2 == 0 ? 1 : -1;
    p[2 * j * n] += s;
    p[-2 * j * n] += s;
  }
  return p;
}

}  // namespace

TEST(Surgery, ConnectedSumEuler) {
  auto s = connected_sum(elliptic_surface(2), elliptic_surface(2));
  EXPECT_EQ(s.euler_characteristic(), 46);
  EXPECT_TRUE(s.sw.is_zero());
  EXPECT_TRUE(connected_sum(elliptic_surface(2), builtin("S2xS2")).spin);
  EXPECT_FALSE(connected_sum(elliptic_surface(2), builtin("CP2bar")).spin);
}

TEST(Surgery, EulerAdditivity) {
  std::vector<ManifoldDescriptor> ms = {builtin("S4"), builtin("CP2"), builtin("CP2bar"),
                                        builtin("S2xS2"), builtin("S1xS3"), elliptic_surface(2),
                                        elliptic_surface(3)};
  for (const auto& a : ms)
    for (const auto& b : ms) {
      auto s = connected_sum(a, b);
      EXPECT_EQ(s.euler_characteristic(), a.euler_characteristic() + b.euler_characteristic() - 2)
          << a.label << " # " << b.label;
      EXPECT_EQ(s.signature(), a.signature() + b.signature());
      EXPECT_NO_THROW(check_invariants(s));
    }
}

TEST(Surgery, ConnectedSumWithS4IsIdentity) {
  auto e = elliptic_surface(3);
  auto s = connected_sum(e, builtin("S4"));
  EXPECT_EQ(s.sw, e.sw);
  EXPECT_EQ(s.fingerprint(), e.fingerprint());
}

TEST(Surgery, ConnectedSumWithCp2barIsBlowup) {
  auto s = connected_sum(elliptic_surface(2), builtin("CP2bar"));
  EXPECT_EQ(*mod2_basic_class_count(s), 2u);
  EXPECT_TRUE(s.simple_type);
  EXPECT_TRUE(satisfies_simple_type_squares(s));
}

TEST(Surgery, BlowupE2) {
  auto b = blowup(elliptic_surface(2), 2);
  auto g = b.sw_group();
  auto e1 = GroupRingElement::variable(g, "E1") + GroupRingElement::variable(g, "E1", -1);
  auto e2 = GroupRingElement::variable(g, "E2") + GroupRingElement::variable(g, "E2", -1);
  EXPECT_EQ(b.sw.polynomial(), e1 * e2);
  EXPECT_EQ(*mod2_basic_class_count(b), 4u);
  EXPECT_FALSE(b.spin);
  EXPECT_EQ(b.b2_minus, 21);
  EXPECT_EQ(2 * b.euler_characteristic() + 3 * b.signature(), -2);
  for (const auto& [c, coeff] : b.sw.polynomial().terms()) EXPECT_EQ(b.square(c), -2);
}

TEST(Surgery, BlowupE3) {
  auto b = blowup(elliptic_surface(3), 1);
  auto g = b.sw_group();
  auto t = GroupRingElement::variable(g, "T") - GroupRingElement::variable(g, "T", -1);
  auto e = GroupRingElement::variable(g, "E1") + GroupRingElement::variable(g, "E1", -1);
  EXPECT_EQ(b.sw.polynomial(), t * e);
  EXPECT_EQ(*mod2_basic_class_count(b), 4u);
  EXPECT_TRUE(satisfies_simple_type_squares(b));
}

TEST(Surgery, BlowupOfUnknownStaysUnknown) {
  auto b = blowup(builtin("CP2"), 1);
  EXPECT_TRUE(b.sw.is_unknown());
  EXPECT_EQ(b.b2_minus, 1);
}

TEST(Surgery, KnotSurgeryTrefoil) {
  auto k = knot_surgery(elliptic_surface(2), torus_knot(2, 3), "trefoil");
  EXPECT_EQ(t_part(k), (oracle::Poly{{2, 1}, {0, -1}, {-2, 1}}));
  EXPECT_EQ(*mod2_basic_class_count(k), 3u);
  EXPECT_EQ(k.fingerprint(), elliptic_surface(2).fingerprint());
  EXPECT_TRUE(k.capabilities.has_swappable_torus);
  EXPECT_EQ(k.label, "knot_surgery(E(2),trefoil)");
}

TEST(Surgery, KnotSurgeryUnknotIsIdentity) {
  auto e = elliptic_surface(4);
  EXPECT_EQ(knot_surgery(e, AlexanderPoly::unknot()).sw, e.sw);
}

TEST(Surgery, KnotSurgeryMatchesProductOracle) {
  for (std::int64_t n = 2; n <= 5; ++n)
    for (std::int64_t d = 1; d <= 4; ++d) {
      auto k = knot_surgery(elliptic_surface(n), alexander_family(d, 1));
      auto want = oracle::mul(family_squared(d, 1), oracle::pow({{1, 1}, {-1, -1}}, n - 2));
      EXPECT_EQ(t_part(k), want) << n << " " << d;
      EXPECT_EQ(*mod2_basic_class_count(k), oracle::odd_terms(want));
    }
  for (std::int64_t d = 1; d <= 10; ++d)
    EXPECT_EQ(*mod2_basic_class_count(knot_surgery(elliptic_surface(2), alexander_family(d, 1))),
              static_cast<std::size_t>(4 * d + 1));
}

TEST(Surgery, KnotSurgeryIsMultiplicative) {
  auto a = torus_knot(2, 3), b = alexander_family(2, 1);
  auto twice = knot_surgery(knot_surgery(elliptic_surface(3), a), b);
  auto product = validate(a.polynomial() * b.polynomial());
  EXPECT_EQ(twice.sw, knot_surgery(elliptic_surface(3), product).sw);
}

TEST(Surgery, KnotSurgeryNeedsTorus) {
  EXPECT_THROW(knot_surgery(builtin("S2xS2"), torus_knot(2, 3)), GuardViolation);
  EXPECT_THROW(knot_surgery(reverse_orientation(elliptic_surface(2)), torus_knot(2, 3)),
               GuardViolation);
}

TEST(Surgery, KnotSurgeryOnBlowup) {
  auto k = knot_surgery(blowup(elliptic_surface(2), 1), alexander_family(1, 2));
  EXPECT_EQ(*mod2_basic_class_count(k), 10u);
  EXPECT_TRUE(satisfies_simple_type_squares(k));
}

TEST(Surgery, LogTransform) {
  EXPECT_EQ(t_part(log_transform(2, 3)), (oracle::Poly{{2, 1}, {0, 1}, {-2, 1}}));
  EXPECT_EQ(t_part(log_transform(2, 1)), (oracle::Poly{{0, 1}}));
  auto m = log_transform(4, 2);
  // (T^2 - T^-2)^2 (T + T^-1)
  auto want = oracle::mul(oracle::pow({{2, 1}, {-2, -1}}, 2), {{1, 1}, {-1, 1}});
  EXPECT_EQ(t_part(m), want);
  EXPECT_EQ(*mod2_basic_class_count(m), 4u);
  EXPECT_EQ(m.fingerprint(), elliptic_surface(4).fingerprint());
  EXPECT_THROW(log_transform(3, 2), InvalidArgument);
  EXPECT_THROW(log_transform(2, 0), InvalidArgument);
}

TEST(Surgery, LogTransformCounts) {
  for (std::int64_t r = 1; r <= 25; ++r)
    EXPECT_EQ(*mod2_basic_class_count(log_transform(2, r)), static_cast<std::size_t>(r));
  for (std::int64_t n = 1; n <= 3; ++n)
    for (std::int64_t r = 1; r <= 6; ++r) {
      oracle::Poly tail;
      for (std::int64_t e = r - 1; e >= 1 - r; e -= 2) tail[e] = 1;
      auto want = oracle::mul(oracle::pow({{r, 1}, {-r, -1}}, 2 * n - 2), tail);
      EXPECT_EQ(t_part(log_transform(2 * n, r)), want);
    }
}

TEST(Surgery, StabilizationEquivalence) {
  auto e2 = elliptic_surface(2);
  auto k = knot_surgery(e2, torus_knot(2, 3));
  auto rec = stabilization_equivalence(k, e2);
  EXPECT_FALSE(rec.identity);
  EXPECT_EQ(rec.left, rec.right);
  EXPECT_EQ(homeo_type(k), homeo_type(e2));
  EXPECT_TRUE(stabilization_equivalence(e2, e2).identity);
  EXPECT_THROW(stabilization_equivalence(k, elliptic_surface(3)), GuardViolation);
  EXPECT_THROW(stabilization_equivalence(elliptic_surface(4), k), GuardViolation);
}

TEST(Surgery, DissolveExamples) {
  auto e2 = elliptic_surface(2);
  auto s2 = builtin("S2xS2");
  auto a = dissolve({{e2, 1}, {s2, 1}});
  ASSERT_TRUE(a.canonical_form);
  EXPECT_EQ(a.canonical_form->render(), "1K3 # 1(S2xS2)");

  auto b = dissolve({{e2, 1}, {builtin("CP2"), 1}});
  ASSERT_TRUE(b.canonical_form);
  EXPECT_EQ(b.canonical_form->render(), "4CP2 # 19CP2bar");

  auto c = dissolve({{e2, 4}, {s2, 1}});
  ASSERT_TRUE(c.canonical_form);
  EXPECT_EQ(c.canonical_form->m, 4);
  EXPECT_EQ(c.canonical_form->n, 1);
}

TEST(Surgery, DissolveKnotSurgered) {
  auto k = knot_surgery(elliptic_surface(2), alexander_family(2, 1));
  auto v = dissolve({{k, 4}, {builtin("S2xS2"), 1}});
  ASSERT_TRUE(v.canonical_form);
  EXPECT_EQ(v.canonical_form->render(), "4K3 # 1(S2xS2)");
  EXPECT_TRUE(std::any_of(v.rule_trace.begin(), v.rule_trace.end(), [](const std::string& r) {
    return r.rfind("akbulut_auckly_stabilization", 0) == 0;
  }));
}

TEST(Surgery, DissolveNeedsARule) {
  EXPECT_EQ(dissolve(elliptic_surface(2)).canonical_form->render(), "1K3");
  auto v = dissolve(elliptic_surface(3));
  EXPECT_FALSE(v.canonical_form);
  EXPECT_FALSE(v.rule_trace.empty());
  EXPECT_THROW(dissolve(builtin("S1xS3")), GuardViolation);
}

TEST(Surgery, DissolvePreservesFingerprintAndOrder) {
  std::vector<std::pair<ManifoldDescriptor, std::int64_t>> fs = {
      {elliptic_surface(2), 2}, {builtin("S2xS2"), 1}, {builtin("CP2"), 1},
      {knot_surgery(elliptic_surface(3), torus_knot(2, 3)), 1}, {builtin("CP2bar"), 2}};
  auto base = dissolve(fs);
  ASSERT_TRUE(base.canonical_form);
  ManifoldDescriptor total = *builtin_manifold("S4");
  for (const auto& [d, c] : fs) total = connected_sum(total, connected_sum_power(d, c));
  EXPECT_EQ(base.canonical_form->fingerprint(), total.fingerprint());
  std::mt19937 rng(3);
  for (int i = 0; i < 20; ++i) {
    std::shuffle(fs.begin(), fs.end(), rng);
    auto v = dissolve(fs);
    ASSERT_TRUE(v.canonical_form);
    EXPECT_EQ(*v.canonical_form, *base.canonical_form);
  }
}

TEST(Surgery, DissolveCp2Family) {
  // 4 * (E(2) # CP2bar) # S2xS2
  auto v = dissolve({{blowup(elliptic_surface(2), 1), 4}, {builtin("S2xS2"), 1}});
  ASSERT_TRUE(v.canonical_form);
  EXPECT_EQ(v.canonical_form->render(), "13CP2 # 81CP2bar");
}
