#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <optional>

#include "json.hpp"
#include "swcalc/lattice.hpp"

using namespace swcalc;

namespace {

using Vec = std::vector<std::int64_t>;

std::int64_t dot(const IntMatrix& g, const Vec& u, const Vec& v) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) s += u[i] * g[i][j] * v[j];
  return s;
}

// c.x = x.x mod 2 on every basis vector.
bool characteristic(const IntMatrix& g, const Vec& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    Vec e(c.size(), 0);
    e[i] = 1;
    if (((dot(g, c, e) - dot(g, e, e)) % 2 + 2) % 2 != 0) return false;
  }
  return true;
}

// Recursive enumeration of the box, independent of for_each_in_box.
void box(std::size_t rank, std::int64_t bound, Vec& v, const std::function<void(const Vec&)>& f) {
  if (v.size() == rank) return f(v);
  for (std::int64_t x = -bound; x <= bound; ++x) {
    v.push_back(x);
    box(rank, bound, v, f);
    v.pop_back();
  }
}

std::optional<std::int64_t> brute_max(const IntMatrix& g, std::int64_t bound) {
  std::optional<std::int64_t> best;
  Vec v;
  box(g.size(), bound, v, [&](const Vec& c) {
    if (characteristic(g, c) && (!best || dot(g, c, c) > *best)) best = dot(g, c, c);
  });
  return best;
}

nlohmann::json fixtures() {
  std::ifstream in(SWCALC_DATA_DIR "/lattice_fixtures.json");
  return nlohmann::json::parse(in);
}

}  // namespace

TEST(Lattice, CharacteristicVectorsSmall) {
  auto one = characteristic_vectors(QuadraticForm::diagonal(1), 3);
  std::sort(one.begin(), one.end());
  EXPECT_EQ(one, (std::vector<Vec>{{-3}, {-1}, {1}, {3}}));

  auto two = characteristic_vectors(QuadraticForm::diagonal(2), 1);
  EXPECT_EQ(two.size(), 4u);
  for (const auto& c : two) EXPECT_TRUE(std::abs(c[0]) == 1 && std::abs(c[1]) == 1);

  auto e8 = characteristic_vectors(QuadraticForm::e8(), 2);
  EXPECT_NE(std::find(e8.begin(), e8.end(), Vec(8, 0)), e8.end());
}

TEST(Lattice, CharacteristicVectorsMatchOracle) {
  for (const IntMatrix& g : {QuadraticForm::diagonal(3).gram(), IntMatrix{{-2, 1}, {1, -1}},
                             IntMatrix{{-1, 0, 0}, {0, -2, 1}, {0, 1, -1}}}) {
    QuadraticForm q(g);
    auto got = characteristic_vectors(q, 2);
    std::vector<Vec> want;
    Vec v;
    box(g.size(), 2, v, [&](const Vec& c) {
      if (characteristic(g, c)) want.push_back(c);
    });
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want);
    for (auto c : got) {
      for (auto& x : c) x = -x;
      EXPECT_TRUE(std::binary_search(got.begin(), got.end(), c));
    }
  }
}

TEST(Lattice, EnumerationIsDescendingLexicographic) {
  auto cs = characteristic_vectors(QuadraticForm::diagonal(2), 3);
  EXPECT_TRUE(std::is_sorted(cs.rbegin(), cs.rend()));
  EXPECT_EQ(cs.front(), (Vec{3, 3}));
}

TEST(Lattice, MaxOnDiagonalForms) {
  auto r3 = max_characteristic_square(QuadraticForm::diagonal(3), 1);
  EXPECT_EQ(r3.value, -3);
  EXPECT_EQ(r3.achiever, (Vec{1, 1, 1}));
  EXPECT_FALSE(r3.bound_limited());

  auto r1 = max_characteristic_square(QuadraticForm::diagonal(1), 3);
  EXPECT_EQ(r1.value, -1);
  EXPECT_EQ(r1.achiever, (Vec{1}));
  EXPECT_EQ(r1.status, CharacteristicMax::Status::Certified);
}

TEST(Lattice, MaxMatchesBruteForce) {
  for (std::size_t r = 1; r <= 6; ++r) {
    auto q = QuadraticForm::diagonal(r);
    auto got = max_characteristic_square(q, 1);
    EXPECT_EQ(got.value, brute_max(q.gram(), 1));
    EXPECT_EQ(*got.value, -static_cast<std::int64_t>(r));
    EXPECT_EQ(got.achiever, Vec(r, 1));
  }
  IntMatrix g{{-2, 1}, {1, -1}};
  EXPECT_EQ(max_characteristic_square(QuadraticForm(g), 2).value, brute_max(g, 2));
}

TEST(Lattice, E8) {
  auto q = QuadraticForm::e8();
  EXPECT_TRUE(q.is_even());
  auto r = max_characteristic_square(q, 2);
  EXPECT_EQ(r.value, 0);
  EXPECT_EQ(r.achiever, Vec(8, 0));
  EXPECT_EQ(r.status, CharacteristicMax::Status::ExceedsCertificate);
  // The maximum is 0, never -8. Square -8 does occur, but only as twice a root.
  std::size_t doubled_roots = 0;
  for (const auto& c : characteristic_vectors(q, 2)) {
    EXPECT_LE(q.square(c), 0);
    if (q.square(c) != -8) continue;
    Vec half(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      ASSERT_EQ(c[i] % 2, 0);
      half[i] = c[i] / 2;
    }
    EXPECT_EQ(q.square(half), -2);
    ++doubled_roots;
  }
  EXPECT_GT(doubled_roots, 0u);
  EXPECT_EQ(determinant(q.gram()), 1);
}

TEST(Lattice, BoundLimited) {
  // Equivalent to diag(-1,-1), but the certificate vector sits outside the unit box.
  IntMatrix g{{-10, 3}, {3, -1}};
  QuadraticForm q(g);
  auto small = max_characteristic_square(q, 1);
  EXPECT_EQ(small.status, CharacteristicMax::Status::BoundLimited);
  EXPECT_EQ(small.value, brute_max(g, 1));
  auto large = max_characteristic_square(q, 4);
  EXPECT_EQ(large.status, CharacteristicMax::Status::Certified);
  EXPECT_EQ(large.value, -2);
  EXPECT_THROW(max_characteristic_square(q, 0), InvalidArgument);
}

TEST(Lattice, Diagonalize) {
  IntMatrix g{{-2, 1}, {1, -1}};
  QuadraticForm q(g);
  auto d = diagonalize(q, 3);
  ASSERT_TRUE(d.basis);
  EXPECT_TRUE(d.guaranteed);
  const auto& b = *d.basis;
  ASSERT_EQ(b.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(dot(g, b[i], b[j]), i == j ? -1 : 0);

  auto id = diagonalize(QuadraticForm::diagonal(2), 1);
  ASSERT_TRUE(id.basis);
  EXPECT_EQ(*id.basis, (IntMatrix{{1, 0}, {0, 1}}));

  auto e8 = diagonalize(QuadraticForm::e8(), 2);
  EXPECT_FALSE(e8.basis);
  EXPECT_FALSE(e8.guaranteed);
}

TEST(Lattice, DiagonalizeGivesMinusIdentity) {
  auto f = fixtures();
  for (const auto& [name, gram] : f.at("forms").items()) {
    QuadraticForm q(gram.get<IntMatrix>());
    auto d = diagonalize(q, 2);
    if (!d.basis) {
      EXPECT_TRUE(q.is_even()) << name;
      continue;
    }
    const auto& b = *d.basis;
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        EXPECT_EQ(dot(q.gram(), b[i], b[j]), i == j ? -1 : 0) << name;
  }
}

TEST(Lattice, DiagonalizeRankGuard) {
  EXPECT_THROW(diagonalize(QuadraticForm::diagonal(9), 1), Unsupported);
}

TEST(Lattice, Spinc) {
  auto c2 = spinc_with_max_square(QuadraticForm::diagonal(2), 1);
  ASSERT_TRUE(c2);
  EXPECT_EQ(c2->c1, (Vec{1, 1}));
  EXPECT_EQ(c2->square, -2);

  auto c1 = spinc_with_max_square(QuadraticForm::diagonal(1), 1);
  ASSERT_TRUE(c1);
  EXPECT_EQ(c1->c1, (Vec{1}));

  auto c0 = spinc_with_max_square(QuadraticForm(IntMatrix{}), 1);
  ASSERT_TRUE(c0);
  EXPECT_TRUE(c0->c1.empty());
  EXPECT_EQ(c0->square, 0);

  IntMatrix g{{-2, 1}, {1, -1}};
  auto c = spinc_with_max_square(QuadraticForm(g), 2);
  ASSERT_TRUE(c);
  EXPECT_TRUE(characteristic(g, c->c1));
  EXPECT_EQ(dot(g, c->c1, c->c1), -2);

  EXPECT_FALSE(spinc_with_max_square(QuadraticForm::e8(), 2));
}

TEST(Lattice, Validation) {
  EXPECT_THROW(QuadraticForm(IntMatrix{{-1, 0}}), InvalidArgument);
  EXPECT_THROW(QuadraticForm(IntMatrix{{-2, 1}, {0, -1}}), InvalidArgument);
  EXPECT_THROW(QuadraticForm(IntMatrix{{1}}), InvalidArgument);
  EXPECT_THROW(QuadraticForm(IntMatrix{{-2}}), InvalidArgument);
  EXPECT_THROW(QuadraticForm(IntMatrix{{-1, 0}, {0, 1}}), InvalidArgument);
}

TEST(Lattice, DefiniteFormOfManifold) {
  auto q = definite_form(*builtin_manifold("CP2bar"));
  EXPECT_EQ(q.gram(), (IntMatrix{{-1}}));
  EXPECT_THROW(definite_form(*builtin_manifold("CP2")), GuardViolation);
}
