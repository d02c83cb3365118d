#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "swcalc/bauer_furuta.hpp"

using namespace swcalc;

namespace {

BFExpr chain(std::int64_t k) {
  auto m = bf_atom(elliptic_surface(2));
  return BFExpr::atom(BFAtom::bfg(m, k, hat_s1_l(cyclic_group(2), k), k));
}

BFExpr smash(std::vector<BFAtom> atoms) {
  std::vector<BFExpr> fs;
  for (auto& a : atoms) fs.push_back(BFExpr::atom(std::move(a)));
  return BFExpr::smash(std::move(fs));
}

}  // namespace

TEST(BauerFuruta, AtomOfManifold) {
  EXPECT_TRUE(bf_atom(elliptic_surface(2)).m_nontrivial);
  EXPECT_FALSE(bf_atom(*builtin_manifold("S4")).m_nontrivial);
  EXPECT_FALSE(bf_atom(*builtin_manifold("S1xS3")).m_nontrivial);
  EXPECT_EQ(bf_atom(elliptic_surface(2)).render(), "BF(E(2))");
}

TEST(BauerFuruta, ChainToBFOfE2) {
  std::vector<std::string> trace;
  auto nf = bf_simplify(chain(2), &trace);
  EXPECT_EQ(nf.render(), "BF(E(2))");
  ASSERT_EQ(trace.size(), 2u);
  EXPECT_EQ(trace[0], "BFG(2*E(2) # hat(S1xRP3), Z/2) -> BF(E(2)) ^ BFG(hat(S1xRP3), Z/2)");
  EXPECT_EQ(trace[1], "BFG(hat(S1xRP3), Z/2) -> Id");
  EXPECT_EQ(bf_verdict(chain(2)), BFVerdict::Nontrivial);
}

TEST(BauerFuruta, ChainForSeveralK) {
  for (std::int64_t k = 2; k <= 5; ++k) {
    EXPECT_EQ(bf_simplify(chain(k)).render(), "BF(E(2))");
    EXPECT_EQ(bf_verdict(chain(k)), BFVerdict::Nontrivial);
  }
}

TEST(BauerFuruta, S4IsIdentity) {
  auto e = BFExpr::atom(bf_atom(*builtin_manifold("S4")));
  EXPECT_EQ(bf_simplify(e), BFExpr::atom(BFAtom::id()));
  EXPECT_EQ(bf_verdict(e), BFVerdict::Nontrivial);
}

TEST(BauerFuruta, IdSmashId) {
  auto e = smash({BFAtom::id(), BFAtom::id()});
  EXPECT_EQ(bf_simplify(e).render(), "Id");
}

TEST(BauerFuruta, NonzeroNuBlocksTheIdentityRule) {
  auto lens = n_s1_lens_sum(2, {3});
  auto e = BFExpr::atom(BFAtom::bfg(bf_atom(elliptic_surface(2)), 2, lens, 2));
  auto nf = bf_simplify(e);
  EXPECT_FALSE(nf.is_atom());
  EXPECT_EQ(nf.flatten().size(), 2u);
  EXPECT_EQ(bf_verdict(e), BFVerdict::Unknown);
}

TEST(BauerFuruta, CopiesMustMatchK) {
  auto e = BFExpr::atom(BFAtom::bfg(bf_atom(elliptic_surface(2)), 1, n_s4(3), 3));
  EXPECT_EQ(bf_simplify(e), e);
  EXPECT_EQ(bf_verdict(e), BFVerdict::Unknown);
  EXPECT_THROW(BFAtom::bfg(BFAtom::id(), 2, n_s4(2), 2), InvalidArgument);
  EXPECT_THROW(BFAtom::bfg(bf_atom(elliptic_surface(2)), 0, n_s4(2), 2), InvalidArgument);
}

TEST(BauerFuruta, TrivialBFIsUnknown) {
  auto vanishing = connected_sum(elliptic_surface(2), elliptic_surface(2));
  EXPECT_EQ(bf_verdict(BFExpr::atom(bf_atom(vanishing))), BFVerdict::Unknown);
}

TEST(BauerFuruta, ConfluenceAndIdempotence) {
  std::vector<BFAtom> atoms = {
      BFAtom::id(),
      bf_atom(*builtin_manifold("S4")),
      bf_atom(elliptic_surface(3)),
      BFAtom::bfg(bf_atom(elliptic_surface(2)), 2, hat_s1_l(cyclic_group(2), 2), 2),
      BFAtom::bfg(n_cp2bar(3), 3),
      BFAtom::bfg(bf_atom(elliptic_surface(4)), 2, n_s1_lens_sum(2, {5}), 2),
      bf_atom(connected_sum(elliptic_surface(2), elliptic_surface(2))),
  };
  auto reference = bf_simplify(smash(atoms));
  EXPECT_EQ(bf_simplify(reference), reference);
  std::mt19937 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    std::shuffle(atoms.begin(), atoms.end(), rng);
    // Nest a random prefix to exercise associativity too.
    std::size_t cut = rng() % atoms.size();
    std::vector<BFAtom> head(atoms.begin(), atoms.begin() + cut);
    std::vector<BFExpr> fs{smash(head)};
    for (std::size_t i = cut; i < atoms.size(); ++i) fs.push_back(BFExpr::atom(atoms[i]));
    auto nf = bf_simplify(BFExpr::smash(fs));
    EXPECT_EQ(nf, reference);
    EXPECT_EQ(bf_simplify(nf), nf);
  }
}

TEST(BauerFuruta, Rendering) {
  auto e = smash({bf_atom(elliptic_surface(2)), BFAtom::bfg(n_s4(2), 2)});
  EXPECT_EQ(e.render(), "BF(E(2)) ^ BFG(S4, Z/2)");
  EXPECT_EQ(BFExpr::smash({}).render(), "Id");
}
