#pragma once

/*
 * Families of Z_k + H actions on klM # (l-1)(S2xS2).
 *
 * Each member M_i is homeomorphic to M with M_i # S2xS2 = M # S2xS2, and the
 * members have pairwise different numbers of mod-2 basic classes. Gluing
 * k copies of M_i to hat(S1xL), L = S^3/H, and passing to the l-fold cover
 * gives the actions; the mod-2 G-monopole polynomial of kM_i # hat tells
 * them apart.
 *
 *   k3_knot     M = E(2n),          M_d = E(2n)_{K_d}
 *   cp2_knot    M = E(n') # m'CP2bar, M_d = E(n')_{K_d} # m'CP2bar
 *   s2xs2_hkw   M = m(S2xS2),       members known by their counts only
 */

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "equivariant.hpp"
#include "knot.hpp"
#include "surgery.hpp"

namespace swcalc {

enum class Construction { K3Knot, Cp2Knot, S2xS2Hkw };

inline const char* to_string(Construction c) {
  switch (c) {
    case Construction::K3Knot: return "k3_knot";
    case Construction::Cp2Knot: return "cp2_knot";
    case Construction::S2xS2Hkw: return "s2xs2_hkw";
  }
  return "?";
}

inline Construction parse_construction(const std::string& s) {
  if (s == "k3_knot" || s == "k3") return Construction::K3Knot;
  if (s == "cp2_knot" || s == "cp2") return Construction::Cp2Knot;
  if (s == "s2xs2_hkw" || s == "s2xs2" || s == "hkw") return Construction::S2xS2Hkw;
  throw InvalidArgument("unknown construction '" + s +
                        "' (expected k3_knot, cp2_knot or s2xs2_hkw)");
}

struct FamilyParams {
  Construction construction = Construction::K3Knot;
  std::int64_t k = 2;
  std::int64_t l = 2;
  std::int64_t size = 3;
  std::int64_t n = 1;        // k3_knot: M = E(2n); s2xs2_hkw: log transforms of E(2n)
  std::int64_t n_prime = 2;  // cp2_knot
  std::int64_t m_prime = 1;  // cp2_knot
  std::int64_t m = 1;        // s2xs2_hkw: M = m(S2xS2)
  std::vector<std::int64_t> multiplicities;  // s2xs2_hkw r_i; default 2..size+1
  std::optional<SpaceFormGroup> group;       // default Z/l
};

struct FamilyMember {
  std::string label;
  std::string knot;                  // empty for count-only members
  std::size_t mod2_count = 0;
  std::optional<GroupRingElement> gmonopole;
  std::size_t gmonopole_count = 0;
  Fingerprint fingerprint;
  bool fingerprint_asserted = false;
  bool count_only = false;
  std::optional<EquivalenceRecord> stabilization;
};

struct FamilyReport {
  FamilyParams params;
  std::string target_expression;
  std::optional<DissolvedForm> target_dissolved;
  std::vector<std::string> target_rule_trace;
  Fingerprint target_fingerprint;
  std::string base_label;
  Fingerprint base_fingerprint;
  std::string n_label;
  std::int64_t torsion_classes = 1;
  std::vector<FamilyMember> members;
  std::vector<std::size_t> counts;
  bool counts_distinct = false;
  bool fingerprints_equal = false;
  CoveringCheck covering;
  std::string verdict;  // "smoothly_distinct" or "inconclusive"
  std::vector<std::string> notes;
};

namespace detail {

inline void require_family_params(const FamilyParams& p) {
  if (p.k < 2) throw GuardViolation("family needs k >= 2 (Z_k with k >= 2)");
  if (p.l < 2)
    throw GuardViolation("family needs l >= 2: H must be a nontrivial group acting freely on S^3");
  if (p.size < 1) throw InvalidArgument("family size must be >= 1");
  if (p.group && p.group->order != p.l)
    throw InvalidArgument("group " + p.group->label + " has order " +
                          std::to_string(p.group->order) + ", not l = " + std::to_string(p.l));
  switch (p.construction) {
    case Construction::K3Knot:
      if (p.n < 1) throw GuardViolation("k3_knot needs n >= 1");
      break;
    case Construction::Cp2Knot:
      if (p.n_prime < 2) throw GuardViolation("cp2_knot needs n' >= 2");
      if (p.m_prime < 1) throw GuardViolation("cp2_knot needs m' >= 1");
      break;
    case Construction::S2xS2Hkw:
      if (p.n < 1) throw GuardViolation("s2xs2_hkw needs n >= 1");
      if (p.m < 1) throw GuardViolation("s2xs2_hkw needs m >= 1");
      break;
  }
}

}  // namespace detail

inline FamilyReport exotic_family(const FamilyParams& p) {
  detail::require_family_params(p);
  FamilyReport rep;
  rep.params = p;
  SpaceFormGroup h = p.group ? *p.group : cyclic_group(p.l);
  NCatalogEntry nentry = hat_s1_l(h, p.k);
  rep.n_label = nentry.descriptor.label;
  rep.torsion_classes = nentry.spinc_count;
  auto s2xs2 = *builtin_manifold("S2xS2");
  std::int64_t kl = p.k * p.l;
  std::string stab = p.l - 1 > 0 ? " # " + std::to_string(p.l - 1) + "*S2xS2" : "";

  ManifoldDescriptor base;
  if (p.construction == Construction::S2xS2Hkw) {
    base = connected_sum_power(s2xs2, p.m);
    rep.target_expression = std::to_string(kl * p.m) + "*S2xS2" + stab;
  } else {
    if (p.construction == Construction::K3Knot) {
      base = elliptic_surface(2 * p.n);
    } else {
      base = blowup(elliptic_surface(p.n_prime), p.m_prime);
    }
    std::string inner = p.construction == Construction::K3Knot
                            ? base.label
                            : "blowup(E(" + std::to_string(p.n_prime) + ")," +
                                  std::to_string(p.m_prime) + ")";
    rep.target_expression = std::to_string(kl) + "*" + inner + stab;
  }
  rep.base_label = base.label;
  rep.base_fingerprint = base.fingerprint();

  // Target: dissolve(kl M # (l-1) S2xS2).
  std::vector<std::pair<ManifoldDescriptor, std::int64_t>> factors{{base, kl}};
  if (p.l > 1) factors.push_back({s2xs2, p.l - 1});
  DissolutionVerdict dv = dissolve(factors);
  rep.target_dissolved = dv.canonical_form;
  rep.target_rule_trace = dv.rule_trace;
  rep.target_fingerprint =
      connected_sum(connected_sum_power(base, kl), connected_sum_power(s2xs2, p.l - 1))
          .fingerprint();

  if (p.construction == Construction::S2xS2Hkw) {
    std::vector<std::int64_t> rs = p.multiplicities;
    if (rs.empty())
      for (std::int64_t i = 1; i <= p.size; ++i) rs.push_back(i + 1);
    if (static_cast<std::int64_t>(rs.size()) != p.size)
      throw InvalidArgument("need exactly size = " + std::to_string(p.size) +
                            " log-transform multiplicities");
    for (auto r : rs) {
      ManifoldDescriptor lt = log_transform(2 * p.n, r);
      FamilyMember mem;
      mem.label = "HKW(m=" + std::to_string(p.m) + ", " + lt.label + ")";
      mem.mod2_count = *mod2_basic_class_count(lt);
      mem.gmonopole_count = mem.mod2_count * static_cast<std::size_t>(rep.torsion_classes);
      mem.fingerprint = rep.base_fingerprint;
      mem.fingerprint_asserted = true;
      mem.count_only = true;
      rep.members.push_back(std::move(mem));
    }
    rep.notes.push_back(
        "s2xs2_hkw counts are lower bounds by construction: the classes of the log transform "
        "are assumed to survive the fiber sum; member fingerprints are asserted, not computed");
  } else {
    std::int64_t spacing = p.construction == Construction::K3Knot ? 2 * p.n : p.n_prime;
    for (std::int64_t d = 1; d <= p.size; ++d) {
      KnotSpec knot{KnotSpec::Family{d, spacing}};
      // For cp2_knot this is (E(n') # m'CP2bar)_K = E(n')_K # m'CP2bar.
      ManifoldDescriptor mi = knot_surgery(base, knot.alexander(), knot.render());
      FamilyMember mem;
      mem.label = mi.label;
      mem.knot = knot.render();
      mem.mod2_count = *mod2_basic_class_count(mi);
      mem.gmonopole = gmonopole_polynomial(mi, nentry, p.k);
      mem.gmonopole_count = mem.gmonopole->monomial_count();
      mem.fingerprint = mi.fingerprint();
      mem.stabilization = stabilization_equivalence(mi, base);
      rep.members.push_back(std::move(mem));
    }
  }

  for (const auto& mem : rep.members) rep.counts.push_back(mem.gmonopole_count);
  rep.counts_distinct = std::set<std::size_t>(rep.counts.begin(), rep.counts.end()).size() ==
                        rep.counts.size();
  rep.fingerprints_equal = std::all_of(rep.members.begin(), rep.members.end(),
                                       [&](const FamilyMember& mem) {
                                         return mem.fingerprint == rep.base_fingerprint;
                                       });
  rep.covering = covering_consistency(base, nentry, p.k, p.l);
  rep.verdict = rep.counts_distinct && rep.fingerprints_equal && rep.covering.consistent
                    ? "smoothly_distinct"
                    : "inconclusive";
  return rep;
}

}  // namespace swcalc
