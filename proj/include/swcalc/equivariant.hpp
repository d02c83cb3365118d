#pragma once

/*
 * Equivariant side: the catalog of pieces N that carry a Z_k action
 * satisfying the gluing hypotheses, and the mod-2 G-monopole polynomial of
 * kM # N, which is mod2(SW_M) times the sum of all torsion classes of N.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "manifold.hpp"
#include "spaceform.hpp"
#include "surgery.hpp"

namespace swcalc {

struct EquivariantData {
  std::int64_t k = 2;
  std::int64_t h_order = 1;
  std::string h_label;
  std::int64_t b1G = 0;  // nu: invariant 1-forms
  std::int64_t b2plusG = 0;
  bool has_free_orbit = false;
  bool psc_invariant = false;
  bool spinc_max_c1sq = false;

  /// Hypotheses that fail for this N (empty when eligible).
  std::vector<std::string> failed_hypotheses(const ManifoldDescriptor& d) const {
    std::vector<std::string> out;
    if (!has_free_orbit) out.push_back("the Z_k action needs at least one free orbit");
    if (!psc_invariant) out.push_back("N needs a Z_k-invariant metric of positive scalar curvature");
    if (!spinc_max_c1sq) out.push_back("N needs a Spin^c structure with c1^2 = -b2(N)");
    if (d.b2_plus != 0) out.push_back("N needs b2+(N) = 0");
    return out;
  }
  bool eligible(const ManifoldDescriptor& d) const { return failed_hypotheses(d).empty(); }

  bool operator==(const EquivariantData&) const = default;
};

enum class NKind { S4, CP2bar, S1xLensSum, HatS1L, Extended };

inline const char* to_string(NKind k) {
  switch (k) {
    case NKind::S4: return "S4";
    case NKind::CP2bar: return "CP2bar";
    case NKind::S1xLensSum: return "S1xLensSum";
    case NKind::HatS1L: return "HatS1L";
    case NKind::Extended: return "Extended";
  }
  return "?";
}

struct NCatalogEntry {
  ManifoldDescriptor descriptor;
  EquivariantData eq;
  NKind kind = NKind::S4;
  /// Number of torsion classes of H^2(N); the Spin^c count when b2(N) = 0.
  std::int64_t spinc_count = 1;
  std::optional<SpaceFormGroup> group;          // HatS1L
  std::optional<DissolvedForm> universal_cover; // HatS1L
  std::optional<SpincCertificate> certificate;  // lattice witness for c1^2 = -b2

  bool eligible() const { return eq.eligible(descriptor); }
};

namespace detail {

inline void require_k(std::int64_t k) {
  if (k < 2) throw InvalidArgument("cyclic order k >= 2 required, got " + std::to_string(k));
}

inline std::int64_t product(const std::vector<std::int64_t>& v) {
  std::int64_t p = 1;
  for (auto x : v) p *= x;
  return p;
}

inline void finish_entry(NCatalogEntry& e) {
  if (e.eq.b1G > e.descriptor.b1)
    throw std::logic_error("nu exceeds b1 for " + e.descriptor.label);
  e.spinc_count = product(e.descriptor.torsion_h1);
  auto failed = e.eq.failed_hypotheses(e.descriptor);
  if (!failed.empty()) throw GuardViolation(e.descriptor.label + " is not eligible: " + failed[0]);
}

}  // namespace detail

inline NCatalogEntry n_s4(std::int64_t k) {
  detail::require_k(k);
  NCatalogEntry e;
  e.kind = NKind::S4;
  e.descriptor = *builtin_manifold("S4");
  e.eq = {k, 1, "", 0, 0, true, true, true};
  detail::finish_entry(e);
  return e;
}

/// CP2bar with a rotation of order k; c1^2 = -1 certified on diag(-1).
inline NCatalogEntry n_cp2bar(std::int64_t k) {
  detail::require_k(k);
  NCatalogEntry e;
  e.kind = NKind::CP2bar;
  e.descriptor = *builtin_manifold("CP2bar");
  e.certificate = spinc_with_max_square(definite_form(e.descriptor), 1);
  e.eq = {k, 1, "", 0, 0, true, true, e.certificate.has_value()};
  detail::finish_entry(e);
  return e;
}

/// S1 x (L(p_1,1) # ... # L(p_n,1)), Z_k rotating the circle; nu = 1.
inline NCatalogEntry n_s1_lens_sum(std::int64_t k, const std::vector<std::int64_t>& lens_orders) {
  detail::require_k(k);
  if (lens_orders.empty()) throw InvalidArgument("S1xLensSum needs at least one lens space");
  std::string label = "S1x(";
  for (std::size_t i = 0; i < lens_orders.size(); ++i) {
    if (lens_orders[i] < 2) throw InvalidArgument("lens space orders must be >= 2");
    label += (i ? " # " : "") + std::string("L(") + std::to_string(lens_orders[i]) + ",1)";
  }
  label += ")";
  NCatalogEntry e;
  e.kind = NKind::S1xLensSum;
  ManifoldDescriptor& d = e.descriptor;
  d.label = label;
  d.simply_connected = false;
  d.b1 = 1;
  d.torsion_h1 = lens_orders;
  std::sort(d.torsion_h1.begin(), d.torsion_h1.end());
  d.capabilities.admits_psc = true;
  d.pieces = {Piece::make_opaque(label, true)};
  d.trace = {"catalog " + label};
  e.eq = {k, 1, "", 1, 0, true, true, true};
  detail::finish_entry(e);
  return e;
}

/// Surgery on S1 x L along S1 x pt, L = S^3/H: a rational homology sphere
/// with H^2 = H1(L) and universal cover (|H| - 1)(S2xS2).
inline NCatalogEntry hat_s1_l(const SpaceFormGroup& h, std::int64_t k = 2) {
  detail::require_k(k);
  if (h.order < 2) throw InvalidArgument("H must be nontrivial: order >= 2 required");
  NCatalogEntry e;
  e.kind = NKind::HatS1L;
  e.group = h;
  ManifoldDescriptor& d = e.descriptor;
  d.label = "hat(S1x" + h.quotient_label() + ")";
  d.simply_connected = false;
  d.torsion_h1 = h.h1_orders;
  std::sort(d.torsion_h1.begin(), d.torsion_h1.end());
  d.spin = true;
  d.capabilities.admits_psc = true;
  d.pieces = {Piece::make_opaque(d.label, true)};
  d.trace = {"catalog " + d.label + (h.asserted() ? " (asserted group)" : "")};
  DissolvedForm cover;
  cover.parity = DissolvedForm::Parity::Even;
  cover.n = h.order - 1;
  e.universal_cover = cover;
  e.eq = {k, h.order, h.label, 0, 0, true, true, true};
  detail::finish_entry(e);
  return e;
}

/// Same, from raw abelianization data. Strict mode refuses groups outside
/// the whitelist; otherwise they are carried as asserted.
inline NCatalogEntry hat_s1_l(const std::vector<std::int64_t>& h1_orders, std::int64_t pi1_order,
                              std::int64_t k = 2, bool strict = true) {
  if (pi1_order < 2) throw InvalidArgument("H must be nontrivial: order >= 2 required");
  if (auto g = whitelist_match(h1_orders, pi1_order)) return hat_s1_l(*g, k);
  if (strict)
    throw GuardViolation("no spherical space-form group of order " + std::to_string(pi1_order) +
                         " in the whitelist has that abelianization; assert it explicitly");
  return hat_s1_l(asserted_group("asserted(" + std::to_string(pi1_order) + ")", pi1_order,
                                 h1_orders),
                  k);
}

/// X # kl Z with Z negative definite, PSC and c1^2 = -b2 certified on its form.
inline NCatalogEntry n_extended(const NCatalogEntry& x, std::int64_t l, const ManifoldDescriptor& z,
                                std::int64_t search_bound = 2) {
  if (l < 1) throw InvalidArgument("l >= 1 required");
  if (z.b2_plus != 0) throw GuardViolation(z.label + " is not eligible: needs b2+(Z) = 0");
  if (!z.capabilities.admits_psc)
    throw GuardViolation(z.label + " is not eligible: needs a metric of positive scalar curvature");
  auto cert = spinc_with_max_square(definite_form(z), search_bound);
  if (!cert)
    throw GuardViolation(z.label +
                         " is not eligible: no Spin^c structure with c1^2 = -b2 was certified");
  NCatalogEntry e = x;
  e.kind = NKind::Extended;
  e.certificate = cert;
  e.descriptor = connected_sum(x.descriptor, connected_sum_power(z, x.eq.k * l));
  e.universal_cover.reset();
  detail::finish_entry(e);
  return e;
}

/// Group of the G-monopole polynomial: tracked classes of M plus torsion of N.
inline FgAbelianGroup gmonopole_group(const ManifoldDescriptor& m, const NCatalogEntry& n) {
  std::vector<std::string> taken = m.intersection.tracked_basis;
  std::vector<FgAbelianGroup::TorsionGenerator> torsion;
  const auto& orders = n.descriptor.torsion_h1;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] < 2) continue;
    std::string name = orders.size() == 1 ? "a" : "a" + std::to_string(i + 1);
    name = detail::fresh_name(taken, name);
    taken.push_back(name);
    torsion.push_back({orders[i], name});
  }
  return FgAbelianGroup(m.intersection.tracked_basis, torsion);
}

namespace detail {

inline void require_transfer(const ManifoldDescriptor& m, const NCatalogEntry& n, std::int64_t k) {
  require_k(k);
  if (n.eq.k != k)
    throw InvalidArgument("N carries a Z_" + std::to_string(n.eq.k) + " action, not Z_" +
                          std::to_string(k));
  if (m.b2_plus <= 1)
    throw GuardViolation("G-monopole transfer needs b2+(M) > 1; " + m.label + " has b2+ = " +
                         std::to_string(m.b2_plus));
  if (m.sw.is_unknown()) throw GuardViolation("SW of " + m.label + " is unknown");
  auto failed = n.eq.failed_hypotheses(n.descriptor);
  if (!failed.empty())
    throw GuardViolation(n.descriptor.label + " is not eligible: " + failed[0]);
}

}  // namespace detail

/// mod2(SW_M) * sum of torsion classes of N, valid for nu(N) = 0.
inline GroupRingElement gmonopole_polynomial(const ManifoldDescriptor& m, const NCatalogEntry& n,
                                             std::int64_t k) {
  detail::require_transfer(m, n, k);
  if (n.eq.b1G != 0)
    throw GuardViolation("G-monopole polynomial needs b1(N)^Z_k = 0 (nu = " +
                         std::to_string(n.eq.b1G) + "); use gmono_eval instead");
  FgAbelianGroup g = gmonopole_group(m, n);
  if (m.sw.is_zero()) return GroupRingElement::zero(g);
  return mod2(embed(mod2(m.sw.polynomial()), g) * torsion_sum(g));
}

enum class GmonoValue { Zero, One, Undetermined };

inline const char* to_string(GmonoValue v) {
  switch (v) {
    case GmonoValue::Zero: return "0";
    case GmonoValue::One: return "1";
    case GmonoValue::Undetermined: return "undetermined";
  }
  return "?";
}

struct GmonoRequest {
  GroupElement spinc;                 // c1 in M's tracked classes
  std::int64_t d = 0;                 // power of U
  std::vector<std::string> a_classes; // 1-dimensional classes of M
  std::vector<bool> a_torsion;        // parallel to a_classes
  bool include_b_top = false;         // include b_1 ^ ... ^ b_nu
};

/// Value of SW^{Z_k} of kM # N on U^d a (^ b_top), mod 2, where the
/// transfer theorem determines it.
inline GmonoValue gmono_eval(const ManifoldDescriptor& m, const NCatalogEntry& n, std::int64_t k,
                             const GmonoRequest& req) {
  detail::require_transfer(m, n, k);
  if (req.d < 0) throw InvalidArgument("power of U must be >= 0");
  for (std::size_t i = 0; i < req.a_classes.size(); ++i)
    if (i < req.a_torsion.size() && req.a_torsion[i])
      throw Unsupported("torsion class " + req.a_classes[i] +
                        " in H1(M): its mu-class is only identified modulo torsion");
  if (n.eq.b1G > 0 && !req.include_b_top) return GmonoValue::Undetermined;
  if (m.sw.is_zero()) return GmonoValue::Zero;
  // Only the polynomial is stored: it gives the dimension-0 values.
  if (req.d != 0 || !req.a_classes.empty()) return GmonoValue::Undetermined;
  FgAbelianGroup g = m.sw_group();
  GroupElement c = canonical(g, req.spinc);
  if (!belongs_to(g, c)) throw InvalidArgument("class does not live in the tracked classes of M");
  if (expected_sw_dimension(m, c) != 0) return GmonoValue::Undetermined;
  Integer coeff = m.sw.polynomial().coefficient(c);
  return coeff % 2 != 0 ? GmonoValue::One : GmonoValue::Zero;
}

struct CoveringCheck {
  bool consistent = false;
  std::int64_t cover_euler = 0;   // chi(klM # (l-1)S2xS2)
  std::int64_t base_euler = 0;    // chi(kM # N)
  std::int64_t cover_signature = 0;
  std::int64_t base_signature = 0;
  std::int64_t l = 0;
  bool hat_cover_consistent = false;
};

/// The l-fold cover of kM # hat(S1xL) is klM # (l-1)(S2xS2): chi and sigma
/// are multiplicative, and the cover of hat itself is (l-1)(S2xS2).
inline CoveringCheck covering_consistency(const ManifoldDescriptor& m, const NCatalogEntry& n,
                                          std::int64_t k, std::int64_t l) {
  detail::require_k(k);
  if (l < 2) throw InvalidArgument("covering degree l >= 2 required (H nontrivial)");
  if (n.kind != NKind::HatS1L || !n.group)
    throw InvalidArgument("covering check needs a hat(S1xL) entry");
  if (n.group->order != l)
    throw InvalidArgument("|pi1(L)| = " + std::to_string(n.group->order) + " but l = " +
                          std::to_string(l));
  auto s2xs2 = *builtin_manifold("S2xS2");
  ManifoldDescriptor cover = connected_sum(connected_sum_power(m, k * l),
                                           connected_sum_power(s2xs2, l - 1));
  ManifoldDescriptor base = connected_sum(connected_sum_power(m, k), n.descriptor);
  CoveringCheck r;
  r.l = l;
  r.cover_euler = cover.euler_characteristic();
  r.base_euler = base.euler_characteristic();
  r.cover_signature = cover.signature();
  r.base_signature = base.signature();
  auto uc = n.universal_cover->fingerprint();
  std::int64_t uc_euler = 2 + uc.b2_plus + uc.b2_minus;
  r.hat_cover_consistent = uc_euler == l * n.descriptor.euler_characteristic() &&
                           uc.b2_plus == uc.b2_minus && uc.spin && uc.simply_connected;
  r.consistent = r.cover_euler == l * r.base_euler &&
                 r.cover_signature == l * r.base_signature && r.hat_cover_consistent;
  return r;
}

}  // namespace swcalc
