#pragma once

/*
 * Surgery calculus on manifold descriptors.
 *
 *   connected_sum      Betti numbers add, SW vanishes when both sides have
 *                      b2+ > 0, S4 is the unit, mCP2bar triggers blowup
 *   blowup             SW * prod_i (E_i + E_i^-1)
 *   knot_surgery       SW * Delta_K(T^2), homeomorphism type unchanged
 *   log_transform      SW = (T^r - T^-r)^(2n-2) (T^(r-1) + ... + T^(1-r))
 *   dissolve           rewrite a connected sum into nCP2 # mCP2bar or
 *                      +-(n(S2xS2) # mK3)
 */

#include <algorithm>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "knot.hpp"
#include "manifold.hpp"

namespace swcalc {

ManifoldDescriptor blowup(const ManifoldDescriptor& a, std::int64_t m);

namespace detail {

inline bool all_pieces(const ManifoldDescriptor& d, StandardPiece p) {
  return !d.pieces.empty() &&
         std::all_of(d.pieces.begin(), d.pieces.end(),
                     [p](const Piece& x) { return x.is_standard(p); });
}

inline bool is_s4(const ManifoldDescriptor& d) { return all_pieces(d, StandardPiece::S4); }

/// Number of CP2bar summands when d is exactly mCP2bar, else 0.
inline std::int64_t cp2bar_multiple(const ManifoldDescriptor& d) {
  return all_pieces(d, StandardPiece::CP2bar) ? static_cast<std::int64_t>(d.pieces.size())
                                              : 0;
}

inline std::string fresh_name(const std::vector<std::string>& taken, std::string name) {
  while (std::find(taken.begin(), taken.end(), name) != taken.end()) name += "'";
  return name;
}

/// Topological part of a # b; SW left Unknown.
inline ManifoldDescriptor connected_sum_topology(const ManifoldDescriptor& a,
                                                 const ManifoldDescriptor& b) {
  ManifoldDescriptor r;
  r.label = a.label + " # " + b.label;
  r.simply_connected = a.simply_connected && b.simply_connected;
  r.b1 = a.b1 + b.b1;
  r.b2_plus = a.b2_plus + b.b2_plus;
  r.b2_minus = a.b2_minus + b.b2_minus;
  r.torsion_h1 = a.torsion_h1;
  r.torsion_h1.insert(r.torsion_h1.end(), b.torsion_h1.begin(), b.torsion_h1.end());
  std::sort(r.torsion_h1.begin(), r.torsion_h1.end());
  r.spin = a.spin && b.spin;

  auto& I = r.intersection;
  I = a.intersection;
  std::size_t na = I.tracked_basis.size();
  for (const auto& name : b.intersection.tracked_basis)
    I.tracked_basis.push_back(fresh_name(I.tracked_basis, name));
  std::size_t n = I.tracked_basis.size();
  for (auto& row : I.gram) row.resize(n, 0);
  for (const auto& brow : b.intersection.gram) {
    std::vector<std::int64_t> row(na, 0);
    row.insert(row.end(), brow.begin(), brow.end());
    I.gram.push_back(std::move(row));
  }
  I.untracked += b.intersection.untracked;

  r.capabilities.admits_psc = a.capabilities.admits_psc && b.capabilities.admits_psc;
  r.capabilities.has_swappable_torus =
      (a.capabilities.has_swappable_torus && b.simply_connected) ||
      (b.capabilities.has_swappable_torus && a.simply_connected);
  r.pieces = a.pieces;
  r.pieces.insert(r.pieces.end(), b.pieces.begin(), b.pieces.end());
  r.trace = a.trace;
  r.trace.insert(r.trace.end(), b.trace.begin(), b.trace.end());
  return r;
}

}  // namespace detail

/// a # b.
inline ManifoldDescriptor connected_sum(const ManifoldDescriptor& a,
                                        const ManifoldDescriptor& b) {
  ManifoldDescriptor r;
  if (detail::is_s4(b)) {
    r = a;
    r.label = a.label + " # " + b.label;
  } else if (detail::is_s4(a)) {
    r = b;
    r.label = a.label + " # " + b.label;
  } else if (std::int64_t m = detail::cp2bar_multiple(b);
             m > 0 && (a.sw.is_zero() || (a.sw.is_known() && a.simple_type))) {
    r = blowup(a, m);
    r.label = a.label + " # " + b.label;
    return r;
  } else if (std::int64_t m2 = detail::cp2bar_multiple(a);
             m2 > 0 && (b.sw.is_zero() || (b.sw.is_known() && b.simple_type))) {
    r = blowup(b, m2);
    r.label = a.label + " # " + b.label;
    return r;
  } else {
    r = detail::connected_sum_topology(a, b);
    if (a.b2_plus > 0 && b.b2_plus > 0) {
      r.sw = SwInvariant::known_zero();
      r.trace.push_back("connected_sum: both summands have b2+ > 0, SW vanishes");
    } else {
      r.sw = SwInvariant::unknown();
    }
    if (a.unsurgered || b.unsurgered) {
      const ManifoldDescriptor& ba = a.unsurgered ? *a.unsurgered : a;
      const ManifoldDescriptor& bb = b.unsurgered ? *b.unsurgered : b;
      r.unsurgered = std::make_shared<const ManifoldDescriptor>(connected_sum(ba, bb));
    }
  }
  r.trace.push_back("connected_sum");
  return r;
}

/// Sum of `count` copies of a (count >= 1).
inline ManifoldDescriptor connected_sum_power(const ManifoldDescriptor& a, std::int64_t count) {
  if (count < 1) throw InvalidArgument("multiplicity must be >= 1");
  ManifoldDescriptor r = a;
  for (std::int64_t i = 1; i < count; ++i) r = connected_sum(r, a);
  if (count > 1) r.label = std::to_string(count) + "*" + a.label;
  return r;
}

/// a # m CP2bar with exceptional classes E_1..E_m.
inline ManifoldDescriptor blowup(const ManifoldDescriptor& a, std::int64_t m) {
  if (m < 1) throw InvalidArgument("blowup needs m >= 1");
  ManifoldDescriptor r = a;
  r.label = "blowup(" + a.label + "," + std::to_string(m) + ")";
  r.b2_minus += m;
  r.spin = false;

  auto& I = r.intersection;
  std::vector<std::string> added;
  for (std::int64_t i = 0, idx = 1; i < m; ++idx) {
    std::string name = "E" + std::to_string(idx);
    if (std::find(I.tracked_basis.begin(), I.tracked_basis.end(), name) !=
        I.tracked_basis.end())
      continue;
    I.tracked_basis.push_back(name);
    added.push_back(name);
    ++i;
  }
  std::size_t n = I.tracked_basis.size();
  for (auto& row : I.gram) row.resize(n, 0);
  while (I.gram.size() < n) {
    std::vector<std::int64_t> row(n, 0);
    row[I.gram.size()] = -1;
    I.gram.push_back(std::move(row));
  }

  if (a.sw.is_known() && a.simple_type) {
    FgAbelianGroup g = r.sw_group();
    GroupRingElement p = embed(a.sw.polynomial(), g);
    for (const auto& e : added)
      p *= GroupRingElement::variable(g, e) + GroupRingElement::variable(g, e, -1);
    r.sw = SwInvariant::known(std::move(p));
  } else if (a.sw.is_zero()) {
    r.sw = SwInvariant::known_zero();
  } else {
    r.sw = SwInvariant::unknown();
    r.simple_type = false;
  }
  for (std::int64_t i = 0; i < m; ++i) r.pieces.push_back(Piece::make_standard(StandardPiece::CP2bar));
  if (a.unsurgered)
    r.unsurgered = std::make_shared<const ManifoldDescriptor>(blowup(*a.unsurgered, m));
  r.trace.push_back("blowup x" + std::to_string(m));
  return r;
}

/// Fintushel-Stern knot surgery along the tracked torus T.
inline ManifoldDescriptor knot_surgery(const ManifoldDescriptor& a, const AlexanderPoly& knot,
                                       const std::string& knot_label = "K") {
  if (!a.capabilities.has_swappable_torus)
    throw GuardViolation("knot surgery on " + a.label +
                         " refused: needs an embedded torus T with T.T = 0 and "
                         "pi_1(X - T) = 0");
  ManifoldDescriptor r = a;
  r.label = "knot_surgery(" + a.label + "," + knot_label + ")";
  if (a.sw.is_known()) {
    FgAbelianGroup g = a.sw_group();
    auto t = g.free_index("T");
    if (!t) throw Unsupported("no tracked torus class T on " + a.label);
    Injection inj{{*t}, {}};
    GroupRingElement factor = embed(substitute_power(knot.polynomial(), 2), g, inj);
    r.sw = SwInvariant::known(a.sw.polynomial() * factor);
  }
  auto it = std::find_if(r.pieces.begin(), r.pieces.end(), [](const Piece& p) {
    return p.kind != Piece::Kind::Opaque && p.carries_torus();
  });
  if (it == r.pieces.end())
    it = std::find_if(r.pieces.begin(), r.pieces.end(),
                      [](const Piece& p) { return p.carries_torus(); });
  if (it != r.pieces.end()) *it = Piece::make_knot_surgered(*it);
  r.unsurgered = a.unsurgered ? a.unsurgered : std::make_shared<const ManifoldDescriptor>(a);
  r.trace.push_back("knot_surgery " + knot_label);
  return r;
}

/// Multiplicity-r logarithmic transform of E(2n).
inline ManifoldDescriptor log_transform(std::int64_t two_n, std::int64_t r) {
  if (two_n < 2 || two_n % 2 != 0)
    throw InvalidArgument("log transform needs an even elliptic index 2n >= 2");
  if (r < 1) throw InvalidArgument("log transform multiplicity must be >= 1");
  ManifoldDescriptor m = elliptic_surface(two_n);
  m.label = "logtx(" + std::to_string(two_n) + "," + std::to_string(r) + ")";
  auto g = m.sw_group();
  auto tr = GroupRingElement::variable(g, "T", r) - GroupRingElement::variable(g, "T", -r);
  GroupRingElement tail(g);
  for (std::int64_t e = r - 1; e >= 1 - r; e -= 2) tail += GroupRingElement::variable(g, "T", e);
  m.sw = SwInvariant::known(tr.pow(static_cast<unsigned>(two_n - 2)) * tail);
  m.simple_type = true;
  m.capabilities.has_swappable_torus = true;
  if (r > 1) m.pieces = {Piece::make_opaque(m.label, true)};
  m.trace = {"builtin E(" + std::to_string(two_n) + ")",
             "log_transform multiplicity " + std::to_string(r),
             "assumption: a fiber torus outside the transformed nucleus survives"};
  return m;
}

struct EquivalenceRecord {
  bool identity = false;
  std::string statement;
  Fingerprint left;
  Fingerprint right;
};

/// X_K # S2xS2 = X # S2xS2 for a knot-surgered X_K.
inline EquivalenceRecord stabilization_equivalence(const ManifoldDescriptor& surgered,
                                                   const ManifoldDescriptor& base) {
  EquivalenceRecord rec{false, "", surgered.fingerprint(), base.fingerprint()};
  if (!(rec.left == rec.right))
    throw GuardViolation("stabilization refused: " + surgered.label + " and " + base.label +
                         " have different homeomorphism fingerprints");
  if (surgered.label == base.label && !surgered.unsurgered) {
    rec.identity = true;
    rec.statement = surgered.label + " = " + base.label;
    return rec;
  }
  auto same = [](const ManifoldDescriptor& x, const ManifoldDescriptor& y) {
    return x.label == y.label ||
           (x.fingerprint() == y.fingerprint() && x.sw == y.sw && x.pieces == y.pieces &&
            x.intersection == y.intersection);
  };
  if (!surgered.unsurgered || !same(*surgered.unsurgered, base))
    throw GuardViolation("stabilization refused: " + surgered.label +
                         " was not produced from " + base.label + " by knot surgery");
  if (!base.simply_connected)
    throw GuardViolation("stabilization needs a simply connected base");
  rec.statement = surgered.label + " # S2xS2 = " + base.label + " # S2xS2";
  return rec;
}

struct DissolutionVerdict {
  std::optional<DissolvedForm> canonical_form;  // nullopt: rules insufficient
  std::vector<std::string> rule_trace;
};

/// Rewrites a connected sum of factors (descriptor, multiplicity) into a
/// standard form. Rules are tried in priority order, each on the leftmost
/// factor it applies to:
///   1. akbulut_auckly_stabilization  X_K # S2xS2 -> X # S2xS2
///   2. elliptic_stabilization        E(n) # S2xS2 -> standard pieces
///   3. nonspin_swap                  (odd) S2xS2 -> CP2 # CP2bar
///   4. elliptic_cp2_dissolution      E(n) # CP2 -> 2nCP2 # (10n-1)CP2bar
inline DissolutionVerdict dissolve(
    const std::vector<std::pair<ManifoldDescriptor, std::int64_t>>& factors) {
  Fingerprint input{true, 0, 0, 0, true};
  std::vector<Piece> rest;  // non-standard, in order
  std::int64_t cp2 = 0, cp2bar = 0, s2xs2 = 0, k3 = 0, k3bar = 0;
  bool odd = false;

  for (const auto& [d, count] : factors) {
    if (count < 1) throw InvalidArgument("multiplicity must be >= 1");
    if (!d.simply_connected)
      throw GuardViolation("dissolve needs simply connected factors: " + d.label);
    input.b2_plus += count * d.b2_plus;
    input.b2_minus += count * d.b2_minus;
    input.spin = input.spin && d.spin;
    std::vector<Piece> pieces = d.pieces;
    if (pieces.empty()) pieces.push_back(Piece::make_opaque(d.label, d.spin));
    for (std::int64_t c = 0; c < count; ++c)
      for (const auto& p : pieces) {
        if (!p.spin()) odd = true;
        if (p.kind != Piece::Kind::Standard) {
          rest.push_back(p);
          continue;
        }
        switch (p.standard) {
          case StandardPiece::S4: break;
          case StandardPiece::CP2: ++cp2; break;
          case StandardPiece::CP2bar: ++cp2bar; break;
          case StandardPiece::S2xS2: ++s2xs2; break;
          case StandardPiece::K3: ++k3; break;
          case StandardPiece::K3bar: ++k3bar; break;
        }
      }
  }

  DissolutionVerdict v;
  auto add_standard = [&](const Piece& p) {
    if (p.kind == Piece::Kind::Standard) {
      if (p.standard == StandardPiece::K3) ++k3;
      else if (p.standard == StandardPiece::K3bar) ++k3bar;
      return true;
    }
    return false;
  };

  for (;;) {
    // 1. knot-surgered piece stabilizes to its base while S2xS2 is present
    if (s2xs2 > 0) {
      auto it = std::find_if(rest.begin(), rest.end(), [](const Piece& p) {
        return p.kind == Piece::Kind::KnotSurgered;
      });
      if (it != rest.end()) {
        Piece base = it->base.front();
        v.rule_trace.push_back("akbulut_auckly_stabilization: " + it->render() +
                               " # S2xS2 -> " + base.render() + " # S2xS2");
        if (add_standard(base))
          rest.erase(it);
        else
          *it = base;
        continue;
      }
      // 2. E(n) # S2xS2 dissolves
      it = std::find_if(rest.begin(), rest.end(),
                        [](const Piece& p) { return p.kind == Piece::Kind::Elliptic; });
      if (it != rest.end()) {
        std::int64_t n = it->elliptic_index;
        rest.erase(it);
        --s2xs2;
        if (n % 2 == 0) {
          k3 += n / 2;
          s2xs2 += n / 2;
          v.rule_trace.push_back("elliptic_stabilization: E(" + std::to_string(n) +
                                 ") # S2xS2 -> " + std::to_string(n / 2) + "K3 # " +
                                 std::to_string(n / 2) + "(S2xS2)");
        } else {
          cp2 += 2 * n;
          cp2bar += 10 * n;
          v.rule_trace.push_back("elliptic_stabilization: E(" + std::to_string(n) +
                                 ") # S2xS2 -> " + std::to_string(2 * n) + "CP2 # " +
                                 std::to_string(10 * n) + "CP2bar");
        }
        continue;
      }
    }
    // 3. in a non-spin sum, S2xS2 = CP2 # CP2bar
    if (odd && s2xs2 > 0) {
      v.rule_trace.push_back("nonspin_swap: " + std::to_string(s2xs2) + "(S2xS2) -> " +
                             std::to_string(s2xs2) + "(CP2 # CP2bar)");
      cp2 += s2xs2;
      cp2bar += s2xs2;
      s2xs2 = 0;
      continue;
    }
    // 4. E(n) # CP2 -> 2nCP2 # (10n-1)CP2bar, and its mirror for K3bar
    if (odd && cp2 > 0) {
      auto it = std::find_if(rest.begin(), rest.end(),
                             [](const Piece& p) { return p.kind == Piece::Kind::Elliptic; });
      std::int64_t n = 0;
      if (it != rest.end()) {
        n = it->elliptic_index;
        rest.erase(it);
      } else if (k3 > 0) {
        n = 2;
        --k3;
      }
      if (n > 0) {
        --cp2;
        cp2 += 2 * n;
        cp2bar += 10 * n - 1;
        v.rule_trace.push_back("elliptic_cp2_dissolution: E(" + std::to_string(n) +
                               ") # CP2 -> " + std::to_string(2 * n) + "CP2 # " +
                               std::to_string(10 * n - 1) + "CP2bar");
        continue;
      }
    }
    if (odd && cp2bar > 0 && k3bar > 0) {
      --k3bar;
      --cp2bar;
      cp2 += 19;
      cp2bar += 4;
      v.rule_trace.push_back("elliptic_cp2_dissolution (reversed): K3bar # CP2bar -> "
                             "19CP2 # 4CP2bar");
      continue;
    }
    break;
  }

  if (!rest.empty()) {
    v.rule_trace.push_back("no rule applies to " + rest.front().render());
    return v;
  }
  DissolvedForm f;
  if (odd) {
    if (k3 > 0 || k3bar > 0 || s2xs2 > 0) {
      v.rule_trace.push_back("no rule dissolves K3 summands without a CP2 summand");
      return v;
    }
    f.parity = DissolvedForm::Parity::Odd;
    f.n = cp2;
    f.m = cp2bar;
  } else {
    if (k3 > 0 && k3bar > 0) {
      v.rule_trace.push_back("no rule combines K3 and K3bar");
      return v;
    }
    f.parity = DissolvedForm::Parity::Even;
    f.n = s2xs2;
    f.m = k3 > 0 ? k3 : k3bar;
    f.sign = k3bar > 0 ? -1 : 1;
  }
  Fingerprint out = f.fingerprint();
  if (out.b2_plus != input.b2_plus || out.b2_minus != input.b2_minus ||
      (out.spin != input.spin && input.b2_plus + input.b2_minus > 0))
    throw std::logic_error("dissolve changed the homeomorphism type");
  v.canonical_form = f;
  return v;
}

inline DissolutionVerdict dissolve(const ManifoldDescriptor& m) { return dissolve({{m, 1}}); }

}  // namespace swcalc
