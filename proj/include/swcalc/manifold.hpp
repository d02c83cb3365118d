#pragma once

/*
 * Closed oriented smooth 4-manifolds, described by their algebraic
 * topology plus whatever is known about the Seiberg-Witten polynomial.
 *
 * A descriptor never claims more than it knows: the SW polynomial is
 * tri-state (Known / KnownZero / Unknown) and operations propagate Unknown.
 * The polynomial lives in Z[H], H the free group on the tracked basis of
 * H_2 (the classes that actually occur in SW monomials), so the square of
 * a monomial's class is read through the tracked Gram matrix.
 */

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "groupring.hpp"

namespace swcalc {

enum class SwState { Known, KnownZero, Unknown };

inline const char* to_string(SwState s) {
  switch (s) {
    case SwState::Known: return "known";
    case SwState::KnownZero: return "known_zero";
    case SwState::Unknown: return "unknown";
  }
  return "unknown";
}

class SwInvariant {
 public:
  /// A zero polynomial is stored as KnownZero.
  static SwInvariant known(GroupRingElement p) {
    if (p.is_zero()) return known_zero();
    SwInvariant s(SwState::Known);
    s.poly_ = std::move(p);
    return s;
  }
  static SwInvariant known_zero() { return SwInvariant(SwState::KnownZero); }
  static SwInvariant unknown() { return SwInvariant(SwState::Unknown); }

  SwState state() const noexcept { return state_; }
  bool is_known() const noexcept { return state_ == SwState::Known; }
  bool is_zero() const noexcept { return state_ == SwState::KnownZero; }
  bool is_unknown() const noexcept { return state_ == SwState::Unknown; }

  const GroupRingElement& polynomial() const {
    if (!poly_) throw Unsupported("SW polynomial is not known");
    return *poly_;
  }

  bool operator==(const SwInvariant&) const = default;

 private:
  explicit SwInvariant(SwState s) : state_(s) {}
  SwState state_;
  std::optional<GroupRingElement> poly_;
};

/// Standard pieces not referenced by any SW monomial.
struct UntrackedSummands {
  std::int64_t hyperbolic = 0;   // H, rank 2, signature 0
  std::int64_t plus_one = 0;     // <+1>
  std::int64_t minus_one = 0;    // <-1>
  std::int64_t e8_negative = 0;  // E8(-)
  std::int64_t e8_positive = 0;  // E8(+)

  std::int64_t rank() const {
    return 2 * hyperbolic + plus_one + minus_one + 8 * (e8_negative + e8_positive);
  }

  UntrackedSummands& operator+=(const UntrackedSummands& o) {
    hyperbolic += o.hyperbolic;
    plus_one += o.plus_one;
    minus_one += o.minus_one;
    e8_negative += o.e8_negative;
    e8_positive += o.e8_positive;
    return *this;
  }

  bool operator==(const UntrackedSummands&) const = default;
};

struct IntersectionData {
  std::vector<std::string> tracked_basis;
  IntMatrix gram;
  UntrackedSummands untracked;

  std::int64_t b2() const {
    return static_cast<std::int64_t>(tracked_basis.size()) + untracked.rank();
  }

  std::int64_t pairing(std::span<const std::int64_t> u, std::span<const std::int64_t> v) const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) s += u[i] * gram[i][j] * v[j];
    return s;
  }

  bool operator==(const IntersectionData&) const = default;
};

struct Capabilities {
  /// Embedded torus T with T.T = 0 and pi_1(X - T) = 0.
  bool has_swappable_torus = false;
  bool admits_psc = false;
  bool operator==(const Capabilities&) const = default;
};

enum class StandardPiece { S4, CP2, CP2bar, S2xS2, K3, K3bar };

inline const char* to_string(StandardPiece p) {
  switch (p) {
    case StandardPiece::S4: return "S4";
    case StandardPiece::CP2: return "CP2";
    case StandardPiece::CP2bar: return "CP2bar";
    case StandardPiece::S2xS2: return "S2xS2";
    case StandardPiece::K3: return "K3";
    case StandardPiece::K3bar: return "K3bar";
  }
  return "?";
}

/// A connected-sum factor as seen by the dissolution rules.
struct Piece {
  enum class Kind { Standard, Elliptic, KnotSurgered, Opaque };

  Kind kind = Kind::Opaque;
  StandardPiece standard = StandardPiece::S4;
  std::int64_t elliptic_index = 0;  // Elliptic
  std::vector<Piece> base;          // KnotSurgered: exactly one entry
  std::string label;                // Opaque
  bool opaque_spin = false;         // Opaque

  static Piece make_standard(StandardPiece p) {
    Piece x;
    x.kind = Kind::Standard;
    x.standard = p;
    return x;
  }
  static Piece make_elliptic(std::int64_t n) {
    if (n == 2) return make_standard(StandardPiece::K3);
    Piece x;
    x.kind = Kind::Elliptic;
    x.elliptic_index = n;
    return x;
  }
  static Piece make_knot_surgered(Piece base) {
    if (base.kind == Kind::KnotSurgered) return base;
    Piece x;
    x.kind = Kind::KnotSurgered;
    x.base.push_back(std::move(base));
    return x;
  }
  static Piece make_opaque(std::string label, bool spin) {
    Piece x;
    x.label = std::move(label);
    x.opaque_spin = spin;
    return x;
  }

  bool is_standard(StandardPiece p) const { return kind == Kind::Standard && standard == p; }

  bool spin() const {
    switch (kind) {
      case Kind::Standard:
        return standard != StandardPiece::CP2 && standard != StandardPiece::CP2bar;
      case Kind::Elliptic: return elliptic_index % 2 == 0;
      case Kind::KnotSurgered: return base.front().spin();
      case Kind::Opaque: return opaque_spin;
    }
    return false;
  }

  /// Pieces that can carry a swappable torus.
  bool carries_torus() const {
    return kind == Kind::Elliptic || kind == Kind::KnotSurgered ||
           is_standard(StandardPiece::K3) || (kind == Kind::Opaque);
  }

  std::string render() const {
    switch (kind) {
      case Kind::Standard: return to_string(standard);
      case Kind::Elliptic: return "E(" + std::to_string(elliptic_index) + ")";
      case Kind::KnotSurgered: return base.front().render() + "_K";
      case Kind::Opaque: return label;
    }
    return "?";
  }

  Piece reversed() const {
    if (kind == Kind::Standard) {
      switch (standard) {
        case StandardPiece::CP2: return make_standard(StandardPiece::CP2bar);
        case StandardPiece::CP2bar: return make_standard(StandardPiece::CP2);
        case StandardPiece::K3: return make_standard(StandardPiece::K3bar);
        case StandardPiece::K3bar: return make_standard(StandardPiece::K3);
        default: return *this;
      }
    }
    return make_opaque("~" + render(), spin());
  }

  bool operator==(const Piece&) const = default;
};

/// Homeomorphism fingerprint of a closed oriented 4-manifold.
struct Fingerprint {
  bool simply_connected = true;
  std::int64_t b1 = 0;
  std::int64_t b2_plus = 0;
  std::int64_t b2_minus = 0;
  bool spin = true;
  bool operator==(const Fingerprint&) const = default;
};

/// nCP2 # mCP2bar (odd) or sign * (n(S2xS2) # mK3) (even).
struct DissolvedForm {
  enum class Parity { Odd, Even };
  Parity parity = Parity::Even;
  std::int64_t n = 0;
  std::int64_t m = 0;
  int sign = 1;

  Fingerprint fingerprint() const {
    Fingerprint f;
    if (parity == Parity::Odd) {
      f.b2_plus = n;
      f.b2_minus = m;
      f.spin = (n == 0 && m == 0);
    } else {
      f.b2_plus = n + 3 * m;
      f.b2_minus = n + 19 * m;
      if (sign < 0) std::swap(f.b2_plus, f.b2_minus);
      f.spin = true;
    }
    return f;
  }

  std::string render() const {
    std::vector<std::string> parts;
    if (parity == Parity::Odd) {
      if (n) parts.push_back(std::to_string(n) + "CP2");
      if (m) parts.push_back(std::to_string(m) + "CP2bar");
    } else {
      if (m) parts.push_back(std::to_string(m) + "K3");
      if (n) parts.push_back(std::to_string(n) + "(S2xS2)");
    }
    if (parts.empty()) return "S4";
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " # " : "") + parts[i];
    if (parity == Parity::Even && sign < 0) s = "-(" + s + ")";
    return s;
  }

  bool operator==(const DissolvedForm&) const = default;
};

struct ManifoldDescriptor {
  std::string label;
  bool simply_connected = true;
  std::int64_t b1 = 0;
  std::int64_t b2_plus = 0;
  std::int64_t b2_minus = 0;
  std::vector<std::int64_t> torsion_h1;
  bool spin = true;
  bool simple_type = false;
  SwInvariant sw = SwInvariant::unknown();
  IntersectionData intersection;
  Capabilities capabilities;
  std::vector<Piece> pieces;
  /// The descriptor before any knot surgery, when this one came from one.
  std::shared_ptr<const ManifoldDescriptor> unsurgered;
  std::vector<std::string> trace;

  std::int64_t b2() const { return b2_plus + b2_minus; }
  std::int64_t euler_characteristic() const { return 2 - 2 * b1 + b2(); }
  std::int64_t signature() const { return b2_plus - b2_minus; }

  Fingerprint fingerprint() const {
    return {simply_connected, b1, b2_plus, b2_minus, spin};
  }

  /// Ambient group of the SW polynomial.
  FgAbelianGroup sw_group() const { return FgAbelianGroup(intersection.tracked_basis); }

  std::int64_t square(const GroupElement& c) const {
    return intersection.pairing(c.free, c.free);
  }
};

/// Every monomial's class c has c.c = 2 chi + 3 sigma.
inline bool satisfies_simple_type_squares(const ManifoldDescriptor& m) {
  if (!m.sw.is_known()) return true;
  std::int64_t target = 2 * m.euler_characteristic() + 3 * m.signature();
  for (const auto& [c, coeff] : m.sw.polynomial().terms())
    if (m.square(c) != target) return false;
  return true;
}

inline void check_invariants(const ManifoldDescriptor& m) {
  auto fail = [&](const std::string& why) {
    throw InvalidArgument("descriptor '" + m.label + "': " + why);
  };
  if (m.b1 < 0 || m.b2_plus < 0 || m.b2_minus < 0) fail("Betti numbers must be nonnegative");
  if (m.simply_connected && (m.b1 != 0 || !m.torsion_h1.empty()))
    fail("simply connected manifolds have b1 = 0 and no torsion in H1");
  for (auto t : m.torsion_h1)
    if (t < 2) fail("torsion orders must be >= 2");
  const auto& I = m.intersection;
  if (I.gram.size() != I.tracked_basis.size()) fail("gram size does not match tracked basis");
  for (std::size_t i = 0; i < I.gram.size(); ++i) {
    if (I.gram[i].size() != I.gram.size()) fail("gram must be square");
    for (std::size_t j = 0; j < i; ++j)
      if (I.gram[i][j] != I.gram[j][i]) fail("gram must be symmetric");
  }
  if (I.b2() != m.b2())
    fail("b2 accounting: tracked + untracked ranks = " + std::to_string(I.b2()) +
         " but b2 = " + std::to_string(m.b2()));
  if (m.sw.is_known() && !(m.sw.polynomial().ambient() == m.sw_group()))
    fail("SW polynomial must live over the tracked basis");
  if (m.simple_type && !satisfies_simple_type_squares(m))
    fail("simple type requires c.c = 2chi + 3sigma for every basic class");
}

inline ManifoldDescriptor make_standard(std::string label, StandardPiece p) {
  ManifoldDescriptor m;
  m.label = std::move(label);
  m.capabilities.admits_psc = true;
  m.pieces = {Piece::make_standard(p)};
  switch (p) {
    case StandardPiece::S4:
      m.sw = SwInvariant::known_zero();
      break;
    case StandardPiece::CP2:
      m.b2_plus = 1;
      m.spin = false;
      m.intersection.untracked.plus_one = 1;
      break;
    case StandardPiece::CP2bar:
      m.b2_minus = 1;
      m.spin = false;
      m.intersection.untracked.minus_one = 1;
      break;
    case StandardPiece::S2xS2:
      m.b2_plus = m.b2_minus = 1;
      m.intersection.untracked.hyperbolic = 1;
      break;
    default:
      throw std::logic_error("make_standard: not a rational surface or sphere");
  }
  m.trace.push_back("builtin " + m.label);
  return m;
}

/// Elliptic surface E(n), n >= 2, with tracked fiber T and section S.
inline ManifoldDescriptor elliptic_surface(std::int64_t n) {
  if (n == 1)
    throw GuardViolation(
        "E(1) refused: b2+(E(1)) = 1, outside the hypothesis b2+(M) > 1 "
        "(wall-crossing regime)");
  if (n < 1) throw InvalidArgument("E(n) needs n >= 2");
  ManifoldDescriptor m;
  m.label = "E(" + std::to_string(n) + ")";
  m.b2_plus = 2 * n - 1;
  m.b2_minus = 10 * n - 1;
  m.spin = (n % 2 == 0);
  m.simple_type = true;
  m.capabilities.has_swappable_torus = true;
  m.intersection.tracked_basis = {"T", "S"};
  m.intersection.gram = {{0, 1}, {1, -n}};
  if (m.spin) {
    m.intersection.untracked.hyperbolic = 2 * n - 2;
    m.intersection.untracked.e8_negative = n;
  } else {
    m.intersection.untracked.plus_one = 2 * n - 2;
    m.intersection.untracked.minus_one = 10 * n - 2;
  }
  auto g = m.sw_group();
  auto t = GroupRingElement::variable(g, "T");
  auto tinv = GroupRingElement::variable(g, "T", -1);
  m.sw = SwInvariant::known((t - tinv).pow(static_cast<unsigned>(n - 2)));
  m.pieces = {Piece::make_elliptic(n)};
  m.trace.push_back("builtin " + m.label);
  return m;
}

inline std::vector<std::string> builtin_names() {
  return {"S4", "CP2", "CP2bar", "S2xS2", "K3", "S1xS3", "E"};
}

/// Parameterless builtins; E(n) goes through elliptic_surface.
inline std::optional<ManifoldDescriptor> builtin_manifold(std::string_view name) {
  if (name == "S4") return make_standard("S4", StandardPiece::S4);
  if (name == "CP2") return make_standard("CP2", StandardPiece::CP2);
  if (name == "CP2bar") return make_standard("CP2bar", StandardPiece::CP2bar);
  if (name == "S2xS2") return make_standard("S2xS2", StandardPiece::S2xS2);
  if (name == "K3") {
    auto m = elliptic_surface(2);
    m.label = "K3";
    m.trace = {"builtin K3"};
    return m;
  }
  if (name == "S1xS3") {
    ManifoldDescriptor m;
    m.label = "S1xS3";
    m.simply_connected = false;
    m.b1 = 1;
    m.capabilities.admits_psc = true;
    m.pieces = {Piece::make_opaque("S1xS3", true)};
    m.trace.push_back("builtin S1xS3");
    return m;
  }
  return std::nullopt;
}

/// The dissolved form a simply connected manifold would have, read off its
/// homeomorphism invariants.
inline DissolvedForm homeo_type(const ManifoldDescriptor& m) {
  if (!m.simply_connected)
    throw GuardViolation("homeo_type needs a simply connected manifold: " + m.label);
  DissolvedForm f;
  if (!m.spin) {
    f.parity = DissolvedForm::Parity::Odd;
    f.n = m.b2_plus;
    f.m = m.b2_minus;
    return f;
  }
  std::int64_t sigma = m.signature();
  if (sigma % 16 != 0)
    throw GuardViolation("not representable in dissolved form: spin with signature " +
                         std::to_string(sigma) + " not divisible by 16");
  f.parity = DissolvedForm::Parity::Even;
  f.m = (sigma < 0 ? -sigma : sigma) / 16;
  f.sign = sigma > 0 ? -1 : 1;
  f.n = (sigma > 0 ? m.b2_minus : m.b2_plus) - 3 * f.m;
  if (f.n < 0)
    throw GuardViolation("not representable in dissolved form: needs " +
                         std::to_string(f.n) + " copies of S2xS2");
  return f;
}

/// (c.c - 2 chi - 3 sigma) / 4.
inline std::int64_t expected_sw_dimension(const ManifoldDescriptor& m, const GroupElement& c) {
  if (c.free.size() != m.intersection.tracked_basis.size())
    throw InvalidArgument("class must be given on the tracked basis of " + m.label);
  std::int64_t num = m.square(c) - 2 * m.euler_characteristic() - 3 * m.signature();
  if (num % 4 != 0)
    throw InvalidArgument("not a characteristic class for this form: c.c - 2chi - 3sigma = " +
                          std::to_string(num) + " is not divisible by 4");
  return num / 4;
}

/// Number of mod-2 basic classes; nullopt when SW is Unknown.
inline std::optional<std::size_t> mod2_basic_class_count(const ManifoldDescriptor& m) {
  switch (m.sw.state()) {
    case SwState::Known: return mod2(m.sw.polynomial()).monomial_count();
    case SwState::KnownZero: return 0;
    case SwState::Unknown: return std::nullopt;
  }
  return std::nullopt;
}

/// Orientation reversal: swaps b2+/b2-, negates the form, forgets SW.
inline ManifoldDescriptor reverse_orientation(const ManifoldDescriptor& m) {
  ManifoldDescriptor r = m;
  r.label = "~" + m.label;
  std::swap(r.b2_plus, r.b2_minus);
  for (auto& row : r.intersection.gram)
    for (auto& x : row) x = -x;
  auto& u = r.intersection.untracked;
  std::swap(u.plus_one, u.minus_one);
  std::swap(u.e8_negative, u.e8_positive);
  r.sw = SwInvariant::unknown();
  r.simple_type = false;
  r.capabilities.has_swappable_torus = false;
  r.unsurgered.reset();
  r.pieces.clear();
  for (const auto& p : m.pieces) r.pieces.push_back(p.reversed());
  r.trace.push_back("reverse_orientation");
  return r;
}

}  // namespace swcalc
