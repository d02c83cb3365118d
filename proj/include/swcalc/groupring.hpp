#pragma once

/*
 * Integral group rings Z[G] of finitely generated abelian groups
 *
 *   G = Z^r (+) Z/m_1 (+) ... (+) Z/m_s
 *
 * Every polynomial invariant in swcalc (Seiberg-Witten polynomials,
 * Alexander polynomials, G-monopole polynomials) is an element of such a
 * ring. Elements are finite maps from group elements to nonzero
 * coefficients; torsion exponents are kept as canonical residues so that
 * equality of group elements is structural.
 *
 * Ambient groups are compared by presentation (generator names and
 * torsion orders), not up to isomorphism.
 */

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace swcalc {

using Integer = boost::multiprecision::cpp_int;

using IntMatrix = std::vector<std::vector<std::int64_t>>;

class FgAbelianGroup {
 public:
  struct TorsionGenerator {
    std::int64_t order;
    std::string name;
    bool operator==(const TorsionGenerator&) const = default;
  };

  /// The trivial group.
  FgAbelianGroup() = default;

  FgAbelianGroup(std::vector<std::string> free_names,
                 std::vector<TorsionGenerator> torsion = {})
      : free_names_(std::move(free_names)), torsion_(std::move(torsion)) {
    for (const auto& t : torsion_)
      if (t.order < 2)
        throw InvalidArgument("torsion order must be >= 2, got " +
                              std::to_string(t.order));
    std::stable_sort(torsion_.begin(), torsion_.end(),
                     [](const auto& a, const auto& b) { return a.order < b.order; });
    std::set<std::string> seen;
    for (const auto& n : free_names_)
      if (!seen.insert(n).second)
        throw InvalidArgument("duplicate generator name '" + n + "'");
    for (const auto& t : torsion_)
      if (!seen.insert(t.name).second)
        throw InvalidArgument("duplicate generator name '" + t.name + "'");
  }

  /// Z[t, t^-1] as a group ring: free rank one.
  static FgAbelianGroup laurent(std::string variable = "t") {
    return FgAbelianGroup({std::move(variable)});
  }

  std::size_t free_rank() const noexcept { return free_names_.size(); }
  std::size_t torsion_rank() const noexcept { return torsion_.size(); }
  const std::vector<std::string>& free_names() const noexcept { return free_names_; }
  const std::vector<TorsionGenerator>& torsion() const noexcept { return torsion_; }

  std::vector<std::int64_t> torsion_orders() const {
    std::vector<std::int64_t> out;
    for (const auto& t : torsion_) out.push_back(t.order);
    return out;
  }

  /// Order of the torsion subgroup.
  Integer torsion_size() const {
    Integer n = 1;
    for (const auto& t : torsion_) n *= t.order;
    return n;
  }

  bool is_laurent() const noexcept { return free_rank() == 1 && torsion_.empty(); }

  std::optional<std::size_t> free_index(std::string_view name) const {
    for (std::size_t i = 0; i < free_names_.size(); ++i)
      if (free_names_[i] == name) return i;
    return std::nullopt;
  }

  std::optional<std::size_t> torsion_index(std::string_view name) const {
    for (std::size_t i = 0; i < torsion_.size(); ++i)
      if (torsion_[i].name == name) return i;
    return std::nullopt;
  }

  bool has_name(std::string_view name) const {
    return free_index(name) || torsion_index(name);
  }

  bool operator==(const FgAbelianGroup&) const = default;

 private:
  std::vector<std::string> free_names_;
  std::vector<TorsionGenerator> torsion_;
};

struct GroupElement {
  std::vector<std::int64_t> free;
  std::vector<std::int64_t> torsion;

  // Lexicographic on free exponents, then torsion; this is also the
  // canonical rendering order.
  auto operator<=>(const GroupElement&) const = default;
  bool operator==(const GroupElement&) const = default;

  static GroupElement identity(const FgAbelianGroup& g) {
    return {std::vector<std::int64_t>(g.free_rank(), 0),
            std::vector<std::int64_t>(g.torsion_rank(), 0)};
  }

  bool is_identity() const {
    auto zero = [](std::int64_t e) { return e == 0; };
    return std::all_of(free.begin(), free.end(), zero) &&
           std::all_of(torsion.begin(), torsion.end(), zero);
  }
};

namespace detail {

inline std::int64_t residue(std::int64_t e, std::int64_t m) {
  std::int64_t r = e % m;
  return r < 0 ? r + m : r;
}

}  // namespace detail

inline GroupElement canonical(const FgAbelianGroup& g, GroupElement e) {
  if (e.free.size() != g.free_rank() || e.torsion.size() != g.torsion_rank())
    throw InvalidArgument("group element has the wrong number of coordinates");
  for (std::size_t i = 0; i < e.torsion.size(); ++i)
    e.torsion[i] = detail::residue(e.torsion[i], g.torsion()[i].order);
  return e;
}

inline bool belongs_to(const FgAbelianGroup& g, const GroupElement& e) {
  if (e.free.size() != g.free_rank() || e.torsion.size() != g.torsion_rank())
    return false;
  for (std::size_t i = 0; i < e.torsion.size(); ++i)
    if (e.torsion[i] < 0 || e.torsion[i] >= g.torsion()[i].order) return false;
  return true;
}

inline GroupElement multiply(const FgAbelianGroup& g, const GroupElement& a,
                             const GroupElement& b) {
  GroupElement c = a;
  for (std::size_t i = 0; i < c.free.size(); ++i) c.free[i] += b.free[i];
  for (std::size_t i = 0; i < c.torsion.size(); ++i)
    c.torsion[i] = (c.torsion[i] + b.torsion[i]) % g.torsion()[i].order;
  return c;
}

/// Group ring element with coefficients in `Coeff`.
///
/// Invariants: no stored zero coefficient; every key is a canonical element
/// of ambient().
template <class Coeff>
class BasicGroupRingElement {
 public:
  using coefficient_type = Coeff;
  using term_map = std::map<GroupElement, Coeff>;

  BasicGroupRingElement() = default;
  explicit BasicGroupRingElement(FgAbelianGroup ambient) : ambient_(std::move(ambient)) {}

  static BasicGroupRingElement zero(const FgAbelianGroup& g) {
    return BasicGroupRingElement(g);
  }

  static BasicGroupRingElement constant(const FgAbelianGroup& g, Coeff c) {
    return monomial(g, GroupElement::identity(g), std::move(c));
  }

  static BasicGroupRingElement one(const FgAbelianGroup& g) { return constant(g, Coeff(1)); }

  static BasicGroupRingElement monomial(const FgAbelianGroup& g, GroupElement e,
                                        Coeff c = Coeff(1)) {
    BasicGroupRingElement r(g);
    r.accumulate(canonical(g, std::move(e)), c);
    return r;
  }

  /// The monomial g_i^e for the free generator called `name`.
  static BasicGroupRingElement variable(const FgAbelianGroup& g, std::string_view name,
                                        std::int64_t exponent = 1) {
    GroupElement e = GroupElement::identity(g);
    if (auto i = g.free_index(name))
      e.free[*i] = exponent;
    else if (auto j = g.torsion_index(name))
      e.torsion[*j] = exponent;
    else
      throw InvalidArgument("no generator named '" + std::string(name) + "'");
    return monomial(g, std::move(e));
  }

  /// Laurent polynomial sum_j coeffs[j] t^(lowest + j) in a rank-one group.
  static BasicGroupRingElement laurent(const FgAbelianGroup& g, std::int64_t lowest,
                                       const std::vector<Coeff>& coeffs) {
    if (!g.is_laurent())
      throw Unsupported("laurent construction needs a torsion-free rank-one group");
    BasicGroupRingElement r(g);
    for (std::size_t j = 0; j < coeffs.size(); ++j)
      r.accumulate(GroupElement{{lowest + static_cast<std::int64_t>(j)}, {}}, coeffs[j]);
    return r;
  }

  const FgAbelianGroup& ambient() const noexcept { return ambient_; }
  const term_map& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t monomial_count() const noexcept { return terms_.size(); }

  Coeff coefficient(const GroupElement& e) const {
    auto it = terms_.find(canonical(ambient_, e));
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  /// Sum of coefficients (the augmentation; evaluation at t = 1).
  Coeff augmentation() const {
    Coeff s(0);
    for (const auto& [e, c] : terms_) s += c;
    return s;
  }

  BasicGroupRingElement& operator+=(const BasicGroupRingElement& o) {
    require_same_ambient(o);
    for (const auto& [e, c] : o.terms_) accumulate(e, c);
    return *this;
  }

  BasicGroupRingElement& operator-=(const BasicGroupRingElement& o) {
    require_same_ambient(o);
    for (const auto& [e, c] : o.terms_) accumulate(e, -c);
    return *this;
  }

  BasicGroupRingElement& operator*=(const Coeff& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend BasicGroupRingElement operator+(BasicGroupRingElement a,
                                         const BasicGroupRingElement& b) {
    return a += b;
  }
  friend BasicGroupRingElement operator-(BasicGroupRingElement a,
                                         const BasicGroupRingElement& b) {
    return a -= b;
  }
  friend BasicGroupRingElement operator-(BasicGroupRingElement a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }
  friend BasicGroupRingElement operator*(BasicGroupRingElement a, const Coeff& s) {
    return a *= s;
  }

  /// Convolution product.
  friend BasicGroupRingElement operator*(const BasicGroupRingElement& a,
                                         const BasicGroupRingElement& b) {
    a.require_same_ambient(b);
    BasicGroupRingElement r(a.ambient_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_)
        r.accumulate(multiply(a.ambient_, ea, eb), ca * cb);
    return r;
  }

  BasicGroupRingElement& operator*=(const BasicGroupRingElement& o) {
    return *this = *this * o;
  }

  BasicGroupRingElement pow(unsigned exponent) const {
    BasicGroupRingElement result = one(ambient_);
    BasicGroupRingElement base = *this;
    while (exponent) {
      if (exponent & 1u) result *= base;
      exponent >>= 1u;
      if (exponent) base *= base;
    }
    return result;
  }

  bool operator==(const BasicGroupRingElement&) const = default;

  /// Adds c to the coefficient of e (e must already be canonical).
  void accumulate(const GroupElement& e, const Coeff& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

 private:
  void require_same_ambient(const BasicGroupRingElement& o) const {
    if (!(ambient_ == o.ambient_))
      throw AmbientMismatch("group ring operands have different ambient groups");
  }

  FgAbelianGroup ambient_;
  term_map terms_;
};

using GroupRingElement = BasicGroupRingElement<Integer>;

/// Reduce coefficients to {0, 1}.
template <class Coeff>
BasicGroupRingElement<Coeff> mod2(const BasicGroupRingElement<Coeff>& a) {
  BasicGroupRingElement<Coeff> r(a.ambient());
  for (const auto& [e, c] : a.terms())
    if (c % 2 != 0) r.accumulate(e, Coeff(1));
  return r;
}

/// t -> t^s on a single-variable Laurent ring.
template <class Coeff>
BasicGroupRingElement<Coeff> substitute_power(const BasicGroupRingElement<Coeff>& a,
                                              std::int64_t s) {
  if (!a.ambient().is_laurent())
    throw Unsupported("substitute_power needs a single-variable Laurent ring");
  BasicGroupRingElement<Coeff> r(a.ambient());
  for (const auto& [e, c] : a.terms()) r.accumulate(GroupElement{{e.free[0] * s}, {}}, c);
  return r;
}

/// Index map from source generators to target generators.
struct Injection {
  std::vector<std::size_t> free_map;
  std::vector<std::size_t> torsion_map;

  /// Match generators by name.
  static Injection by_name(const FgAbelianGroup& source, const FgAbelianGroup& target) {
    Injection inj;
    for (const auto& n : source.free_names()) {
      auto i = target.free_index(n);
      if (!i) throw InvalidArgument("target group has no free generator '" + n + "'");
      inj.free_map.push_back(*i);
    }
    for (const auto& t : source.torsion()) {
      auto i = target.torsion_index(t.name);
      if (!i) throw InvalidArgument("target group has no torsion generator '" + t.name + "'");
      inj.torsion_map.push_back(*i);
    }
    return inj;
  }
};

template <class Coeff>
BasicGroupRingElement<Coeff> embed(const BasicGroupRingElement<Coeff>& a,
                                   const FgAbelianGroup& target, const Injection& inj) {
  const FgAbelianGroup& src = a.ambient();
  if (inj.free_map.size() != src.free_rank() || inj.torsion_map.size() != src.torsion_rank())
    throw InvalidArgument("injection does not cover every source generator");
  std::set<std::size_t> used;
  for (std::size_t i : inj.free_map)
    if (i >= target.free_rank() || !used.insert(i).second)
      throw InvalidArgument("free generators must map to distinct free target generators");
  used.clear();
  for (std::size_t i = 0; i < inj.torsion_map.size(); ++i) {
    std::size_t j = inj.torsion_map[i];
    if (j >= target.torsion_rank() || !used.insert(j).second)
      throw InvalidArgument("torsion generators must map to distinct torsion target generators");
    if (target.torsion()[j].order != src.torsion()[i].order)
      throw InvalidArgument("torsion generator of order " +
                            std::to_string(src.torsion()[i].order) +
                            " cannot map to one of order " +
                            std::to_string(target.torsion()[j].order));
  }
  BasicGroupRingElement<Coeff> r(target);
  for (const auto& [e, c] : a.terms()) {
    GroupElement m = GroupElement::identity(target);
    for (std::size_t i = 0; i < e.free.size(); ++i) m.free[inj.free_map[i]] = e.free[i];
    for (std::size_t i = 0; i < e.torsion.size(); ++i)
      m.torsion[inj.torsion_map[i]] = e.torsion[i];
    r.accumulate(m, c);
  }
  return r;
}

template <class Coeff>
BasicGroupRingElement<Coeff> embed(const BasicGroupRingElement<Coeff>& a,
                                   const FgAbelianGroup& target) {
  return embed(a, target, Injection::by_name(a.ambient(), target));
}

/// Sum of all elements of the torsion subgroup of g.
template <class Coeff = Integer>
BasicGroupRingElement<Coeff> torsion_sum(const FgAbelianGroup& g) {
  auto r = BasicGroupRingElement<Coeff>::one(g);
  for (const auto& t : g.torsion()) {
    BasicGroupRingElement<Coeff> cyc(g);
    for (std::int64_t e = 0; e < t.order; ++e)
      cyc += BasicGroupRingElement<Coeff>::variable(g, t.name, e);
    r *= cyc;
  }
  return r;
}

inline std::string render_monomial(const FgAbelianGroup& g, const GroupElement& e) {
  std::string out;
  auto factor = [&](const std::string& name, std::int64_t exp) {
    if (exp == 0) return;
    if (!out.empty()) out += "*";
    out += name;
    if (exp != 1) out += "^" + std::to_string(exp);
  };
  for (std::size_t i = 0; i < e.free.size(); ++i) factor(g.free_names()[i], e.free[i]);
  for (std::size_t i = 0; i < e.torsion.size(); ++i) factor(g.torsion()[i].name, e.torsion[i]);
  return out;
}

/// Canonical text form, e.g. "T^-2 + 1 + T^2" or "-2*T*E1^-1 + a".
template <class Coeff>
std::string to_string(const BasicGroupRingElement<Coeff>& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : a.terms()) {
    bool negative = c < 0;
    Coeff mag = negative ? Coeff(-c) : c;
    std::string mono = render_monomial(a.ambient(), e);
    std::string body;
    if (mono.empty()) {
      std::ostringstream os;
      os << mag;
      body = os.str();
    } else if (mag == 1) {
      body = mono;
    } else {
      std::ostringstream os;
      os << mag;
      body = os.str() + "*" + mono;
    }
    if (first)
      out += (negative ? "-" : "") + body;
    else
      out += (negative ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

}  // namespace swcalc
