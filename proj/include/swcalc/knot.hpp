#pragma once

// Symmetrized Alexander polynomials: the only knot data knot surgery needs.

#include <cstdint>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "groupring.hpp"

namespace swcalc {

using LaurentPoly = GroupRingElement;

/// Symmetric Laurent polynomial in t with Delta(1) = 1.
class AlexanderPoly {
 public:
  /// Delta = 1.
  AlexanderPoly() : poly_(LaurentPoly::one(FgAbelianGroup::laurent("t"))) {}

  static AlexanderPoly unknot() { return AlexanderPoly(); }

  const LaurentPoly& polynomial() const noexcept { return poly_; }
  Integer at_one() const { return poly_.augmentation(); }
  std::size_t term_count() const noexcept { return poly_.monomial_count(); }

  bool operator==(const AlexanderPoly&) const = default;

  friend AlexanderPoly validate(const LaurentPoly& p);

 private:
  explicit AlexanderPoly(LaurentPoly p) : poly_(std::move(p)) {}
  LaurentPoly poly_;
};

/// Checks symmetry and |Delta(1)| = 1; negates when Delta(1) = -1.
inline AlexanderPoly validate(const LaurentPoly& p) {
  if (!p.ambient().is_laurent())
    throw Unsupported("an Alexander polynomial lives in a single-variable Laurent ring");
  for (const auto& [e, c] : p.terms())
    if (p.coefficient(GroupElement{{-e.free[0]}, {}}) != c)
      throw InvalidArgument("Alexander polynomial must be symmetric under t -> t^-1: " +
                            to_string(p));
  Integer one = p.augmentation();
  if (one == 1) return AlexanderPoly(p);
  if (one == -1) return AlexanderPoly(-p);
  throw InvalidArgument("Alexander polynomial must satisfy Delta(1) = +-1, got " +
                        one.str());
}

namespace detail {

// Dense polynomials in t, index = exponent, nonnegative exponents only.
using Dense = std::vector<Integer>;

inline Dense dense_mul(const Dense& a, const Dense& b) {
  Dense r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

inline Dense t_power_minus_one(std::size_t n) {
  Dense r(n + 1, 0);
  r[0] = -1;
  r[n] = 1;
  return r;
}

// Exact long division by a monic divisor; throws if the remainder is nonzero.
inline Dense dense_exact_div(Dense num, const Dense& den) {
  std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) throw std::logic_error("division degree underflow");
  Dense q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    Integer c = num[i];
    if (c == 0) continue;
    q[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (const auto& c : num)
    if (c != 0) throw std::logic_error("polynomial division is not exact");
  return q;
}

}  // namespace detail

/// Alexander polynomial of the (p, q) torus knot:
/// (t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1)), centred at exponent 0.
inline AlexanderPoly torus_knot(std::int64_t p, std::int64_t q) {
  if (p < 2 || q < 2) throw InvalidArgument("torus knot parameters must be >= 2");
  if (std::gcd(p, q) != 1)
    throw InvalidArgument("torus knot parameters must be coprime, got (" +
                          std::to_string(p) + "," + std::to_string(q) + ")");
  using namespace detail;
  auto P = static_cast<std::size_t>(p);
  auto Q = static_cast<std::size_t>(q);
  Dense num = dense_mul(t_power_minus_one(P * Q), t_power_minus_one(1));
  Dense den = dense_mul(t_power_minus_one(P), t_power_minus_one(Q));
  Dense quo = dense_exact_div(num, den);
  std::int64_t shift = (p - 1) * (q - 1) / 2;
  return validate(LaurentPoly::laurent(FgAbelianGroup::laurent("t"), -shift, quo));
}

/// 1 + sum_{j=1}^{2d} (-1)^j (t^{jn} + t^{-jn}).
inline AlexanderPoly alexander_family(std::int64_t d, std::int64_t n) {
  if (d < 1 || n < 1) throw InvalidArgument("alexander_family needs d >= 1 and n >= 1");
  auto g = FgAbelianGroup::laurent("t");
  LaurentPoly p = LaurentPoly::one(g);
  for (std::int64_t j = 1; j <= 2 * d; ++j) {
    Integer sign = (j % 2 == 0) ? 1 : -1;
    p += LaurentPoly::variable(g, "t", j * n) * sign;
    p += LaurentPoly::variable(g, "t", -j * n) * sign;
  }
  return validate(p);
}

/// Coefficients listed from the lowest exponent up; the list must have odd
/// length and is centred at t^0.
inline AlexanderPoly from_coefficients(const std::vector<std::int64_t>& coeffs) {
  if (coeffs.empty() || coeffs.size() % 2 == 0)
    throw InvalidArgument("explicit Alexander coefficient list must have odd length");
  std::vector<Integer> c(coeffs.begin(), coeffs.end());
  auto lowest = -static_cast<std::int64_t>(coeffs.size() / 2);
  return validate(LaurentPoly::laurent(FgAbelianGroup::laurent("t"), lowest, c));
}

/// How a knot is named in expressions and catalog files.
struct KnotSpec {
  struct Unknot {
    bool operator==(const Unknot&) const = default;
  };
  struct Torus {
    std::int64_t p, q;
    bool operator==(const Torus&) const = default;
  };
  struct Family {
    std::int64_t d, n;
    bool operator==(const Family&) const = default;
  };
  struct Coefficients {
    std::vector<std::int64_t> values;
    bool operator==(const Coefficients&) const = default;
  };

  std::variant<Unknot, Torus, Family, Coefficients> value;

  bool operator==(const KnotSpec&) const = default;

  AlexanderPoly alexander() const {
    return std::visit(
        [](const auto& v) -> AlexanderPoly {
          using V = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<V, Unknot>)
            return AlexanderPoly::unknot();
          else if constexpr (std::is_same_v<V, Torus>)
            return torus_knot(v.p, v.q);
          else if constexpr (std::is_same_v<V, Family>)
            return alexander_family(v.d, v.n);
          else
            return from_coefficients(v.values);
        },
        value);
  }

  std::string render() const {
    return std::visit(
        [](const auto& v) -> std::string {
          using V = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<V, Unknot>)
            return "unknot";
          else if constexpr (std::is_same_v<V, Torus>)
            return "torus(" + std::to_string(v.p) + "," + std::to_string(v.q) + ")";
          else if constexpr (std::is_same_v<V, Family>)
            return "family(" + std::to_string(v.d) + "," + std::to_string(v.n) + ")";
          else {
            std::string s = "poly(";
            for (std::size_t i = 0; i < v.values.size(); ++i)
              s += (i ? "," : "") + std::to_string(v.values[i]);
            return s + ")";
          }
        },
        value);
  }
};

}  // namespace swcalc
