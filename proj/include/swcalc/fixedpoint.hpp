#pragma once

/*
 * Finite model of the fixed points of a cyclic gluing action.
 *
 * A point of the glued moduli space is a k-tuple of angles (theta_1, ...,
 * theta_k) in R/Z, one gauge rotation per summand, taken modulo a global
 * rotation; the normal form has theta_k = 0. The generator shifts the tuple
 * cyclically and adds per-summand offsets sigma_i with sum sigma_i = 0.
 *
 * Fixed points: sigma^* t = t + theta (a global rotation) forces
 * k theta = 0, so theta = j/k and there are exactly k solutions. Only the
 * theta = 0 component consists of invariant configurations.
 */

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "error.hpp"
#include "groupring.hpp"

namespace swcalc {

using Rational = boost::rational<std::int64_t>;

/// Representative of x mod 1 in [0, 1).
inline Rational mod_one(Rational x) {
  std::int64_t fl = x.numerator() / x.denominator();
  if (x.numerator() < 0 && x.numerator() % x.denominator() != 0) --fl;
  return x - fl;
}

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// k angles mod 1 in gauge normal form (last entry 0).
class AngleTuple {
 public:
  /// Reduces mod 1 and normalizes the last coordinate to 0.
  explicit AngleTuple(std::vector<Rational> angles) : angles_(std::move(angles)) {
    if (angles_.empty()) throw InvalidArgument("angle tuple needs k >= 1 entries");
    Rational last = angles_.back();
    for (auto& a : angles_) a = mod_one(a - last);
  }

  std::size_t size() const noexcept { return angles_.size(); }
  const std::vector<Rational>& angles() const noexcept { return angles_; }
  const Rational& operator[](std::size_t i) const { return angles_[i]; }

  bool operator==(const AngleTuple&) const = default;
  bool operator<(const AngleTuple& o) const { return angles_ < o.angles_; }

  std::string render() const {
    std::string s = "(";
    for (std::size_t i = 0; i < angles_.size(); ++i) s += (i ? ", " : "") + to_string(angles_[i]);
    return s + ")";
  }

 private:
  std::vector<Rational> angles_;
};

inline void require_balanced(const std::vector<Rational>& offsets, std::size_t k) {
  if (offsets.size() != k)
    throw InvalidArgument("need exactly " + std::to_string(k) + " offsets");
  Rational sum = std::accumulate(offsets.begin(), offsets.end(), Rational(0));
  if (mod_one(sum).numerator() != 0)
    throw InvalidArgument("offsets must sum to 0 mod 1, got " + to_string(mod_one(sum)));
}

/// sigma^*(t_1, ..., t_k) = (t_k + s_k, t_1 + s_1, ..., t_{k-1} + s_{k-1}),
/// rotated globally by theta, then put back in normal form.
inline AngleTuple apply_generator(const AngleTuple& t, const Rational& theta,
                                  const std::vector<Rational>& offsets) {
  std::size_t k = t.size();
  require_balanced(offsets, k);
  std::vector<Rational> out(k);
  out[0] = t[k - 1] + offsets[k - 1];
  for (std::size_t i = 1; i < k; ++i) out[i] = t[i - 1] + offsets[i - 1];
  for (auto& a : out) a += theta;
  return AngleTuple(std::move(out));
}

struct FixedPoint {
  Rational theta;
  AngleTuple tuple;
};

/// The k solutions theta = j/k. With offsets sigma the tuple is
/// ((k-1)theta - sum_{i<k} sigma_i, ..., theta - sigma_{k-1}, 0); with zero
/// offsets it is ((k-1)theta, ..., theta, 0).
inline std::vector<FixedPoint> solve_fixed_points(std::size_t k,
                                                  const std::vector<Rational>& offsets) {
  if (k < 1) throw InvalidArgument("k must be >= 1");
  require_balanced(offsets, k);
  std::vector<FixedPoint> out;
  auto kk = static_cast<std::int64_t>(k);
  for (std::int64_t j = 0; j < kk; ++j) {
    Rational theta(j, kk);
    std::vector<Rational> angles(k);
    for (std::size_t i = 0; i < k; ++i) {
      Rational tail = 0;
      for (std::size_t m = i; m + 1 < k; ++m) tail += offsets[m];
      angles[i] = Rational(kk - 1 - static_cast<std::int64_t>(i)) * theta - tail;
    }
    out.push_back({theta, AngleTuple(std::move(angles))});
  }
  return out;
}

inline std::vector<FixedPoint> solve_fixed_points(std::size_t k) {
  return solve_fixed_points(k, std::vector<Rational>(k, Rational(0)));
}

/// The theta = 0 component: the only one made of invariant configurations.
inline std::vector<FixedPoint> invariant_locus(std::size_t k) {
  auto all = solve_fixed_points(k);
  std::vector<FixedPoint> out;
  std::copy_if(all.begin(), all.end(), std::back_inserter(out),
               [](const FixedPoint& f) { return f.theta.numerator() == 0; });
  return out;
}

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Integer matrix D with D^k = I, acting on H^1 of a torus.
class TorusAutomorphism {
 public:
  TorusAutomorphism(IntMatrix d, std::int64_t order) : d_(std::move(d)), order_(order) {
    if (order_ < 1) throw InvalidArgument("order must be >= 1");
    for (const auto& row : d_)
      if (row.size() != d_.size()) throw InvalidArgument("matrix must be square");
    IntMatrix p = identity(d_.size());
    for (std::int64_t i = 0; i < order_; ++i) p = multiply(p, d_);
    if (p != identity(d_.size()))
      throw InvalidArgument("D^" + std::to_string(order_) + " != I");
  }

  const IntMatrix& matrix() const noexcept { return d_; }
  std::int64_t order() const noexcept { return order_; }
  std::size_t dimension() const noexcept { return d_.size(); }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
  }

  static IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    std::size_t n = a.size();
    IntMatrix c(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][l] * b[l][j];
    return c;
  }

 private:
  IntMatrix d_;
  std::int64_t order_;
};

namespace detail {

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(RationalMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0, r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].numerator() == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Rational inv = Rational(1) / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].numerator() == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline RationalMatrix kernel(RationalMatrix a) {
  std::size_t cols = a.empty() ? 0 : a[0].size();
  auto pivots = rref(a);
  RationalMatrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::size_t rank_of(RationalMatrix a) { return rref(a).size(); }

}  // namespace detail

struct FixedSubtorus {
  std::size_t dimension = 0;
  RationalMatrix basis;         // basis of ker(D - I)
  RationalMatrix projector;     // (1/k) sum_i D^i
  bool projector_idempotent = false;
  bool projector_image_matches = false;
};

inline FixedSubtorus fixed_subtorus(const TorusAutomorphism& aut) {
  std::size_t n = aut.dimension();
  const IntMatrix& d = aut.matrix();
  RationalMatrix dm(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dm[i][j] = d[i][j] - (i == j ? 1 : 0);

  FixedSubtorus out;
  out.basis = detail::kernel(dm);
  out.dimension = out.basis.size();

  RationalMatrix p(n, std::vector<Rational>(n, Rational(0)));
  IntMatrix power = TorusAutomorphism::identity(n);
  for (std::int64_t i = 0; i < aut.order(); ++i) {
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) p[r][c] += Rational(power[r][c], aut.order());
    power = TorusAutomorphism::multiply(power, d);
  }
  out.projector = p;

  RationalMatrix p2(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t c = 0; c < n; ++c) p2[r][c] += p[r][l] * p[l][c];
  out.projector_idempotent = (p2 == p);

  // image(P) = ker(D - I): (D - I) P = 0 and rank P = dim ker.
  bool annihilated = true;
  for (std::size_t r = 0; r < n && annihilated; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Rational s = 0;
      for (std::size_t l = 0; l < n; ++l) s += dm[r][l] * p[l][c];
      if (s.numerator() != 0) {
        annihilated = false;
        break;
      }
    }
  out.projector_image_matches = annihilated && detail::rank_of(p) == out.dimension;
  return out;
}

}  // namespace swcalc
