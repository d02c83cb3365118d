#pragma once

/*
 * Unimodular negative definite integral forms.
 *
 * A vector c is characteristic when c.x = x.x (mod 2) for every x. For a
 * form that diagonalizes to -I over Z, every characteristic c has odd
 * coordinates in the diagonal basis, so c.c <= -rank with equality at the
 * all-ones vector. Even forms (E8) have 0 as a characteristic vector and
 * break the bound; that is the lattice-level content of Donaldson's theorem.
 *
 * Box searches run in lexicographic order with every coordinate going from
 * +bound down to -bound; ties go to the first vector found.
 */

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "groupring.hpp"
#include "manifold.hpp"

namespace swcalc {

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(const IntMatrix& m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline IntMatrix leading_block(const IntMatrix& m, std::size_t k) {
  IntMatrix b(k, std::vector<std::int64_t>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) b[i][j] = m[i][j];
  return b;
}

class QuadraticForm {
 public:
  /// Validates symmetry, |det| = 1 and negative definiteness.
  explicit QuadraticForm(IntMatrix gram) : gram_(std::move(gram)) {
    std::size_t n = gram_.size();
    for (const auto& row : gram_)
      if (row.size() != n) throw InvalidArgument("gram matrix must be square");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (gram_[i][j] != gram_[j][i]) throw InvalidArgument("gram matrix must be symmetric");
    // Sylvester: the k-th leading minor of a negative definite form has sign (-1)^k.
    for (std::size_t k = 1; k <= n; ++k) {
      Integer minor = determinant(leading_block(gram_, k));
      if ((k % 2 == 1 && minor >= 0) || (k % 2 == 0 && minor <= 0))
        throw InvalidArgument("form is not negative definite (leading minor " +
                              std::to_string(k) + " = " + minor.str() + ")");
    }
    Integer det = determinant(gram_);
    if (det != 1 && det != -1)
      throw InvalidArgument("form is not unimodular (det = " + det.str() + ")");
  }

  static QuadraticForm diagonal(std::size_t rank) {
    IntMatrix g(rank, std::vector<std::int64_t>(rank, 0));
    for (std::size_t i = 0; i < rank; ++i) g[i][i] = -1;
    return QuadraticForm(std::move(g));
  }

  /// Negative of the E8 Cartan matrix (Bourbaki labelling).
  static QuadraticForm e8() {
    IntMatrix g(8, std::vector<std::int64_t>(8, 0));
    for (int i = 0; i < 8; ++i) g[i][i] = -2;
    const int edges[][2] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
    for (const auto& e : edges) g[e[0]][e[1]] = g[e[1]][e[0]] = 1;
    return QuadraticForm(std::move(g));
  }

  std::size_t rank() const noexcept { return gram_.size(); }
  const IntMatrix& gram() const noexcept { return gram_; }

  bool is_even() const {
    for (std::size_t i = 0; i < rank(); ++i)
      if (gram_[i][i] % 2 != 0) return false;
    return true;
  }

  std::int64_t pair(std::span<const std::int64_t> u, std::span<const std::int64_t> v) const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j) s += u[i] * gram_[i][j] * v[j];
    return s;
  }

  std::int64_t square(std::span<const std::int64_t> v) const { return pair(v, v); }

  bool is_characteristic(std::span<const std::int64_t> c) const {
    for (std::size_t i = 0; i < rank(); ++i) {
      std::int64_t ci = 0;
      for (std::size_t j = 0; j < rank(); ++j) ci += gram_[i][j] * c[j];
      if ((ci - gram_[i][i]) % 2 != 0) return false;
    }
    return true;
  }

 private:
  IntMatrix gram_;
};

/// Visits every integer vector in [-bound, bound]^rank, descending lexicographic.
inline void for_each_in_box(std::size_t rank, std::int64_t bound,
                            const std::function<void(const std::vector<std::int64_t>&)>& f) {
  std::vector<std::int64_t> v(rank, bound);
  for (;;) {
    f(v);
    std::size_t i = rank;
    while (i > 0) {
      --i;
      if (v[i] > -bound) {
        --v[i];
        for (std::size_t j = i + 1; j < rank; ++j) v[j] = bound;
        break;
      }
      if (i == 0) return;
    }
    if (rank == 0) return;
  }
}

inline std::vector<std::vector<std::int64_t>> characteristic_vectors(const QuadraticForm& q,
                                                                    std::int64_t bound) {
  if (bound < 1) throw InvalidArgument("search bound must be >= 1");
  std::vector<std::vector<std::int64_t>> out;
  for_each_in_box(q.rank(), bound, [&](const std::vector<std::int64_t>& c) {
    if (q.is_characteristic(c)) out.push_back(c);
  });
  return out;
}

struct CharacteristicMax {
  enum class Status {
    Certified,           // max = -rank
    ExceedsCertificate,  // max > -rank: the form cannot diagonalize to -I
    BoundLimited         // max < -rank or nothing found: the box is too small
  };
  std::optional<std::int64_t> value;
  std::vector<std::int64_t> achiever;
  Status status = Status::BoundLimited;

  bool bound_limited() const { return status == Status::BoundLimited; }
};

inline const char* to_string(CharacteristicMax::Status s) {
  switch (s) {
    case CharacteristicMax::Status::Certified: return "certified";
    case CharacteristicMax::Status::ExceedsCertificate: return "exceeds_certificate";
    case CharacteristicMax::Status::BoundLimited: return "bound_limited";
  }
  return "?";
}

inline CharacteristicMax max_characteristic_square(const QuadraticForm& q, std::int64_t bound) {
  if (bound < 1) throw InvalidArgument("search bound must be >= 1");
  CharacteristicMax r;
  for_each_in_box(q.rank(), bound, [&](const std::vector<std::int64_t>& c) {
    if (!q.is_characteristic(c)) return;
    std::int64_t s = q.square(c);
    if (!r.value || s > *r.value) {
      r.value = s;
      r.achiever = c;
    }
  });
  auto target = -static_cast<std::int64_t>(q.rank());
  if (!r.value || *r.value < target)
    r.status = CharacteristicMax::Status::BoundLimited;
  else if (*r.value == target)
    r.status = CharacteristicMax::Status::Certified;
  else
    r.status = CharacteristicMax::Status::ExceedsCertificate;
  return r;
}

struct Diagonalization {
  /// Rows are basis vectors alpha_i with alpha_i.alpha_j = -delta_ij.
  std::optional<IntMatrix> basis;
  /// Definite unimodular forms of rank <= 7 always diagonalize, so a miss
  /// there only means the depth was too small.
  bool guaranteed = false;
};

inline constexpr std::size_t kMaxDiagonalizeRank = 8;

inline Diagonalization diagonalize(const QuadraticForm& q, std::int64_t depth) {
  if (q.rank() > kMaxDiagonalizeRank)
    throw Unsupported("diagonalize is limited to rank <= 8, got " + std::to_string(q.rank()));
  if (depth < 1) throw InvalidArgument("search depth must be >= 1");
  Diagonalization out;
  out.guaranteed = q.rank() <= 7;

  std::vector<std::vector<std::int64_t>> units;
  for_each_in_box(q.rank(), depth, [&](const std::vector<std::int64_t>& v) {
    auto first = std::find_if(v.begin(), v.end(), [](std::int64_t x) { return x != 0; });
    if (first != v.end() && *first > 0 && q.square(v) == -1) units.push_back(v);
  });

  IntMatrix chosen;
  std::function<bool(std::size_t)> extend = [&](std::size_t from) {
    if (chosen.size() == q.rank()) return true;
    for (std::size_t i = from; i < units.size(); ++i) {
      bool orthogonal = std::all_of(chosen.begin(), chosen.end(), [&](const auto& u) {
        return q.pair(u, units[i]) == 0;
      });
      if (!orthogonal) continue;
      chosen.push_back(units[i]);
      if (extend(i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (extend(0)) out.basis = chosen;
  return out;
}

struct SpincCertificate {
  std::vector<std::int64_t> c1;  // in the original coordinates
  std::int64_t square = 0;
  IntMatrix basis;
};

/// A characteristic vector of square -rank: the sum of a diagonalizing basis.
inline std::optional<SpincCertificate> spinc_with_max_square(const QuadraticForm& q,
                                                             std::int64_t bound) {
  Diagonalization d = diagonalize(q, bound);
  if (!d.basis) return std::nullopt;
  SpincCertificate cert;
  cert.basis = *d.basis;
  cert.c1.assign(q.rank(), 0);
  for (const auto& a : cert.basis)
    for (std::size_t i = 0; i < q.rank(); ++i) cert.c1[i] += a[i];
  cert.square = q.square(cert.c1);
  if (!q.is_characteristic(cert.c1) || cert.square != -static_cast<std::int64_t>(q.rank()))
    throw std::logic_error("diagonal basis sum failed its characteristic certificate");
  return cert;
}

/// Intersection form of a b2+ = 0 descriptor, assembled from its summands.
inline QuadraticForm definite_form(const ManifoldDescriptor& m) {
  if (m.b2_plus != 0) throw GuardViolation(m.label + " has b2+ > 0; its form is not definite");
  const auto& I = m.intersection;
  if (I.untracked.hyperbolic || I.untracked.plus_one || I.untracked.e8_positive)
    throw GuardViolation(m.label + " has positive summands in its intersection form");
  IntMatrix g;
  auto append = [&g](const IntMatrix& block) {
    std::size_t off = g.size(), n = off + block.size();
    for (auto& row : g) row.resize(n, 0);
    for (const auto& brow : block) {
      std::vector<std::int64_t> row(off, 0);
      row.insert(row.end(), brow.begin(), brow.end());
      g.push_back(std::move(row));
    }
  };
  append(I.gram);
  for (std::int64_t i = 0; i < I.untracked.minus_one; ++i) append({{-1}});
  for (std::int64_t i = 0; i < I.untracked.e8_negative; ++i) append(QuadraticForm::e8().gram());
  return QuadraticForm(std::move(g));
}

}  // namespace swcalc
