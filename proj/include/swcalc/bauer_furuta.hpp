#pragma once

/*
 * Symbolic smash-product calculus for (equivariant) Bauer-Furuta classes.
 *
 *   BF(S4)                     -> Id
 *   BFG(k*M # N, Z_k)          -> BF(M) ^ BFG(N, Z_k)
 *   BFG(N, Z_k), N eligible,
 *                nu(N) = 0     -> Id
 *   Id ^ x                     -> x
 *
 * Smash is associative and commutative, so the normal form is a flat,
 * sorted list of atoms.
 */

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "equivariant.hpp"

namespace swcalc {

struct BFAtom {
  enum class Kind { Id, BF, BFG };
  Kind kind = Kind::Id;

  // BF: the manifold; BFG: the summand M of k*M # N (empty for a bare N).
  std::string m_label;
  bool m_nontrivial = false;
  std::int64_t copies = 0;

  // BFG only.
  std::string n_label;
  bool n_eligible = false;
  std::int64_t n_nu = 0;
  std::int64_t k = 0;

  auto operator<=>(const BFAtom&) const = default;

  static BFAtom id() { return {}; }

  static BFAtom bf(std::string label, bool nontrivial) {
    BFAtom a;
    a.kind = Kind::BF;
    a.m_label = std::move(label);
    a.m_nontrivial = nontrivial;
    return a;
  }

  static BFAtom bfg(const NCatalogEntry& n, std::int64_t k) {
    BFAtom a;
    a.kind = Kind::BFG;
    a.n_label = n.descriptor.label;
    a.n_eligible = n.eligible();
    a.n_nu = n.eq.b1G;
    a.k = k;
    return a;
  }

  /// BFG of copies*M # N under Z_k.
  static BFAtom bfg(const BFAtom& m, std::int64_t copies, const NCatalogEntry& n, std::int64_t k) {
    if (m.kind != Kind::BF) throw InvalidArgument("BFG summand must be a BF atom");
    if (copies < 1) throw InvalidArgument("number of copies must be >= 1");
    BFAtom a = bfg(n, k);
    a.m_label = m.m_label;
    a.m_nontrivial = m.m_nontrivial;
    a.copies = copies;
    return a;
  }

  std::string render() const {
    switch (kind) {
      case Kind::Id: return "Id";
      case Kind::BF: return "BF(" + m_label + ")";
      case Kind::BFG: {
        std::string inner = n_label;
        if (copies > 0) inner = std::to_string(copies) + "*" + m_label + " # " + n_label;
        return "BFG(" + inner + ", Z/" + std::to_string(k) + ")";
      }
    }
    return "?";
  }
};

/// BF atom of a closed manifold; nontrivial when SW is odd somewhere.
inline BFAtom bf_atom(const ManifoldDescriptor& m) {
  auto count = mod2_basic_class_count(m);
  return BFAtom::bf(m.label, count && *count > 0);
}

struct BFExpr {
  std::variant<BFAtom, std::vector<BFExpr>> node;

  static BFExpr atom(BFAtom a) { return {std::move(a)}; }
  static BFExpr smash(std::vector<BFExpr> factors) { return {std::move(factors)}; }

  bool is_atom() const { return std::holds_alternative<BFAtom>(node); }

  /// Factors of a flattened expression (a bare atom is a one-factor smash).
  std::vector<BFAtom> flatten() const {
    std::vector<BFAtom> out;
    collect(out);
    return out;
  }

  std::string render() const {
    if (is_atom()) return std::get<BFAtom>(node).render();
    const auto& fs = std::get<std::vector<BFExpr>>(node);
    if (fs.empty()) return "Id";
    std::string s;
    for (std::size_t i = 0; i < fs.size(); ++i)
      s += (i ? " ^ " : "") + (fs[i].is_atom() ? fs[i].render() : "(" + fs[i].render() + ")");
    return s;
  }

  bool operator==(const BFExpr& o) const { return node == o.node; }

 private:
  void collect(std::vector<BFAtom>& out) const {
    if (is_atom()) {
      out.push_back(std::get<BFAtom>(node));
      return;
    }
    for (const auto& f : std::get<std::vector<BFExpr>>(node)) f.collect(out);
  }
};

namespace detail {

// One rewrite of a single atom, or nullopt if none applies.
inline std::optional<std::vector<BFAtom>> bf_rewrite(const BFAtom& a, std::string& rule) {
  using K = BFAtom::Kind;
  if (a.kind == K::BF && a.m_label == "S4") {
    rule = "BF(S4) -> Id";
    return std::vector<BFAtom>{BFAtom::id()};
  }
  if (a.kind == K::BFG && a.copies > 0 && a.copies == a.k) {
    BFAtom n = a;
    n.m_label.clear();
    n.m_nontrivial = false;
    n.copies = 0;
    BFAtom m = BFAtom::bf(a.m_label, a.m_nontrivial);
    rule = a.render() + " -> " + m.render() + " ^ " + n.render();
    return std::vector<BFAtom>{m, n};
  }
  if (a.kind == K::BFG && a.copies == 0 && a.n_eligible && a.n_nu == 0) {
    rule = a.render() + " -> Id";
    return std::vector<BFAtom>{BFAtom::id()};
  }
  return std::nullopt;
}

}  // namespace detail

/// Rewrites to the flat sorted normal form; optional trace of applied rules.
inline BFExpr bf_simplify(const BFExpr& e, std::vector<std::string>* trace = nullptr) {
  std::vector<BFAtom> work = e.flatten();
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<BFAtom> next;
    for (const auto& a : work) {
      std::string rule;
      if (auto r = detail::bf_rewrite(a, rule)) {
        next.insert(next.end(), r->begin(), r->end());
        if (trace) trace->push_back(rule);
        changed = true;
      } else {
        next.push_back(a);
      }
    }
    work = std::move(next);
  }
  std::erase_if(work, [](const BFAtom& a) { return a.kind == BFAtom::Kind::Id; });
  std::sort(work.begin(), work.end());
  if (work.empty()) return BFExpr::atom(BFAtom::id());
  if (work.size() == 1) return BFExpr::atom(work.front());
  std::vector<BFExpr> fs;
  for (auto& a : work) fs.push_back(BFExpr::atom(std::move(a)));
  return BFExpr::smash(std::move(fs));
}

enum class BFVerdict { Nontrivial, Unknown };

inline const char* to_string(BFVerdict v) {
  return v == BFVerdict::Nontrivial ? "Nontrivial" : "Unknown";
}

/// Nontrivial when the normal form is Id or one BF atom flagged nontrivial.
inline BFVerdict bf_verdict(const BFExpr& e) {
  BFExpr nf = bf_simplify(e);
  if (!nf.is_atom()) return BFVerdict::Unknown;
  const auto& a = std::get<BFAtom>(nf.node);
  if (a.kind == BFAtom::Kind::Id) return BFVerdict::Nontrivial;
  if (a.kind == BFAtom::Kind::BF && a.m_nontrivial) return BFVerdict::Nontrivial;
  return BFVerdict::Unknown;
}

}  // namespace swcalc
