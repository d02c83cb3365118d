#pragma once

/*
 * Expression language for manifolds.
 *
 *   expr    := term ('#' term)*
 *   term    := [int '*'] atom
 *   atom    := NAME | NAME '(' int (',' int)* ')'
 *            | 'knot_surgery' '(' expr ',' knotref ')'
 *            | 'logtx' '(' int ',' int ')'
 *            | 'blowup' '(' expr ',' int ')'
 *            | '~' atom
 *            | '(' expr ')'
 *   knotref := 'unknot' | 'torus' '(' int ',' int ')' | 'family' '(' int ',' int ')'
 *            | 'poly' '(' int (',' int)* ')' | NAME
 *
 * Plain NAMEs are builtins or catalog manifolds; a NAME knotref is a
 * catalog knot.
 */

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "equivariant.hpp"
#include "knot.hpp"
#include "manifold.hpp"
#include "spaceform.hpp"
#include "surgery.hpp"

namespace swcalc {

/// Named knots and manifolds loaded from JSON.
struct Catalog {
  std::map<std::string, KnotSpec> knots;
  std::map<std::string, std::string> manifolds;  // name -> expression

  static KnotSpec knot_from_json(const nlohmann::json& j) {
    auto pair = [&](const char* key) {
      auto v = j.at(key).get<std::vector<std::int64_t>>();
      if (v.size() != 2) throw InvalidArgument(std::string(key) + " needs two integers");
      return v;
    };
    if (j.contains("unknot")) return {KnotSpec::Unknot{}};
    if (j.contains("torus")) {
      auto v = pair("torus");
      return {KnotSpec::Torus{v[0], v[1]}};
    }
    if (j.contains("family")) {
      auto v = pair("family");
      return {KnotSpec::Family{v[0], v[1]}};
    }
    if (j.contains("poly"))
      return {KnotSpec::Coefficients{j.at("poly").get<std::vector<std::int64_t>>()}};
    throw InvalidArgument("knot entry needs one of unknot, torus, family, poly");
  }

  static Catalog from_json(const nlohmann::json& j) {
    if (j.contains("schema") && j.at("schema") != "swcalc/1")
      throw InvalidArgument("unsupported catalog schema " + j.at("schema").dump());
    Catalog c;
    if (j.contains("knots"))
      for (const auto& [name, spec] : j.at("knots").items()) {
        KnotSpec k = knot_from_json(spec);
        k.alexander();  // validate now, not at first use
        c.knots.emplace(name, std::move(k));
      }
    if (j.contains("manifolds"))
      for (const auto& [name, e] : j.at("manifolds").items())
        c.manifolds.emplace(name, e.get<std::string>());
    return c;
  }

  static Catalog load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open catalog " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("catalog ") + path + ": " + e.what(), e.byte ? e.byte - 1 : 0);
    }
    return from_json(j);
  }
};

struct KnotRef {
  std::variant<KnotSpec, std::string> ref;  // inline spec or catalog name
  std::size_t position = 0;

  std::string render() const {
    if (auto* s = std::get_if<KnotSpec>(&ref)) return s->render();
    return std::get<std::string>(ref);
  }
  bool operator==(const KnotRef& o) const { return ref == o.ref; }
};

struct Expr {
  enum class Kind { Builtin, ConnSum, Multiple, KnotSurgery, LogTransform, Blowup, Reverse };
  Kind kind = Kind::Builtin;
  std::size_t position = 0;
  std::string name;                 // Builtin
  std::vector<std::int64_t> args;   // Builtin parameters; LogTransform {2n, r}
  std::int64_t count = 0;           // Multiple count; Blowup m
  std::vector<Expr> children;
  std::optional<KnotRef> knot;      // KnotSurgery

  /// Structural equality; positions are ignored.
  bool operator==(const Expr& o) const {
    return kind == o.kind && name == o.name && args == o.args && count == o.count &&
           children == o.children && knot == o.knot;
  }
};

namespace detail {

// Builtin names with their parameter counts (-1: one or more).
inline const std::map<std::string, int>& builtin_arity() {
  static const std::map<std::string, int> m = {
      {"S4", 0},      {"CP2", 0},     {"CP2bar", 0},   {"S2xS2", 0},  {"K3", 0},
      {"S1xS3", 0},   {"E", 1},       {"hat", 1},      {"hat_dic", 1}, {"hat_T24", 0},
      {"hat_O48", 0}, {"hat_I120", 0}, {"S1xL", -1}};
  return m;
}

inline const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {"knot_surgery", "logtx", "blowup"};
  return k;
}

inline const std::set<std::string>& knot_keywords() {
  static const std::set<std::string> k = {"unknot", "torus", "family", "poly"};
  return k;
}

inline std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      bool same = std::tolower(static_cast<unsigned char>(a[i - 1])) ==
                  std::tolower(static_cast<unsigned char>(b[j - 1]));
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (same ? 0 : 1)});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

inline std::vector<std::string> suggest(const std::string& name,
                                        const std::vector<std::string>& candidates) {
  std::vector<std::pair<std::size_t, std::string>> scored;
  std::size_t limit = std::max<std::size_t>(2, name.size() / 3);
  for (const auto& c : candidates) {
    std::size_t d = edit_distance(name, c);
    if (d <= limit) scored.emplace_back(d, c);
  }
  std::sort(scored.begin(), scored.end());
  std::vector<std::string> out;
  for (std::size_t i = 0; i < scored.size() && i < 3; ++i) out.push_back(scored[i].second);
  return out;
}

class Parser {
 public:
  Parser(std::string_view src, const Catalog& cat) : src_(src), cat_(cat) {}

  Expr parse() {
    Expr e = expr();
    skip();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  std::string_view src_;
  const Catalog& cat_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  void expect(char c) {
    skip();
    if (pos_ >= src_.size()) fail(std::string("expected '") + c + "' but input ended");
    if (src_[pos_] != c)
      fail(std::string("expected '") + c + "' but found '" + src_[pos_] + "'");
    ++pos_;
  }

  bool at_digit() {
    skip();
    return pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]));
  }

  std::int64_t integer() {
    skip();
    std::size_t start = pos_;
    bool neg = false;
    if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) {
      neg = src_[pos_] == '-';
      ++pos_;
    }
    if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      pos_ = start;
      fail("expected an integer");
    }
    std::int64_t v = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      int digit = src_[pos_] - '0';
      if (v > (INT64_MAX - digit) / 10) {
        pos_ = start;
        fail("integer literal out of range");
      }
      v = v * 10 + digit;
      ++pos_;
    }
    return neg ? -v : v;
  }

  std::string identifier() {
    skip();
    std::size_t start = pos_;
    if (pos_ >= src_.size() ||
        !(std::isalpha(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      fail(pos_ >= src_.size() ? "expected a name but input ended" : "expected a name");
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                  src_[pos_] == '_' || src_[pos_] == '\''))
      ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  std::vector<std::int64_t> int_list() {
    expect('(');
    std::vector<std::int64_t> v{integer()};
    while (peek(',')) {
      ++pos_;
      v.push_back(integer());
    }
    expect(')');
    return v;
  }

  Expr expr() {
    skip();
    std::size_t start = pos_;
    std::vector<Expr> terms{term()};
    while (peek('#')) {
      ++pos_;
      terms.push_back(term());
    }
    if (terms.size() == 1) return std::move(terms.front());
    Expr e;
    e.kind = Expr::Kind::ConnSum;
    e.position = start;
    e.children = std::move(terms);
    return e;
  }

  Expr term() {
    skip();
    std::size_t start = pos_;
    if (!at_digit()) return atom();
    std::int64_t n = integer();
    if (n < 1) {
      pos_ = start;
      fail("multiplicity must be >= 1");
    }
    expect('*');
    Expr e;
    e.kind = Expr::Kind::Multiple;
    e.position = start;
    e.count = n;
    e.children.push_back(atom());
    return e;
  }

  Expr atom() {
    skip();
    std::size_t start = pos_;
    if (pos_ >= src_.size()) fail("expected a manifold but input ended");
    if (src_[pos_] == '~') {
      ++pos_;
      Expr e;
      e.kind = Expr::Kind::Reverse;
      e.position = start;
      e.children.push_back(atom());
      return e;
    }
    if (src_[pos_] == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    std::string name = identifier();
    Expr e;
    e.position = start;
    if (name == "knot_surgery") {
      e.kind = Expr::Kind::KnotSurgery;
      expect('(');
      e.children.push_back(expr());
      expect(',');
      e.knot = knot_ref();
      expect(')');
      return e;
    }
    if (name == "logtx") {
      e.kind = Expr::Kind::LogTransform;
      std::size_t at = pos_;
      e.args = int_list();
      if (e.args.size() != 2) {
        pos_ = at;
        fail("logtx takes two integers: logtx(2n, r)");
      }
      return e;
    }
    if (name == "blowup") {
      e.kind = Expr::Kind::Blowup;
      expect('(');
      e.children.push_back(expr());
      expect(',');
      std::size_t at = pos_;
      e.count = integer();
      if (e.count < 1) {
        pos_ = at;
        fail("blowup count must be >= 1");
      }
      expect(')');
      return e;
    }
    e.kind = Expr::Kind::Builtin;
    e.name = name;
    auto it = builtin_arity().find(name);
    if (it == builtin_arity().end()) {
      if (cat_.manifolds.count(name)) return e;
      std::vector<std::string> cands;
      for (const auto& [n, a] : builtin_arity()) cands.push_back(n);
      for (const auto& k : keywords()) cands.push_back(k);
      for (const auto& [n, x] : cat_.manifolds) cands.push_back(n);
      throw UnknownName(name, start, suggest(name, cands));
    }
    if (it->second != 0) {
      if (!peek('(')) fail(name + " needs parameters, e.g. " + name + "(2)");
      std::size_t at = pos_;
      e.args = int_list();
      if (it->second > 0 && static_cast<int>(e.args.size()) != it->second) {
        pos_ = at;
        fail(name + " takes " + std::to_string(it->second) + " parameter(s)");
      }
    } else if (peek('(')) {
      fail(name + " takes no parameters");
    }
    return e;
  }

  KnotRef knot_ref() {
    skip();
    KnotRef k;
    k.position = pos_;
    std::string name = identifier();
    if (name == "unknot") {
      k.ref = KnotSpec{KnotSpec::Unknot{}};
    } else if (name == "torus" || name == "family") {
      std::size_t at = pos_;
      auto v = int_list();
      if (v.size() != 2) {
        pos_ = at;
        fail(name + " takes two integers");
      }
      if (name == "torus")
        k.ref = KnotSpec{KnotSpec::Torus{v[0], v[1]}};
      else
        k.ref = KnotSpec{KnotSpec::Family{v[0], v[1]}};
    } else if (name == "poly") {
      k.ref = KnotSpec{KnotSpec::Coefficients{int_list()}};
    } else if (cat_.knots.count(name)) {
      k.ref = name;
    } else {
      std::vector<std::string> cands(knot_keywords().begin(), knot_keywords().end());
      for (const auto& [n, x] : cat_.knots) cands.push_back(n);
      throw UnknownName(name, k.position, suggest(name, cands));
    }
    return k;
  }
};

}  // namespace detail

inline Expr parse(std::string_view input, const Catalog& catalog = {}) {
  return detail::Parser(input, catalog).parse();
}

inline std::string render(const Expr& e);

namespace detail {
inline std::string render_atom(const Expr& e) {
  bool wrap = e.kind == Expr::Kind::ConnSum || e.kind == Expr::Kind::Multiple;
  return wrap ? "(" + render(e) + ")" : render(e);
}
}  // namespace detail

/// Canonical text; parse(render(e)) == e.
inline std::string render(const Expr& e) {
  auto ints = [](const std::vector<std::int64_t>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
  };
  switch (e.kind) {
    case Expr::Kind::Builtin:
      return e.args.empty() ? e.name : e.name + ints(e.args);
    case Expr::Kind::ConnSum: {
      std::string s;
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        const Expr& c = e.children[i];
        s += (i ? " # " : "") + (c.kind == Expr::Kind::ConnSum ? "(" + render(c) + ")" : render(c));
      }
      return s;
    }
    case Expr::Kind::Multiple:
      return std::to_string(e.count) + "*" + detail::render_atom(e.children.at(0));
    case Expr::Kind::KnotSurgery:
      return "knot_surgery(" + render(e.children.at(0)) + ", " + e.knot->render() + ")";
    case Expr::Kind::LogTransform:
      return "logtx" + ints(e.args);
    case Expr::Kind::Blowup:
      return "blowup(" + render(e.children.at(0)) + "," + std::to_string(e.count) + ")";
    case Expr::Kind::Reverse:
      return "~" + detail::render_atom(e.children.at(0));
  }
  return "?";
}

namespace detail {

inline ManifoldDescriptor eval_builtin(const Expr& e) {
  const auto& n = e.name;
  if (auto m = builtin_manifold(n)) return *m;
  if (n == "E") return elliptic_surface(e.args.at(0));
  if (n == "hat") return hat_s1_l(cyclic_group(e.args.at(0))).descriptor;
  if (n == "hat_dic") return hat_s1_l(binary_dihedral(e.args.at(0))).descriptor;
  if (n == "hat_T24") return hat_s1_l(binary_tetrahedral()).descriptor;
  if (n == "hat_O48") return hat_s1_l(binary_octahedral()).descriptor;
  if (n == "hat_I120") return hat_s1_l(binary_icosahedral()).descriptor;
  if (n == "S1xL") return n_s1_lens_sum(2, e.args).descriptor;
  throw std::logic_error("builtin without evaluator: " + n);
}

inline ManifoldDescriptor eval(const Expr& e, const Catalog& cat, std::vector<std::string>& stack);

inline ManifoldDescriptor eval_catalog(const Expr& e, const Catalog& cat,
                                       std::vector<std::string>& stack) {
  if (std::find(stack.begin(), stack.end(), e.name) != stack.end())
    throw InvalidArgument("catalog manifold '" + e.name + "' refers to itself");
  stack.push_back(e.name);
  ManifoldDescriptor m = eval(parse(cat.manifolds.at(e.name), cat), cat, stack);
  stack.pop_back();
  m.label = e.name;
  return m;
}

inline ManifoldDescriptor eval(const Expr& e, const Catalog& cat, std::vector<std::string>& stack) {
  switch (e.kind) {
    case Expr::Kind::Builtin:
      if (cat.manifolds.count(e.name) && !builtin_arity().count(e.name))
        return eval_catalog(e, cat, stack);
      return eval_builtin(e);
    case Expr::Kind::ConnSum: {
      ManifoldDescriptor acc = eval(e.children.front(), cat, stack);
      for (std::size_t i = 1; i < e.children.size(); ++i)
        acc = connected_sum(acc, eval(e.children[i], cat, stack));
      return acc;
    }
    case Expr::Kind::Multiple:
      return connected_sum_power(eval(e.children.at(0), cat, stack), e.count);
    case Expr::Kind::KnotSurgery: {
      const KnotRef& k = *e.knot;
      KnotSpec spec = std::holds_alternative<KnotSpec>(k.ref)
                          ? std::get<KnotSpec>(k.ref)
                          : cat.knots.at(std::get<std::string>(k.ref));
      return knot_surgery(eval(e.children.at(0), cat, stack), spec.alexander(), k.render());
    }
    case Expr::Kind::LogTransform:
      return log_transform(e.args.at(0), e.args.at(1));
    case Expr::Kind::Blowup:
      return blowup(eval(e.children.at(0), cat, stack), e.count);
    case Expr::Kind::Reverse:
      return reverse_orientation(eval(e.children.at(0), cat, stack));
  }
  throw std::logic_error("unhandled expression kind");
}

}  // namespace detail

inline ManifoldDescriptor eval(const Expr& e, const Catalog& catalog = {}) {
  std::vector<std::string> stack;
  return detail::eval(e, catalog, stack);
}

inline ManifoldDescriptor eval(std::string_view input, const Catalog& catalog = {}) {
  return eval(parse(input, catalog), catalog);
}

}  // namespace swcalc
