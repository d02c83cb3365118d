#pragma once

// Command dispatch for the swcalc tool. run_command is the whole program
// minus main(), so tests can drive it with string vectors.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bauer_furuta.hpp"
#include "expr.hpp"
#include "family.hpp"
#include "fixedpoint.hpp"
#include "lattice.hpp"
#include "serialize.hpp"

namespace swcalc {

namespace cli {

enum ExitCode : int { kOk = 0, kGuard = 1, kUsage = 2 };

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string fingerprint_text(const Fingerprint& f) {
  std::ostringstream s;
  s << "simply_connected=" << yes_no(f.simply_connected) << " b1=" << f.b1
    << " b2+=" << f.b2_plus << " b2-=" << f.b2_minus << " spin=" << yes_no(f.spin);
  return s.str();
}

/// "3/4" or "-1" to a rational.
inline Rational parse_rational(const std::string& s) {
  auto bad = [&] { return ParseError("expected a rational like 1/3, got '" + s + "'", 0); };
  try {
    std::size_t used = 0;
    auto slash = s.find('/');
    std::int64_t num = std::stoll(s.substr(0, slash), &used);
    if (used != s.substr(0, slash).size()) throw bad();
    std::int64_t den = 1;
    if (slash != std::string::npos) {
      std::string d = s.substr(slash + 1);
      den = std::stoll(d, &used);
      if (used != d.size()) throw bad();
    }
    if (den == 0) throw bad();
    return Rational(num, den);
  } catch (const std::logic_error&) {
    throw bad();
  }
}

/// N-catalog entry named by a builtin-style expression: S4, CP2bar,
/// hat(l), hat_dic(m), hat_T24, hat_O48, hat_I120, S1xL(p,...).
inline NCatalogEntry n_entry(const std::string& text, std::int64_t k) {
  Expr e = parse(text);
  if (e.kind != Expr::Kind::Builtin)
    throw ParseError("N must be a single catalog piece, got '" + text + "'", e.position);
  const auto& n = e.name;
  if (n == "S4") return n_s4(k);
  if (n == "CP2bar") return n_cp2bar(k);
  if (n == "hat") return hat_s1_l(cyclic_group(e.args.at(0)), k);
  if (n == "hat_dic") return hat_s1_l(binary_dihedral(e.args.at(0)), k);
  if (n == "hat_T24") return hat_s1_l(binary_tetrahedral(), k);
  if (n == "hat_O48") return hat_s1_l(binary_octahedral(), k);
  if (n == "hat_I120") return hat_s1_l(binary_icosahedral(), k);
  if (n == "S1xL") return n_s1_lens_sum(k, e.args);
  throw GuardViolation(n + " is not in the N catalog (S4, CP2bar, hat(l), hat_dic(m), hat_T24, "
                           "hat_O48, hat_I120, S1xL(p,...))");
}

inline QuadraticForm form_from_options(std::int64_t diag, bool e8, const std::string& gram,
                                       const std::string& fixture, const std::string& fixtures) {
  int chosen = (diag > 0) + e8 + !gram.empty() + !fixture.empty();
  if (chosen != 1)
    throw ParseError("choose exactly one of --diag, --e8, --gram, --fixture", 0);
  if (diag > 0) return QuadraticForm::diagonal(static_cast<std::size_t>(diag));
  if (e8) return QuadraticForm::e8();
  nlohmann::json j;
  if (!gram.empty()) {
    try {
      j = nlohmann::json::parse(gram);
    } catch (const nlohmann::json::parse_error& err) {
      throw ParseError(std::string("--gram: ") + err.what(), err.byte ? err.byte - 1 : 0);
    }
  } else {
    std::ifstream in(fixtures);
    if (!in) throw InvalidArgument("cannot open fixture file " + fixtures);
    nlohmann::json all;
    try {
      in >> all;
    } catch (const nlohmann::json::parse_error& err) {
      throw ParseError(std::string("fixture file: ") + err.what(), 0);
    }
    if (!all.contains("forms") || !all["forms"].contains(fixture))
      throw InvalidArgument("no fixture named '" + fixture + "' in " + fixtures);
    j = all["forms"][fixture];
  }
  return QuadraticForm(j.get<IntMatrix>());
}

struct Options {
  std::string format = "json";
  std::string catalog_path;

  std::string expression;

  std::string construction;
  std::int64_t k = 2, l = 2, n = 1, n_prime = 2, m_prime = 1, m = 1, size = 3;
  std::vector<std::int64_t> rs;
  std::string group = "cyclic";

  std::int64_t fp_k = 3;
  std::vector<std::string> offsets;

  std::int64_t diag = 0;
  bool e8 = false;
  std::string gram, fixture, fixtures = "data/lattice_fixtures.json", mode = "max";
  std::int64_t bound = 2;

  std::string bf_manifold, bf_n = "hat(2)";
  std::int64_t bf_copies = 0;
};

inline int cmd_eval(const Options& o, const Catalog& cat, std::ostream& out) {
  ManifoldDescriptor m = eval(o.expression, cat);
  json j = eval_report(o.expression, m);
  if (o.format == "json") {
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << "expression: " << o.expression << "\n"
      << "label: " << m.label << "\n"
      << fingerprint_text(m.fingerprint()) << " chi=" << m.euler_characteristic()
      << " sigma=" << m.signature() << "\n"
      << "SW: " << (m.sw.is_known() ? to_string(m.sw.polynomial()) : to_string(m.sw.state()))
      << "\n";
  if (auto c = mod2_basic_class_count(m)) out << "mod-2 basic classes: " << *c << "\n";
  if (m.simply_connected) {
    out << "homeomorphic to: " << homeo_type(m).render() << "\n";
    auto dv = dissolve(m);
    out << "dissolves to: " << (dv.canonical_form ? dv.canonical_form->render() : "(rules exhausted)")
        << "\n";
  }
  for (const auto& t : m.trace) out << "  " << t << "\n";
  return kOk;
}

inline int cmd_family(const Options& o, std::ostream& out) {
  FamilyParams p;
  p.construction = parse_construction(o.construction);
  p.k = o.k;
  p.l = o.l;
  p.n = o.n;
  p.n_prime = o.n_prime;
  p.m_prime = o.m_prime;
  p.m = o.m;
  p.size = o.size;
  p.multiplicities = o.rs;
  if (o.l >= 2) p.group = space_form_group(o.group, o.l);
  FamilyReport r = exotic_family(p);
  if (o.format == "json") {
    out << to_json(r).dump(2) << "\n";
    return kOk;
  }
  out << "construction: " << to_string(r.params.construction) << " k=" << r.params.k
      << " l=" << r.params.l << "\n"
      << "target: " << r.target_expression << " = "
      << (r.target_dissolved ? r.target_dissolved->render() : "(not dissolved)") << "\n"
      << "N: " << r.n_label << " (" << r.torsion_classes << " torsion classes)\n";
  for (const auto& mem : r.members) {
    out << "  " << mem.label << ": mod-2 classes " << mem.mod2_count << ", G-monopole "
        << mem.gmonopole_count << (mem.count_only ? " (count only)" : "") << "\n";
  }
  out << "counts:";
  for (auto c : r.counts) out << " " << c;
  out << "\nfingerprints equal: " << yes_no(r.fingerprints_equal)
      << "\ncovering consistent: " << yes_no(r.covering.consistent) << " (chi " << r.covering.cover_euler
      << " = " << r.covering.l << " * " << r.covering.base_euler << ")\n"
      << "verdict: " << r.verdict << "\n";
  for (const auto& note : r.notes) out << "note: " << note << "\n";
  return kOk;
}

inline int cmd_fixedpoints(const Options& o, std::ostream& out) {
  if (o.fp_k < 1) throw InvalidArgument("k must be >= 1");
  auto k = static_cast<std::size_t>(o.fp_k);
  std::vector<Rational> offsets(k, Rational(0));
  if (!o.offsets.empty()) {
    if (o.offsets.size() != k)
      throw InvalidArgument("need exactly " + std::to_string(k) + " offsets");
    for (std::size_t i = 0; i < k; ++i) offsets[i] = parse_rational(o.offsets[i]);
  }
  auto pts = solve_fixed_points(k, offsets);
  if (o.format == "json") {
    out << to_json(pts, k).dump(2) << "\n";
    return kOk;
  }
  out << pts.size() << " fixed points for k = " << k << "\n";
  for (const auto& p : pts)
    out << "  theta=" << to_string(p.theta) << "  " << p.tuple.render()
        << (p.theta.numerator() == 0 ? "  invariant" : "") << "\n";
  return kOk;
}

inline int cmd_lattice(const Options& o, std::ostream& out) {
  QuadraticForm q = form_from_options(o.diag, o.e8, o.gram, o.fixture, o.fixtures);
  json j = {{"schema", kSchema}, {"rank", q.rank()}, {"gram", q.gram()}, {"mode", o.mode},
            {"bound", o.bound}};
  std::ostringstream text;
  text << "rank " << q.rank() << ", bound " << o.bound << "\n";
  if (o.mode == "max") {
    auto r = max_characteristic_square(q, o.bound);
    j["result"] = to_json(r);
    text << "max characteristic square: " << (r.value ? std::to_string(*r.value) : "none")
         << " (" << to_string(r.status) << ")\n";
  } else if (o.mode == "chars") {
    auto cs = characteristic_vectors(q, o.bound);
    j["count"] = cs.size();
    j["vectors"] = cs;
    text << cs.size() << " characteristic vectors in the box\n";
  } else if (o.mode == "diagonalize") {
    auto d = diagonalize(q, o.bound);
    j["found"] = d.basis.has_value();
    j["basis"] = d.basis ? json(*d.basis) : json(nullptr);
    j["guaranteed"] = d.guaranteed;
    text << (d.basis ? "diagonal basis found" : "no diagonal basis within the depth")
         << (d.basis || !d.guaranteed ? "" : " (rank <= 7: increase the depth)") << "\n";
  } else if (o.mode == "spinc") {
    auto c = spinc_with_max_square(q, o.bound);
    j["found"] = c.has_value();
    if (c) {
      j["c1"] = c->c1;
      j["square"] = c->square;
      j["basis"] = c->basis;
    }
    text << (c ? "c1^2 = " + std::to_string(c->square) + " certified" : "no certificate found")
         << "\n";
  } else {
    throw ParseError("unknown lattice mode '" + o.mode + "'", 0);
  }
  if (o.format == "json")
    out << j.dump(2) << "\n";
  else
    out << text.str();
  return kOk;
}

inline int cmd_bf(const Options& o, const Catalog& cat, std::ostream& out) {
  NCatalogEntry n = n_entry(o.bf_n, o.k);
  BFAtom atom = BFAtom::bfg(n, o.k);
  if (!o.bf_manifold.empty()) {
    ManifoldDescriptor m = eval(o.bf_manifold, cat);
    atom = BFAtom::bfg(bf_atom(m), o.bf_copies > 0 ? o.bf_copies : o.k, n, o.k);
  }
  BFExpr e = BFExpr::atom(atom);
  std::vector<std::string> steps;
  BFExpr nf = bf_simplify(e, &steps);
  BFVerdict v = bf_verdict(e);
  if (o.format == "json") {
    out << json{{"schema", kSchema},
                {"input", e.render()},
                {"steps", steps},
                {"normal_form", nf.render()},
                {"verdict", to_string(v)}}
               .dump(2)
        << "\n";
    return kOk;
  }
  out << e.render() << "\n";
  for (const auto& s : steps) out << "  " << s << "\n";
  out << "normal form: " << nf.render() << "\nverdict: " << to_string(v) << "\n";
  return kOk;
}

inline int cmd_catalog(const Options& o, const Catalog& cat, std::ostream& out) {
  json knots = json::object(), manifolds = json::object();
  for (const auto& [name, spec] : cat.knots)
    knots[name] = {{"spec", spec.render()}, {"alexander", to_string(spec.alexander().polynomial())}};
  for (const auto& [name, text] : cat.manifolds) manifolds[name] = text;
  json builtins = json::array();
  for (const auto& [name, arity] : detail::builtin_arity())
    builtins.push_back(arity == 0 ? name : name + (arity == 1 ? "(n)" : "(n,...)"));
  if (o.format == "json") {
    out << json{{"schema", kSchema}, {"builtins", builtins}, {"knots", knots},
                {"manifolds", manifolds}}
               .dump(2)
        << "\n";
    return kOk;
  }
  out << "builtins:";
  for (const auto& b : builtins) out << " " << b.get<std::string>();
  out << "\n";
  for (const auto& [name, k] : knots.items())
    out << "knot " << name << " = " << k["spec"].get<std::string>() << "  Delta = "
        << k["alexander"].get<std::string>() << "\n";
  for (const auto& [name, text] : cat.manifolds) out << "manifold " << name << " = " << text << "\n";
  return kOk;
}

}  // namespace cli

/// Runs one swcalc invocation; argv[0] is the program name.
inline int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  using namespace cli;
  Options o;
  CLI::App app{"Seiberg-Witten invariant calculator", "swcalc"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--catalog", o.catalog_path, "catalog of named knots and manifolds (JSON)");

  auto* ev = app.add_subcommand("eval", "evaluate a manifold expression");
  ev->add_option("expression", o.expression, "e.g. \"knot_surgery(E(2), torus(2,3))\"")->required();

  auto* fam = app.add_subcommand("family", "generate an exotic family of group actions");
  fam->add_option("--construction", o.construction, "k3_knot | cp2_knot | s2xs2_hkw")->required();
  fam->add_option("--k", o.k, "cyclic order k")->capture_default_str();
  fam->add_option("--l", o.l, "order of H")->capture_default_str();
  fam->add_option("--n", o.n, "k3_knot: M = E(2n); s2xs2_hkw: log transforms of E(2n)")
      ->capture_default_str();
  fam->add_option("--n-prime", o.n_prime, "cp2_knot: M = E(n') # m'CP2bar")->capture_default_str();
  fam->add_option("--m-prime", o.m_prime, "cp2_knot: number of blowups")->capture_default_str();
  fam->add_option("--m", o.m, "s2xs2_hkw: M = m(S2xS2)")->capture_default_str();
  fam->add_option("--size", o.size, "number of members")->capture_default_str();
  fam->add_option("--r", o.rs, "s2xs2_hkw log-transform multiplicities")->delimiter(',');
  fam->add_option("--group", o.group, "H: cyclic | dic | t24 | o48 | i120")->capture_default_str();

  auto* fp = app.add_subcommand("fixedpoints", "fixed points of the cyclic gluing action");
  fp->add_option("--k", o.fp_k, "number of summands")->capture_default_str();
  fp->add_option("--offsets", o.offsets, "k rationals summing to 0 mod 1")->delimiter(',');

  auto* lat = app.add_subcommand("lattice", "characteristic vectors of a definite form");
  lat->add_option("--diag", o.diag, "diag(-1, ..., -1) of this rank");
  lat->add_flag("--e8", o.e8, "negative E8");
  lat->add_option("--gram", o.gram, "gram matrix as JSON");
  lat->add_option("--fixture", o.fixture, "named form from the fixture file");
  lat->add_option("--fixtures", o.fixtures, "fixture file")->capture_default_str();
  lat->add_option("--bound", o.bound, "box bound / search depth")->capture_default_str();
  lat->add_option("--mode", o.mode, "max | chars | diagonalize | spinc")
      ->check(CLI::IsMember({"max", "chars", "diagonalize", "spinc"}))
      ->capture_default_str();

  auto* bf = app.add_subcommand("bf", "simplify BFG(copies*M # N, Z_k)");
  bf->add_option("--manifold", o.bf_manifold, "expression for M (omit for a bare N)");
  bf->add_option("--copies", o.bf_copies, "copies of M (default k)");
  bf->add_option("--n", o.bf_n, "N: S4, CP2bar, hat(l), hat_dic(m), S1xL(p,...)")
      ->capture_default_str();
  bf->add_option("--k", o.k, "cyclic order k")->capture_default_str();

  auto* cat_cmd = app.add_subcommand("catalog", "list builtins and catalog entries");

  std::vector<std::string> args(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
  std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    Catalog cat;
    if (!o.catalog_path.empty()) cat = Catalog::load(o.catalog_path);
    if (*ev) return cmd_eval(o, cat, out);
    if (*fam) return cmd_family(o, out);
    if (*fp) return cmd_fixedpoints(o, out);
    if (*lat) return cmd_lattice(o, out);
    if (*bf) return cmd_bf(o, cat, out);
    if (*cat_cmd) return cmd_catalog(o, cat, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kGuard;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed JSON input: " << e.what() << "\n";
    return kUsage;
  }
  err << app.help();
  return kUsage;
}

}  // namespace swcalc
