#pragma once

// JSON forms of the value types. Every top-level document carries
// "schema": "swcalc/1"; big integers travel as decimal strings.

#include <string>

#include "json.hpp"

#include "bauer_furuta.hpp"
#include "family.hpp"
#include "fixedpoint.hpp"
#include "lattice.hpp"
#include "manifold.hpp"

namespace swcalc {

using json = nlohmann::json;

inline constexpr const char* kSchema = "swcalc/1";

inline json group_to_json(const FgAbelianGroup& g) {
  json t = json::array();
  for (const auto& x : g.torsion()) t.push_back({{"order", x.order}, {"name", x.name}});
  return {{"free", g.free_names()}, {"torsion", t}};
}

inline FgAbelianGroup group_from_json(const json& j) {
  std::vector<FgAbelianGroup::TorsionGenerator> t;
  for (const auto& x : j.at("torsion"))
    t.push_back({x.at("order").get<std::int64_t>(), x.at("name").get<std::string>()});
  return FgAbelianGroup(j.at("free").get<std::vector<std::string>>(), t);
}

inline json to_json(const GroupRingElement& a) {
  json terms = json::array();
  for (const auto& [e, c] : a.terms())
    terms.push_back({{"free", e.free}, {"torsion", e.torsion}, {"coeff", c.str()}});
  return {{"ambient", group_to_json(a.ambient())}, {"terms", terms}, {"text", to_string(a)}};
}

inline GroupRingElement group_ring_from_json(const json& j) {
  FgAbelianGroup g = group_from_json(j.at("ambient"));
  GroupRingElement r = GroupRingElement::zero(g);
  for (const auto& t : j.at("terms")) {
    GroupElement e{t.at("free").get<std::vector<std::int64_t>>(),
                   t.at("torsion").get<std::vector<std::int64_t>>()};
    if (!belongs_to(g, e)) throw InvalidArgument("term does not belong to the ambient group");
    r += GroupRingElement::monomial(g, e, Integer(t.at("coeff").get<std::string>()));
  }
  return r;
}

inline json to_json(const Fingerprint& f) {
  return {{"simply_connected", f.simply_connected}, {"b1", f.b1}, {"b2_plus", f.b2_plus},
          {"b2_minus", f.b2_minus}, {"spin", f.spin}};
}

inline json to_json(const DissolvedForm& f) {
  return {{"parity", f.parity == DissolvedForm::Parity::Odd ? "odd" : "even"},
          {"n", f.n}, {"m", f.m}, {"sign", f.sign}, {"text", f.render()}};
}

inline json to_json(const Piece& p) {
  json j;
  switch (p.kind) {
    case Piece::Kind::Standard:
      j = {{"kind", "standard"}, {"name", to_string(p.standard)}};
      break;
    case Piece::Kind::Elliptic:
      j = {{"kind", "elliptic"}, {"n", p.elliptic_index}};
      break;
    case Piece::Kind::KnotSurgered:
      j = {{"kind", "knot_surgered"}, {"base", to_json(p.base.at(0))}};
      break;
    case Piece::Kind::Opaque:
      j = {{"kind", "opaque"}, {"label", p.label}, {"spin", p.opaque_spin}};
      break;
  }
  return j;
}

inline Piece piece_from_json(const json& j) {
  auto kind = j.at("kind").get<std::string>();
  if (kind == "standard") {
    auto name = j.at("name").get<std::string>();
    for (auto s : {StandardPiece::S4, StandardPiece::CP2, StandardPiece::CP2bar,
                   StandardPiece::S2xS2, StandardPiece::K3, StandardPiece::K3bar})
      if (name == to_string(s)) return Piece::make_standard(s);
    throw InvalidArgument("unknown standard piece '" + name + "'");
  }
  if (kind == "elliptic") return Piece::make_elliptic(j.at("n").get<std::int64_t>());
  if (kind == "knot_surgered") return Piece::make_knot_surgered(piece_from_json(j.at("base")));
  if (kind == "opaque")
    return Piece::make_opaque(j.at("label").get<std::string>(), j.at("spin").get<bool>());
  throw InvalidArgument("unknown piece kind '" + kind + "'");
}

inline json to_json(const SwInvariant& s) {
  json j = {{"state", to_string(s.state())}};
  if (s.is_known()) j["polynomial"] = to_json(s.polynomial());
  return j;
}

inline SwInvariant sw_from_json(const json& j) {
  auto state = j.at("state").get<std::string>();
  if (state == to_string(SwState::Known))
    return SwInvariant::known(group_ring_from_json(j.at("polynomial")));
  if (state == to_string(SwState::KnownZero)) return SwInvariant::known_zero();
  if (state == to_string(SwState::Unknown)) return SwInvariant::unknown();
  throw InvalidArgument("unknown SW state '" + state + "'");
}

inline json to_json(const ManifoldDescriptor& m) {
  const auto& I = m.intersection;
  const auto& u = I.untracked;
  json pieces = json::array();
  for (const auto& p : m.pieces) pieces.push_back(to_json(p));
  json j = {
      {"label", m.label},
      {"simply_connected", m.simply_connected},
      {"b1", m.b1},
      {"b2_plus", m.b2_plus},
      {"b2_minus", m.b2_minus},
      {"torsion_h1", m.torsion_h1},
      {"spin", m.spin},
      {"simple_type", m.simple_type},
      {"euler_characteristic", m.euler_characteristic()},
      {"signature", m.signature()},
      {"sw", to_json(m.sw)},
      {"intersection",
       {{"tracked_basis", I.tracked_basis},
        {"gram", I.gram},
        {"untracked",
         {{"hyperbolic", u.hyperbolic}, {"plus_one", u.plus_one}, {"minus_one", u.minus_one},
          {"e8_negative", u.e8_negative}, {"e8_positive", u.e8_positive}}}}},
      {"capabilities",
       {{"has_swappable_torus", m.capabilities.has_swappable_torus},
        {"admits_psc", m.capabilities.admits_psc}}},
      {"pieces", pieces},
      {"trace", m.trace},
  };
  if (m.unsurgered) j["unsurgered"] = to_json(*m.unsurgered);
  return j;
}

inline ManifoldDescriptor descriptor_from_json(const json& j) {
  if (j.contains("schema") && j.at("schema") != kSchema)
    throw InvalidArgument("unsupported schema " + j.at("schema").dump());
  ManifoldDescriptor m;
  m.label = j.at("label").get<std::string>();
  m.simply_connected = j.at("simply_connected").get<bool>();
  m.b1 = j.at("b1").get<std::int64_t>();
  m.b2_plus = j.at("b2_plus").get<std::int64_t>();
  m.b2_minus = j.at("b2_minus").get<std::int64_t>();
  m.torsion_h1 = j.at("torsion_h1").get<std::vector<std::int64_t>>();
  m.spin = j.at("spin").get<bool>();
  m.simple_type = j.at("simple_type").get<bool>();
  m.sw = sw_from_json(j.at("sw"));
  const auto& I = j.at("intersection");
  m.intersection.tracked_basis = I.at("tracked_basis").get<std::vector<std::string>>();
  m.intersection.gram = I.at("gram").get<IntMatrix>();
  const auto& u = I.at("untracked");
  m.intersection.untracked = {u.at("hyperbolic").get<std::int64_t>(),
                              u.at("plus_one").get<std::int64_t>(),
                              u.at("minus_one").get<std::int64_t>(),
                              u.at("e8_negative").get<std::int64_t>(),
                              u.at("e8_positive").get<std::int64_t>()};
  m.capabilities.has_swappable_torus = j.at("capabilities").at("has_swappable_torus").get<bool>();
  m.capabilities.admits_psc = j.at("capabilities").at("admits_psc").get<bool>();
  for (const auto& p : j.at("pieces")) m.pieces.push_back(piece_from_json(p));
  m.trace = j.at("trace").get<std::vector<std::string>>();
  if (j.contains("unsurgered"))
    m.unsurgered = std::make_shared<const ManifoldDescriptor>(descriptor_from_json(j.at("unsurgered")));
  check_invariants(m);
  return m;
}

/// Report for `eval`: the descriptor plus derived quantities.
inline json eval_report(const std::string& expression, const ManifoldDescriptor& m) {
  json j = {{"schema", kSchema}, {"expression", expression}, {"descriptor", to_json(m)}};
  j["fingerprint"] = to_json(m.fingerprint());
  auto count = mod2_basic_class_count(m);
  j["mod2_basic_classes"] = count ? json(*count) : json(nullptr);
  j["sw_state"] = to_string(m.sw.state());
  j["sw"] = m.sw.is_known() ? json(to_string(m.sw.polynomial())) : json(nullptr);
  if (m.simply_connected) {
    j["homeo_type"] = to_json(homeo_type(m));
    DissolutionVerdict dv = dissolve(m);
    j["dissolves_to"] = dv.canonical_form ? to_json(*dv.canonical_form) : json(nullptr);
    j["dissolution_trace"] = dv.rule_trace;
  }
  return j;
}

inline json to_json(const FamilyReport& r) {
  json members = json::array();
  for (const auto& mem : r.members) {
    json jm = {{"label", mem.label},
               {"mod2_count", mem.mod2_count},
               {"gmonopole_count", mem.gmonopole_count},
               {"fingerprint", to_json(mem.fingerprint)},
               {"fingerprint_asserted", mem.fingerprint_asserted},
               {"count_only", mem.count_only}};
    if (!mem.knot.empty()) jm["knot"] = mem.knot;
    jm["gmonopole"] = mem.gmonopole ? json(to_string(*mem.gmonopole)) : json(nullptr);
    if (mem.stabilization)
      jm["stabilization"] = {{"identity", mem.stabilization->identity},
                             {"statement", mem.stabilization->statement}};
    members.push_back(jm);
  }
  json table = json::array();
  for (const auto& mem : r.members)
    table.push_back({{"label", mem.label},
                     {"fingerprint", to_json(mem.fingerprint)},
                     {"equals_base", mem.fingerprint == r.base_fingerprint}});
  const auto& c = r.covering;
  return {
      {"schema", kSchema},
      {"construction", to_string(r.params.construction)},
      {"k", r.params.k},
      {"l", r.params.l},
      {"target",
       {{"expression", r.target_expression},
        {"dissolved", r.target_dissolved ? json(r.target_dissolved->render()) : json(nullptr)},
        {"fingerprint", to_json(r.target_fingerprint)},
        {"rule_trace", r.target_rule_trace}}},
      {"base", {{"label", r.base_label}, {"fingerprint", to_json(r.base_fingerprint)}}},
      {"n", {{"label", r.n_label}, {"torsion_classes", r.torsion_classes}}},
      {"members", members},
      {"counts", r.counts},
      {"verdict", r.verdict},
      {"evidence",
       {{"counts_distinct", r.counts_distinct},
        {"fingerprints_equal", r.fingerprints_equal},
        {"fingerprint_table", table},
        {"covering",
         {{"consistent", c.consistent},
          {"cover_euler", c.cover_euler},
          {"base_euler", c.base_euler},
          {"cover_signature", c.cover_signature},
          {"base_signature", c.base_signature},
          {"l", c.l}}}}},
      {"notes", r.notes},
  };
}

inline json to_json(const std::vector<FixedPoint>& pts, std::size_t k) {
  json sols = json::array();
  for (const auto& p : pts) {
    json tuple = json::array();
    for (const auto& a : p.tuple.angles()) tuple.push_back(to_string(a));
    sols.push_back({{"theta", to_string(p.theta)},
                    {"tuple", tuple},
                    {"invariant", p.theta.numerator() == 0}});
  }
  return {{"schema", kSchema}, {"k", k}, {"count", pts.size()}, {"solutions", sols}};
}

inline json to_json(const CharacteristicMax& r) {
  json j = {{"status", to_string(r.status)},
            {"bound_limited", r.bound_limited()},
            {"value", r.value ? json(*r.value) : json(nullptr)},
            {"achiever", r.achiever}};
  return j;
}

}  // namespace swcalc
