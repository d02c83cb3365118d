#pragma once

// Finite groups acting freely on S^3, described by order and abelianization.
// Realizability is geometric input: a small whitelist is known, anything
// else must be asserted by the caller.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"

namespace swcalc {

struct SpaceFormGroup {
  enum class Family { Cyclic, BinaryDihedral, BinaryTetrahedral, BinaryOctahedral,
                      BinaryIcosahedral, Asserted };
  Family family = Family::Cyclic;
  std::string label;                   // "Z/5", "Dic(3)", "T24", ...
  std::int64_t order = 1;
  std::vector<std::int64_t> h1_orders; // abelianization as cyclic orders

  bool asserted() const noexcept { return family == Family::Asserted; }
  std::int64_t h1_size() const {
    return std::accumulate(h1_orders.begin(), h1_orders.end(), std::int64_t{1},
                           std::multiplies<>());
  }
  /// Name of the quotient L = S^3 / H.
  std::string quotient_label() const {
    if (family == Family::Cyclic) return order == 2 ? "RP3" : "L(" + std::to_string(order) + ",1)";
    return "S3/" + label;
  }
  bool operator==(const SpaceFormGroup&) const = default;
};

inline SpaceFormGroup cyclic_group(std::int64_t l) {
  if (l < 2) throw InvalidArgument("H must be nontrivial: order l >= 2 required, got " +
                                   std::to_string(l));
  return {SpaceFormGroup::Family::Cyclic, "Z/" + std::to_string(l), l, {l}};
}

/// Binary dihedral group of order 4m, m >= 2.
inline SpaceFormGroup binary_dihedral(std::int64_t m) {
  if (m < 2) throw InvalidArgument("binary dihedral group needs m >= 2");
  std::vector<std::int64_t> ab = (m % 2 == 1) ? std::vector<std::int64_t>{4}
                                              : std::vector<std::int64_t>{2, 2};
  return {SpaceFormGroup::Family::BinaryDihedral, "Dic(" + std::to_string(m) + ")", 4 * m, ab};
}

inline SpaceFormGroup binary_tetrahedral() {
  return {SpaceFormGroup::Family::BinaryTetrahedral, "T24", 24, {3}};
}
inline SpaceFormGroup binary_octahedral() {
  return {SpaceFormGroup::Family::BinaryOctahedral, "O48", 48, {2}};
}
inline SpaceFormGroup binary_icosahedral() {  // perfect
  return {SpaceFormGroup::Family::BinaryIcosahedral, "I120", 120, {}};
}

/// Caller-supplied group outside the whitelist.
inline SpaceFormGroup asserted_group(std::string label, std::int64_t order,
                                     std::vector<std::int64_t> h1_orders) {
  if (order < 2) throw InvalidArgument("H must be nontrivial: order >= 2 required");
  for (auto o : h1_orders)
    if (o < 2) throw InvalidArgument("abelianization orders must be >= 2");
  return {SpaceFormGroup::Family::Asserted, std::move(label), order, std::move(h1_orders)};
}

/// Whitelisted groups of the given order (cyclic first).
inline std::vector<SpaceFormGroup> whitelist_of_order(std::int64_t order) {
  std::vector<SpaceFormGroup> out;
  if (order < 2) return out;
  out.push_back(cyclic_group(order));
  if (order % 4 == 0 && order >= 8) out.push_back(binary_dihedral(order / 4));
  if (order == 24) out.push_back(binary_tetrahedral());
  if (order == 48) out.push_back(binary_octahedral());
  if (order == 120) out.push_back(binary_icosahedral());
  return out;
}

/// Whitelist entry with this order and abelianization, if any.
inline std::optional<SpaceFormGroup> whitelist_match(std::vector<std::int64_t> h1_orders,
                                                     std::int64_t order) {
  std::sort(h1_orders.begin(), h1_orders.end());
  for (auto g : whitelist_of_order(order)) {
    auto ab = g.h1_orders;
    std::sort(ab.begin(), ab.end());
    if (ab == h1_orders) return g;
  }
  return std::nullopt;
}

/// Lookup by family keyword: cyclic, dic, t24, o48, i120.
inline SpaceFormGroup space_form_group(const std::string& family, std::int64_t order) {
  if (family == "cyclic") return cyclic_group(order);
  if (family == "dic") {
    if (order % 4 != 0) throw InvalidArgument("binary dihedral order must be divisible by 4");
    return binary_dihedral(order / 4);
  }
  auto fixed = [&](SpaceFormGroup g) {
    if (g.order != order)
      throw InvalidArgument(g.label + " has order " + std::to_string(g.order) + ", not " +
                            std::to_string(order));
    return g;
  };
  if (family == "t24") return fixed(binary_tetrahedral());
  if (family == "o48") return fixed(binary_octahedral());
  if (family == "i120") return fixed(binary_icosahedral());
  throw InvalidArgument("unknown space-form family '" + family +
                        "' (expected cyclic, dic, t24, o48 or i120)");
}

}  // namespace swcalc
