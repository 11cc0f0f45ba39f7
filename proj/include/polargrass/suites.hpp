#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "polargrass/descriptor.hpp"
#include "polargrass/report.hpp"

namespace polargrass {

struct SuiteOptions {
  Budget budget;
  /// Pair budget for the remark suite before it switches to a stride sample.
  std::uint64_t sample_budget = 2'000'000;
};

inline constexpr std::array<std::string_view, 8> kSuiteNames{"dist",     "cliques", "midpoint", "extension",
                                                            "apartments", "axioms", "klein",    "remark"};

/// Runs one named check suite on a descriptor.
///  dist        distance formula against BFS for every pair, diameter, and for
///              polar graphs with k ≤ n-2 the two-case pattern of each pair;
///  cliques     Bron–Kerbosch cliques are stars/tops (lines for dual polar
///              graphs), Grassmann clique intersections have 0, 1 or q+1 members;
///  midpoint    case-(2) pairs have exactly one common neighbour (k ≤ n-2);
///  extension   no case-(3) pair (X, Y) has a neighbour of Y at distance 3
///              from X (k ≤ n-2);
///  apartments  apartments of 𝒢₂(V), dim V = 4, and their adjacency graph;
///  axioms      P1-P4 on the polar space;
///  klein       Klein correspondence for 𝒢₂(F_q^4), plus containment of the
///              quadric in its polar-form space when q is even;
///  remark      the structural conditions on distance-2 and far pairs.
/// Throws SuiteInapplicable for unknown names and unsupported descriptors.
SuiteReport run_suite(std::string_view name, const GraphDescriptor& d, const SuiteOptions& opts = {});

}  // namespace polargrass
