#pragma once

#include <cstdint>
#include <string>

#include "polargrass/error.hpp"

namespace polargrass {

/// Size guards for enumeration and materialization. Exceeding one raises
/// BudgetExceeded with the predicted (or reached) count in the message.
struct Budget {
  std::uint64_t max_vertices = 250'000;
  std::uint64_t max_cliques = 2'000'000;
  std::uint64_t max_all_pairs_vertices = 20'000;
};

inline void enforce_budget(std::uint64_t predicted, std::uint64_t limit, const std::string& what) {
  if (predicted > limit) {
    throw Error(Errc::BudgetExceeded, what + ": predicted " + std::to_string(predicted) + " > budget " +
                                          std::to_string(limit));
  }
}

}  // namespace polargrass
