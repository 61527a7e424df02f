#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grz/model.hpp"

namespace grz {

/// Relation between the worlds of two models, as sorted (left, right) pairs.
using BisimPairs = std::vector<std::pair<int, int>>;

/// Greatest relation whose pairs agree on every variable in `vocab` and
/// satisfy the forth and back conditions. Computed as a greatest fixpoint:
/// start from atom agreement and strike pairs until stable.
BisimPairs largest_bisimulation(const Model& left, const Model& right,
                                const std::vector<std::string>& vocab);

bool are_bisimilar(const PointedModel& left, const PointedModel& right,
                   const std::vector<std::string>& vocab);

struct BisimViolation {
  enum class Kind { Atom, Forth, Back };
  Kind kind;
  int left;
  int right;
  std::string detail;
};

/// Certificate check: verifies atom agreement, forth, and back for every
/// pair of `z`; reports the first failing pair and condition.
std::optional<BisimViolation> check_bisimulation(
    const BisimPairs& z, const Model& left, const Model& right,
    const std::vector<std::string>& vocab);

} // namespace grz
