#pragma once

#include <utility>
#include <vector>

#include "grz/formula.hpp"
#include "grz/model.hpp"

namespace grz {

struct UnravelResult {
  Model model;
  /// (new world, source world) for every world of the result.
  std::vector<std::pair<int, int>> copy_map;
  int point = 0;
};

/// Partial tree unraveling into a baled tree. The input frame must be a
/// finite directed poset; its greatest element becomes the bale. Nodes are
/// the bale plus one copy of each source world per maximal chain from the
/// designated world up to it; copies inherit the source valuation and the
/// copy relation is a bisimulation.
UnravelResult unravel_baled(const PointedModel& p);

/// Tree unraveling of a poset from its designated world. With `regularize`
/// the tree is padded to a full b-ary tree of uniform depth d (b = widest
/// branching, d = longest strict chain) by duplicating child subtrees and
/// extending leaves with copies of themselves; all padding is bisimilar by
/// construction and certified through the copy relation.
UnravelResult unravel_tree(const PointedModel& p, bool regularize);

struct ButtonModel {
  PointedModel pointed;
  std::vector<Formula> buttons;
};

/// Inclusion order on subsets of {0..n-1}, designated world the empty set,
/// with b_i true exactly at the sets containing i. The b_i are n independent
/// buttons at the designated world.
ButtonModel powerset_button_model(int n);

struct RatchetModel {
  PointedModel pointed;
  std::vector<Formula> ratchet;
};

/// Reflexive-transitive chain of n worlds with r_i true from world i up, so
/// exactly r_0..r_j are pushed at world j. The r_i form a ratchet of length
/// n at the bottom world.
RatchetModel ratchet_chain_model(int n);

} // namespace grz
