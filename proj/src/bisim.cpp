#include "grz/bisim.hpp"

#include <bit>

namespace grz {

namespace {

WorldSet valuation_of(const Model& m, const std::string& var) {
  auto it = m.valuation.find(var);
  return it == m.valuation.end() ? 0 : (it->second & m.frame.worlds());
}

// rows[w] = set of right-worlds related to left-world w
std::vector<WorldSet> greatest_fixpoint(const Model& left, const Model& right,
                                        const std::vector<std::string>& vocab) {
  int nl = left.frame.size();
  int nr = right.frame.size();
  std::vector<WorldSet> rows(static_cast<std::size_t>(nl),
                             right.frame.worlds());
  for (const auto& var : vocab) {
    WorldSet vl = valuation_of(left, var);
    WorldSet vr = valuation_of(right, var);
    for (int w = 0; w < nl; ++w)
      rows[w] &= (vl & world_bit(w)) ? vr : (right.frame.worlds() & ~vr);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    // columns of the current relation, for the back condition
    std::vector<WorldSet> cols(static_cast<std::size_t>(nr), 0);
    for (int w = 0; w < nl; ++w)
      for (WorldSet rest = rows[w]; rest;) {
        int v = std::countr_zero(rest);
        rest &= rest - 1;
        cols[v] |= world_bit(w);
      }
    for (int w = 0; w < nl; ++w) {
      for (WorldSet rest = rows[w]; rest;) {
        int v = std::countr_zero(rest);
        rest &= rest - 1;
        bool ok = true;
        for (WorldSet ws = left.frame.successors(w); ws && ok;) {
          int w2 = std::countr_zero(ws);
          ws &= ws - 1;
          ok = (right.frame.successors(v) & rows[w2]) != 0;
        }
        for (WorldSet vs = right.frame.successors(v); vs && ok;) {
          int v2 = std::countr_zero(vs);
          vs &= vs - 1;
          ok = (left.frame.successors(w) & cols[v2]) != 0;
        }
        if (!ok) {
          rows[w] &= ~world_bit(v);
          changed = true;
        }
      }
    }
  }
  return rows;
}

} // namespace

BisimPairs largest_bisimulation(const Model& left, const Model& right,
                                const std::vector<std::string>& vocab) {
  auto rows = greatest_fixpoint(left, right, vocab);
  BisimPairs pairs;
  for (int w = 0; w < left.frame.size(); ++w)
    for (WorldSet rest = rows[w]; rest;) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      pairs.emplace_back(w, v);
    }
  return pairs;
}

bool are_bisimilar(const PointedModel& left, const PointedModel& right,
                   const std::vector<std::string>& vocab) {
  auto rows = greatest_fixpoint(left.model, right.model, vocab);
  return (rows[left.point] >> right.point) & 1;
}

std::optional<BisimViolation> check_bisimulation(
    const BisimPairs& z, const Model& left, const Model& right,
    const std::vector<std::string>& vocab) {
  int nl = left.frame.size();
  int nr = right.frame.size();
  std::vector<WorldSet> rows(static_cast<std::size_t>(nl), 0);
  std::vector<WorldSet> cols(static_cast<std::size_t>(nr), 0);
  for (auto [w, v] : z) {
    if (w < 0 || w >= nl || v < 0 || v >= nr)
      throw std::invalid_argument("relation pair out of range");
    rows[w] |= world_bit(v);
    cols[v] |= world_bit(w);
  }
  for (auto [w, v] : z) {
    for (const auto& var : vocab) {
      bool at_left = (valuation_of(left, var) >> w) & 1;
      bool at_right = (valuation_of(right, var) >> v) & 1;
      if (at_left != at_right)
        return BisimViolation{BisimViolation::Kind::Atom, w, v,
                              "disagree on '" + var + "'"};
    }
    for (WorldSet ws = left.frame.successors(w); ws;) {
      int w2 = std::countr_zero(ws);
      ws &= ws - 1;
      if ((right.frame.successors(v) & rows[w2]) == 0)
        return BisimViolation{BisimViolation::Kind::Forth, w, v,
                              "successor " + std::to_string(w2) +
                                  " has no related successor"};
    }
    for (WorldSet vs = right.frame.successors(v); vs;) {
      int v2 = std::countr_zero(vs);
      vs &= vs - 1;
      if ((left.frame.successors(w) & cols[v2]) == 0)
        return BisimViolation{BisimViolation::Kind::Back, w, v,
                              "successor " + std::to_string(v2) +
                                  " has no related successor"};
    }
  }
  return std::nullopt;
}

} // namespace grz
