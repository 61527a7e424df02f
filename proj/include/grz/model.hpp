#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "grz/formula.hpp"
#include "grz/frame.hpp"

namespace grz {

/// Kripke model: frame plus a valuation. Variables absent from the map
/// denote the empty set, so fresh variables (Jankov-Fine, labelings) can
/// coexist with model variables.
struct Model {
  Frame frame;
  std::map<std::string, WorldSet> valuation;
};

struct PointedModel {
  Model model;
  int point = 0;
};

/// Set of worlds satisfying `f`, by bottom-up evaluation of each subterm as
/// a world bitset (shared subterms are evaluated once).
WorldSet extension(const Model& m, const Formula& f);

bool satisfies(const PointedModel& p, const Formula& f);

struct Countermodel {
  Model model;
  int world = 0;
};

inline constexpr std::uint64_t kDefaultValuationCap = std::uint64_t{1} << 24;

/// Sweeps every valuation of the variables of `f` over `frame` (2^(k*n) of
/// them) and returns the first failing (valuation, world) in enumeration
/// order, or nullopt when `f` is valid on the frame. Throws
/// ResourceLimitError when the sweep would exceed `valuation_cap`.
std::optional<Countermodel> find_frame_countermodel(
    const Frame& frame, const Formula& f,
    std::uint64_t valuation_cap = kDefaultValuationCap);

bool frame_valid(const Frame& frame, const Formula& f,
                 std::uint64_t valuation_cap = kDefaultValuationCap);

struct ClassSweepReport {
  std::optional<Countermodel> countermodel;
  long frames_examined = 0;
  int bound = 0; // highest world count swept

  bool exhausted() const { return !countermodel.has_value(); }
};

/// Runs find_frame_countermodel over every frame of class `c` with 1..nmax
/// worlds (one representative per isomorphism class); stops at the first
/// countermodel in enumeration order.
ClassSweepReport class_valid_upto(
    FrameClass c, const Formula& f, int nmax,
    std::size_t frame_cap = kDefaultFrameCap,
    std::uint64_t valuation_cap = kDefaultValuationCap);

} // namespace grz
