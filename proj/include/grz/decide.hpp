#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grz/formula.hpp"
#include "grz/model.hpp"

namespace grz {

enum class LogicId { K, S4, S4_2, S4_3, Grz, Grz2, Grz3 };

std::string to_string(LogicId id);
std::optional<LogicId> logic_from_string(const std::string& name);

/// Axioms generating the logic, instantiated at p (and q): K alone for K;
/// S4 adds T and 4; the .2/.3/Grz variants extend from there.
std::vector<Formula> axiom_suite(LogicId id);

/// Characterizing frame class used by default in countermodel search.
FrameClass default_class(LogicId id);

struct SearchReport {
  bool found = false;
  std::optional<Countermodel> witness;
  long frames_examined = 0;
  int bound = 0;
  FrameClass frame_class = FrameClass::Arbitrary;
};

/// Bounded countermodel search: sweeps the logic's characterizing class (or
/// the override) up to `nmax` worlds, one frame per isomorphism class. A
/// countermodel proves the formula is not provable in the logic; exhaustion
/// is inconclusive.
SearchReport countermodel_search(
    LogicId logic, const Formula& f, int nmax,
    std::optional<FrameClass> class_override = std::nullopt,
    std::size_t frame_cap = kDefaultFrameCap,
    std::uint64_t valuation_cap = kDefaultValuationCap);

struct LemmaCheck {
  std::string id;
  std::string description;
  bool passed = false;
  std::string detail;
};

/// Exhaustive desk-scale checks of the displayed lemma formulas:
///  (a) the technical-lemma formula holds on every frame,
///  (b) <>(a | <>b) -> <>(a | b) holds on every transitive frame,
///  (c) the three renderings of the Grzegorczyk axiom are equivalent,
///  (d) alt1 frames validate the penultimacy axiom but not Grz,
///  (e) on preorders the two axioms validate the same frames.
/// All sweeps run over frames with at most `nmax` worlds.
std::vector<LemmaCheck> verify_displayed_lemmas(int nmax);

} // namespace grz
