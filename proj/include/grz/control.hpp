#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grz/formula.hpp"
#include "grz/model.hpp"

namespace grz {

/// Frame labeling candidate: one formula per node of `frame`, with the
/// designated node the labeling must realize first.
struct Labeling {
  Frame frame;
  int designated = 0;
  std::vector<Formula> labels; // labels[w] for node w
};

enum class ControlKind {
  Button,             // each statement is necessarily possibly necessary
  Switch,             // each statement can always be turned on and off
  IndependentButtons, // none pushed yet; any larger pattern always reachable
  IndependentSwitches, // necessarily, every on/off pattern is possible
  Ratchet,            // buttons pushed only in order, one step at a time
};

std::string to_string(ControlKind k);
std::optional<ControlKind> control_kind_from_string(const std::string& name);

struct ControlCheck {
  bool passed = false;
  std::string violation; // empty when passed

  explicit operator bool() const { return passed; }
};

/// Model-checks the defining condition of the control statements at the
/// designated world; independence kinds sweep all 2^n button patterns and
/// are capped at 5 statements.
ControlCheck check_control(ControlKind kind, const PointedModel& p,
                           const std::vector<Formula>& stmts);

struct LabelingViolation {
  int condition;   // 1, 2 or 3, as in the frame-labeling definition
  int model_world; // world of N where the condition fails (-1 for cond. 1)
  int frame_node;
  int frame_node_other; // second node for condition 2, -1 otherwise
  std::string detail;
};

/// Verifies the three frame-labeling conditions of `l` against the pointed
/// model: the designated label holds at the point; accessibility between
/// labels mirrors the frame order at every world reachable from the point;
/// and exactly one label holds at each reachable world.
std::optional<LabelingViolation> check_frame_labeling(const Labeling& l,
                                                      const PointedModel& n);

/// Frame labeling of a finite lattice from independent buttons: node w gets
/// the disjunction of the exact button patterns whose pushed set has
/// supremum w (sup of no buttons = the least element). Needs the frame to
/// be a lattice with least element `w0` and at least |F|-1 buttons.
Labeling labeling_from_buttons(const Frame& f, int w0,
                               const std::vector<Formula>& buttons);

/// Frame labeling of a finite linear order from a ratchet of matching
/// length: node i gets "volume is exactly i+1".
Labeling labeling_from_ratchet(const Frame& f,
                               const std::vector<Formula>& ratchet);

/// psi_p = disjunction of the labels of the nodes where M makes p true.
std::map<std::string, Formula> model_labeling_from_frame_labeling(
    const Model& m, const Labeling& l);

/// Certifies a model labeling: reinterprets each M-variable inside N via
/// psi and checks the designated points bisimilar over M's vocabulary,
/// which entails truth preservation for every modal formula over it.
bool verify_model_labeling(const Model& m, int w0, const PointedModel& n,
                           const std::map<std::string, Formula>& psi);

} // namespace grz
