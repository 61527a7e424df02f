#include "grz/control.hpp"

#include <bit>

#include "grz/bisim.hpp"

namespace grz {

std::string to_string(ControlKind k) {
  switch (k) {
    case ControlKind::Button: return "button";
    case ControlKind::Switch: return "switch";
    case ControlKind::IndependentButtons: return "independent_buttons";
    case ControlKind::IndependentSwitches: return "independent_switches";
    case ControlKind::Ratchet: return "ratchet";
  }
  return "?";
}

std::optional<ControlKind> control_kind_from_string(const std::string& name) {
  if (name == "button") return ControlKind::Button;
  if (name == "switch") return ControlKind::Switch;
  if (name == "independent_buttons") return ControlKind::IndependentButtons;
  if (name == "independent_switches") return ControlKind::IndependentSwitches;
  if (name == "ratchet") return ControlKind::Ratchet;
  return std::nullopt;
}

namespace {

ControlCheck fail(std::string why) { return {false, std::move(why)}; }

ControlCheck check_buttons(const PointedModel& p,
                           const std::vector<Formula>& stmts) {
  for (std::size_t i = 0; i < stmts.size(); ++i) {
    Formula cond = Formula::Box(Formula::Diamond(Formula::Box(stmts[i])));
    if (!satisfies(p, cond))
      return fail("statement " + std::to_string(i) +
                  " is not a button: []<>[] fails at the point");
  }
  return {true, ""};
}

ControlCheck check_switches(const PointedModel& p,
                            const std::vector<Formula>& stmts) {
  for (std::size_t i = 0; i < stmts.size(); ++i) {
    Formula cond = Formula::Box(Formula::And(
        Formula::Diamond(stmts[i]), Formula::Diamond(Formula::Not(stmts[i]))));
    if (!satisfies(p, cond))
      return fail("statement " + std::to_string(i) +
                  " is not a switch: [](<>s & <>~s) fails at the point");
  }
  return {true, ""};
}

std::string pattern_text(unsigned pattern, std::size_t n) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < n; ++i)
    if (pattern & (1u << i)) {
      if (!first) out += ",";
      out += std::to_string(i);
      first = false;
    }
  return out + "}";
}

ControlCheck check_independent_buttons(const PointedModel& p,
                                       const std::vector<Formula>& stmts) {
  std::size_t n = stmts.size();
  for (std::size_t i = 0; i < n; ++i)
    if (!satisfies(p, Formula::Not(Formula::Box(stmts[i]))))
      return fail("button " + std::to_string(i) +
                  " is already pushed at the point");
  for (unsigned a = 0; a < (1u << n); ++a) {
    for (unsigned b = 0; b < (1u << n); ++b) {
      if ((a & ~b) != 0) continue; // only patterns extending a
      Formula cond = Formula::Box(Formula::Implies(
          theta(stmts, a), Formula::Diamond(theta(stmts, b))));
      if (!satisfies(p, cond))
        return fail("pattern " + pattern_text(a, n) + " cannot always reach " +
                    pattern_text(b, n));
    }
  }
  return {true, ""};
}

ControlCheck check_independent_switches(const PointedModel& p,
                                        const std::vector<Formula>& stmts) {
  std::size_t n = stmts.size();
  for (unsigned a = 0; a < (1u << n); ++a) {
    std::vector<Formula> parts;
    for (std::size_t i = 0; i < n; ++i)
      parts.push_back((a & (1u << i)) ? stmts[i] : Formula::Not(stmts[i]));
    Formula cond = Formula::Box(Formula::Diamond(conjunction(parts)));
    if (!satisfies(p, cond))
      return fail("switch pattern " + pattern_text(a, n) +
                  " is not always reachable");
  }
  return {true, ""};
}

ControlCheck check_ratchet(const PointedModel& p,
                           const std::vector<Formula>& stmts) {
  std::size_t n = stmts.size();
  if (n == 0) return fail("a ratchet needs at least one button");
  // (1) only the first button is pushed initially
  if (!satisfies(p, Formula::Box(stmts[0])))
    return fail("condition (1): r0 is not pushed at the point");
  for (std::size_t i = 1; i < n; ++i)
    if (!satisfies(p, Formula::Not(Formula::Box(stmts[i]))))
      return fail("condition (1): r" + std::to_string(i) +
                  " is already pushed at the point");
  // (2) pushing r_j pushes every earlier r_i
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Formula cond = Formula::Box(Formula::Implies(Formula::Box(stmts[j]),
                                                   Formula::Box(stmts[i])));
      if (!satisfies(p, cond))
        return fail("condition (2): pushing r" + std::to_string(j) +
                    " does not push r" + std::to_string(i));
    }
  // (3) an unpushed button can be pushed without pushing any later one
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Formula> parts;
    parts.push_back(Formula::Box(stmts[i]));
    for (std::size_t j = i + 1; j < n; ++j)
      parts.push_back(Formula::Not(Formula::Box(stmts[j])));
    Formula cond = Formula::Box(Formula::Implies(
        Formula::Not(Formula::Box(stmts[i])),
        Formula::Diamond(conjunction(parts))));
    if (!satisfies(p, cond))
      return fail("condition (3): r" + std::to_string(i) +
                  " cannot be pushed alone");
  }
  return {true, ""};
}

} // namespace

ControlCheck check_control(ControlKind kind, const PointedModel& p,
                           const std::vector<Formula>& stmts) {
  if ((kind == ControlKind::IndependentButtons ||
       kind == ControlKind::IndependentSwitches) &&
      stmts.size() > 5)
    throw ResourceLimitError("independence sweep capped at 5 statements");
  switch (kind) {
    case ControlKind::Button: return check_buttons(p, stmts);
    case ControlKind::Switch: return check_switches(p, stmts);
    case ControlKind::IndependentButtons:
      return check_independent_buttons(p, stmts);
    case ControlKind::IndependentSwitches:
      return check_independent_switches(p, stmts);
    case ControlKind::Ratchet: return check_ratchet(p, stmts);
  }
  throw std::logic_error("unreachable");
}

std::optional<LabelingViolation> check_frame_labeling(const Labeling& l,
                                                      const PointedModel& n) {
  const Frame& f = l.frame;
  if (static_cast<int>(l.labels.size()) != f.size())
    throw std::invalid_argument("labeling does not cover every node");
  if (l.designated < 0 || l.designated >= f.size())
    throw std::invalid_argument("designated node out of range");

  std::vector<WorldSet> ext, dia;
  for (const Formula& phi : l.labels) {
    ext.push_back(extension(n.model, phi));
    dia.push_back(extension(n.model, Formula::Diamond(phi)));
  }
  // (1) the designated label holds at the point
  if (!((ext[l.designated] >> n.point) & 1))
    return LabelingViolation{1, n.point, l.designated, -1,
                             "designated label fails at the point"};
  WorldSet reachable = reachable_from(n.model.frame, n.point);
  for (WorldSet rest = reachable; rest;) {
    int u = std::countr_zero(rest);
    rest &= rest - 1;
    // (3) exactly one label true
    int holder = -1;
    for (int w = 0; w < f.size(); ++w) {
      if (!((ext[w] >> u) & 1)) continue;
      if (holder >= 0)
        return LabelingViolation{3, u, holder, w,
                                 "two labels hold at world " +
                                     std::to_string(u)};
      holder = w;
    }
    if (holder < 0)
      return LabelingViolation{3, u, -1, -1,
                               "no label holds at world " + std::to_string(u)};
    // (2) accessibility of labels mirrors the frame order
    for (int w2 = 0; w2 < f.size(); ++w2) {
      bool possible = (dia[w2] >> u) & 1;
      if (possible != f.sees(holder, w2))
        return LabelingViolation{
            2, u, holder, w2,
            std::string(possible ? "<>label holds" : "<>label fails") +
                " at world " + std::to_string(u) + " against the frame order"};
    }
  }
  return std::nullopt;
}

Labeling labeling_from_buttons(const Frame& f, int w0,
                               const std::vector<Formula>& buttons) {
  if (!check_class(f, FrameClass::Lattice))
    throw std::invalid_argument("button labeling needs a finite lattice");
  auto least = sup(f, 0); // least element by the empty-sup convention
  if (!least || *least != w0)
    throw std::invalid_argument("designated node must be the least element");
  std::size_t needed = static_cast<std::size_t>(f.size()) - 1;
  if (buttons.size() < needed)
    throw std::invalid_argument("need at least |F|-1 buttons");

  // node-order correspondence w -> b_w over F minus the least element
  std::vector<int> non_least;
  for (int w = 0; w < f.size(); ++w)
    if (w != w0) non_least.push_back(w);

  // b_S for S a subset of the non-least nodes
  auto pattern_formula = [&](unsigned s) {
    std::vector<Formula> parts;
    for (std::size_t i = 0; i < non_least.size(); ++i)
      if (s & (1u << i)) parts.push_back(Formula::Box(buttons[i]));
    for (std::size_t i = 0; i < non_least.size(); ++i)
      if (!(s & (1u << i)))
        parts.push_back(Formula::Not(Formula::Box(buttons[i])));
    return conjunction(parts);
  };

  std::vector<std::vector<Formula>> per_node(static_cast<std::size_t>(f.size()));
  for (unsigned s = 0; s < (1u << non_least.size()); ++s) {
    WorldSet set = 0;
    for (std::size_t i = 0; i < non_least.size(); ++i)
      if (s & (1u << i)) set |= world_bit(non_least[i]);
    int node = *sup(f, set);
    per_node[node].push_back(pattern_formula(s));
  }
  Labeling l{f, w0, {}};
  for (int w = 0; w < f.size(); ++w)
    l.labels.push_back(disjunction(per_node[w]));
  return l;
}

Labeling labeling_from_ratchet(const Frame& f,
                               const std::vector<Formula>& ratchet) {
  if (!check_class(f, FrameClass::LinearOrder))
    throw std::invalid_argument("ratchet labeling needs a finite linear order");
  if (ratchet.size() != static_cast<std::size_t>(f.size()))
    throw std::invalid_argument("ratchet length must match the frame size");
  // nodes in increasing order: fewer predecessors first
  std::vector<int> by_rank(static_cast<std::size_t>(f.size()));
  for (int w = 0; w < f.size(); ++w)
    by_rank[static_cast<std::size_t>(world_count(f.predecessors(w))) - 1] = w;

  Labeling l{f, by_rank[0], {}};
  l.labels.reserve(static_cast<std::size_t>(f.size()));
  std::vector<Formula> labels(static_cast<std::size_t>(f.size()),
                              Formula::top());
  for (int i = 0; i < f.size(); ++i) {
    Formula phi = Formula::Box(ratchet[i]);
    if (i + 1 < f.size())
      phi = Formula::And(phi, Formula::Not(Formula::Box(ratchet[i + 1])));
    labels[by_rank[i]] = phi;
  }
  l.labels = std::move(labels);
  return l;
}

std::map<std::string, Formula> model_labeling_from_frame_labeling(
    const Model& m, const Labeling& l) {
  if (!(m.frame == l.frame))
    throw std::invalid_argument("labeling must label the model's frame");
  std::map<std::string, Formula> psi;
  for (const auto& [var, set] : m.valuation) {
    std::vector<Formula> parts;
    for (int w = 0; w < m.frame.size(); ++w)
      if ((set >> w) & 1) parts.push_back(l.labels[w]);
    psi.emplace(var, disjunction(parts));
  }
  return psi;
}

bool verify_model_labeling(const Model& m, int w0, const PointedModel& n,
                           const std::map<std::string, Formula>& psi) {
  Model reinterpreted{n.model.frame, {}};
  std::vector<std::string> vocab;
  for (const auto& [var, set] : m.valuation) {
    (void)set;
    vocab.push_back(var);
    auto it = psi.find(var);
    if (it == psi.end())
      throw std::invalid_argument("psi map is missing variable '" + var + "'");
    reinterpreted.valuation.emplace(var, extension(n.model, it->second));
  }
  return are_bisimilar({m, w0}, {reinterpreted, n.point}, vocab);
}

} // namespace grz
