#include "grz/decide.hpp"

namespace grz {

std::string to_string(LogicId id) {
  switch (id) {
    case LogicId::K: return "k";
    case LogicId::S4: return "s4";
    case LogicId::S4_2: return "s4.2";
    case LogicId::S4_3: return "s4.3";
    case LogicId::Grz: return "grz";
    case LogicId::Grz2: return "grz.2";
    case LogicId::Grz3: return "grz.3";
  }
  return "?";
}

std::optional<LogicId> logic_from_string(const std::string& name) {
  if (name == "k") return LogicId::K;
  if (name == "s4") return LogicId::S4;
  if (name == "s4.2") return LogicId::S4_2;
  if (name == "s4.3") return LogicId::S4_3;
  if (name == "grz") return LogicId::Grz;
  if (name == "grz.2") return LogicId::Grz2;
  if (name == "grz.3") return LogicId::Grz3;
  return std::nullopt;
}

std::vector<Formula> axiom_suite(LogicId id) {
  Formula p = Formula::var("p");
  Formula q = Formula::var("q");
  std::vector<Formula> out{build_axiom(Schema::K, {p, q})};
  if (id == LogicId::K) return out;
  out.push_back(build_axiom(Schema::T, {p}));
  out.push_back(build_axiom(Schema::Four, {p}));
  if (id == LogicId::Grz || id == LogicId::Grz2 || id == LogicId::Grz3)
    out.push_back(build_axiom(Schema::Grz, {p}));
  if (id == LogicId::S4_2 || id == LogicId::Grz2)
    out.push_back(build_axiom(Schema::Two, {p}));
  if (id == LogicId::S4_3 || id == LogicId::Grz3)
    out.push_back(build_axiom(Schema::Three, {p, q}));
  return out;
}

FrameClass default_class(LogicId id) {
  switch (id) {
    case LogicId::K: return FrameClass::Arbitrary;
    case LogicId::S4: return FrameClass::Preorder;
    case LogicId::S4_2: return FrameClass::DirectedPreorder;
    case LogicId::S4_3: return FrameClass::LinearPreorder;
    case LogicId::Grz: return FrameClass::Poset;
    case LogicId::Grz2: return FrameClass::DirectedPoset;
    case LogicId::Grz3: return FrameClass::LinearOrder;
  }
  return FrameClass::Arbitrary;
}

SearchReport countermodel_search(LogicId logic, const Formula& f, int nmax,
                                 std::optional<FrameClass> class_override,
                                 std::size_t frame_cap,
                                 std::uint64_t valuation_cap) {
  FrameClass cls = class_override.value_or(default_class(logic));
  ClassSweepReport sweep =
      class_valid_upto(cls, f, nmax, frame_cap, valuation_cap);
  SearchReport report;
  report.found = sweep.countermodel.has_value();
  report.witness = std::move(sweep.countermodel);
  report.frames_examined = sweep.frames_examined;
  report.bound = nmax;
  report.frame_class = cls;
  return report;
}

namespace {

LemmaCheck sweep_valid(std::string id, std::string description, FrameClass c,
                       const Formula& f, int nmax, bool transitive_only = false) {
  LemmaCheck check{std::move(id), std::move(description), true, ""};
  for (int n = 1; n <= nmax && check.passed; ++n)
    for (const Frame& frame : enumerate_frames(c, n, /*up_to_iso=*/true)) {
      if (transitive_only && !properties(frame).transitive) continue;
      if (auto cm = find_frame_countermodel(frame, f)) {
        check.passed = false;
        check.detail = "fails on a " + std::to_string(n) + "-world frame at world " +
                       std::to_string(cm->world);
        break;
      }
    }
  return check;
}

} // namespace

std::vector<LemmaCheck> verify_displayed_lemmas(int nmax) {
  std::vector<LemmaCheck> out;
  Formula p = Formula::var("p");
  Formula alpha = Formula::var("a");
  Formula beta = Formula::var("b");

  out.push_back(sweep_valid(
      "a", "technical lemma formula holds on every frame",
      FrameClass::Arbitrary, build_axiom(Schema::TechnicalLemma, {p}), nmax));

  Formula k4_step = Formula::Implies(
      Formula::Diamond(Formula::Or(alpha, Formula::Diamond(beta))),
      Formula::Diamond(Formula::Or(alpha, beta)));
  out.push_back(sweep_valid("b",
                            "<>(a | <>b) -> <>(a | b) holds on every "
                            "transitive frame",
                            FrameClass::Arbitrary, k4_step, nmax,
                            /*transitive_only=*/true));

  Formula grz = build_axiom(Schema::Grz, {p});
  Formula grz_disj = build_axiom(Schema::GrzDisjunctive, {p});
  Formula grz_concise = build_axiom(Schema::GrzConcise, {p});
  LemmaCheck c1 = sweep_valid("c", "", FrameClass::Arbitrary,
                              Formula::Iff(grz, grz_disj), nmax);
  LemmaCheck c2 = sweep_valid("c", "", FrameClass::Arbitrary,
                              Formula::Iff(grz_disj, grz_concise), nmax);
  out.push_back(LemmaCheck{
      "c", "the three renderings of the Grzegorczyk axiom are equivalent",
      c1.passed && c2.passed,
      c1.passed ? c2.detail : c1.detail});

  Formula grz_star = build_axiom(Schema::GrzStar, {p});
  LemmaCheck d = sweep_valid("d", "", FrameClass::Alt1, grz_star, nmax);
  bool refuted = false;
  std::string witness;
  for (int n = 1; n <= nmax && !refuted; ++n)
    for (const Frame& frame :
         enumerate_frames(FrameClass::Alt1, n, /*up_to_iso=*/true))
      if (auto cm = find_frame_countermodel(frame, grz)) {
        refuted = true;
        witness = std::to_string(n) + "-world alt1 frame refutes the axiom";
        break;
      }
  out.push_back(LemmaCheck{
      "d", "alt1 frames validate the penultimacy axiom but some refute Grz",
      d.passed && refuted, d.passed ? witness : d.detail});

  LemmaCheck e{"e",
               "preorders validate Grz exactly when they validate the "
               "penultimacy axiom",
               true, ""};
  for (int n = 1; n <= nmax && e.passed; ++n)
    for (const Frame& frame :
         enumerate_frames(FrameClass::Preorder, n, /*up_to_iso=*/true)) {
      bool grz_ok = frame_valid(frame, grz);
      bool star_ok = frame_valid(frame, grz_star);
      if (grz_ok != star_ok) {
        e.passed = false;
        e.detail = "disagreement on a " + std::to_string(n) + "-world preorder";
        break;
      }
    }
  out.push_back(e);
  return out;
}

} // namespace grz
