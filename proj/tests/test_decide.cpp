#include <doctest.h>

#include "grz/decide.hpp"
#include "support.hpp"

using namespace grz;

namespace {

Formula axiom3() {
  return build_axiom(Schema::Three, {Formula::var("p"), Formula::var("q")});
}

// the fixed catalog of Grz.2 non-theorems used by the characterization sweep
std::vector<Formula> nontheorems() {
  return {
      axiom3(),
      build_axiom(Schema::Alt1, {Formula::var("p")}),
      parse_formula("contingent(p) -> penultimate(p) | penultimate(~p)"),
      parse_formula("p -> []p"),
      parse_formula("<>[]p"),
  };
}

} // namespace

TEST_CASE("axiom_suite composition") {
  CHECK(axiom_suite(LogicId::K).size() == 1);
  CHECK(axiom_suite(LogicId::S4).size() == 3);
  auto grz2 = axiom_suite(LogicId::Grz2);
  REQUIRE(grz2.size() == 5); // K, T, 4, Grz, .2
  CHECK(grz2[3] == build_axiom(Schema::Grz, {Formula::var("p")}));
  CHECK(grz2[4] == build_axiom(Schema::Two, {Formula::var("p")}));
  CHECK(axiom_suite(LogicId::Grz3).back() == axiom3());
}

TEST_CASE("default classes split posets from preorders") {
  CHECK(default_class(LogicId::K) == FrameClass::Arbitrary);
  CHECK(default_class(LogicId::S4) == FrameClass::Preorder);
  CHECK(default_class(LogicId::S4_2) == FrameClass::DirectedPreorder);
  CHECK(default_class(LogicId::S4_3) == FrameClass::LinearPreorder);
  CHECK(default_class(LogicId::Grz) == FrameClass::Poset);
  CHECK(default_class(LogicId::Grz2) == FrameClass::DirectedPoset);
  CHECK(default_class(LogicId::Grz3) == FrameClass::LinearOrder);
}

TEST_CASE("countermodel_search: .3 fails on the diamond Boolean algebra") {
  SearchReport report = countermodel_search(LogicId::Grz2, axiom3(), 4,
                                            FrameClass::BooleanAlgebra);
  REQUIRE(report.found);
  REQUIRE(report.witness.has_value());
  const Countermodel& cm = *report.witness;
  CHECK(cm.model.frame.size() == 4);
  CHECK(isomorphic(cm.model.frame, support::diamond()));
  CHECK(cm.world == 0); // fails at the bottom of the inclusion order
  // deterministic first witness of the sweep: p on one branch, q on the other
  CHECK(cm.model.valuation.at("p") == (world_bit(2) | world_bit(3)));
  CHECK(cm.model.valuation.at("q") == (world_bit(1) | world_bit(3)));
  CHECK(!support::oracle_satisfies(cm.model, cm.world, axiom3()));
  CHECK(report.frames_examined == 3); // sizes 1, 2 and the diamond
}

TEST_CASE("countermodel_search: Grz sweep over posets exhausts") {
  SearchReport report = countermodel_search(
      LogicId::Grz, build_axiom(Schema::Grz, {Formula::var("p")}), 4);
  CHECK(!report.found);
  CHECK(report.frames_examined == 24); // posets up to iso, sizes 1..4
}

TEST_CASE("countermodel_search: K refutes T on the irreflexive point") {
  SearchReport report =
      countermodel_search(LogicId::K, parse_formula("[]p -> p"), 1);
  REQUIRE(report.found);
  CHECK(report.witness->model.frame.size() == 1);
  CHECK(!report.witness->model.frame.sees(0, 0));
  CHECK(report.witness->world == 0);
}

TEST_CASE("soundness: every suite is valid on its characterizing class") {
  const LogicId logics[] = {LogicId::K,   LogicId::S4,  LogicId::S4_2,
                            LogicId::S4_3, LogicId::Grz, LogicId::Grz2,
                            LogicId::Grz3};
  for (LogicId logic : logics)
    for (const Formula& axiom : axiom_suite(logic)) {
      ClassSweepReport sweep = class_valid_upto(default_class(logic), axiom, 4);
      INFO("logic " << to_string(logic) << " axiom " << to_string(axiom));
      CHECK(sweep.exhausted());
    }
}

TEST_CASE("every found witness re-checks as a countermodel") {
  for (const Formula& f : nontheorems()) {
    SearchReport report = countermodel_search(LogicId::Grz2, f, 6);
    REQUIRE(report.found);
    CHECK(!support::oracle_satisfies(report.witness->model,
                                     report.witness->world, f));
  }
}

TEST_CASE("catalog countermodels exist in all four characterizing classes") {
  // desk-scale shadow of the characterization theorem; the acceptance suite
  // runs the full bounds
  const FrameClass classes[] = {FrameClass::DirectedPoset, FrameClass::Lattice,
                                FrameClass::BaledTree,
                                FrameClass::BooleanAlgebra};
  for (const Formula& f : {axiom3(), parse_formula("p -> []p")})
    for (FrameClass c : classes) {
      int bound = c == FrameClass::BooleanAlgebra ? 8 : 6;
      SearchReport report = countermodel_search(LogicId::Grz2, f, bound, c);
      INFO("class " << to_string(c) << " formula " << to_string(f));
      REQUIRE(report.found);
      CHECK(!support::oracle_satisfies(report.witness->model,
                                       report.witness->world, f));
      CHECK(check_class(report.witness->model.frame, c));
    }
}

TEST_CASE("verify_displayed_lemmas at the recommended bound") {
  auto checks = verify_displayed_lemmas(3);
  REQUIRE(checks.size() == 5);
  for (const LemmaCheck& c : checks) {
    INFO("item " << c.id << ": " << c.description << " " << c.detail);
    CHECK(c.passed);
  }
  CHECK(checks[3].id == "d");
  CHECK(checks[3].detail.find("1-world") != std::string::npos);
}
