#include <doctest.h>

#include "grz/formula.hpp"
#include "support.hpp"

using namespace grz;

namespace {

Formula p() { return Formula::var("p"); }
Formula q() { return Formula::var("q"); }

void flatten_and(const Formula& f, std::vector<Formula>& out) {
  if (f.kind() == Formula::Kind::And) {
    flatten_and(f.left(), out);
    out.push_back(f.right());
  } else {
    out.push_back(f);
  }
}

int count_or_disjuncts(const Formula& f) {
  if (f.kind() != Formula::Kind::Or) return 1;
  return count_or_disjuncts(f.left()) + 1;
}

} // namespace

TEST_CASE("parse: atoms and constants") {
  CHECK(parse_formula("p") == p());
  CHECK(parse_formula("true") == Formula::top());
  CHECK(parse_formula("false") == Formula::bottom());
  CHECK(parse_formula("  some_var9 ") == Formula::var("some_var9"));
}

TEST_CASE("parse: the Grzegorczyk axiom") {
  CHECK(parse_formula("[]([](p -> []p) -> p) -> p") ==
        build_axiom(Schema::Grz, {p()}));
}

TEST_CASE("parse: macros expand while parsing") {
  Formula expanded = parse_formula("penultimate(p)");
  CHECK(expanded == penultimate(p()));
  CHECK(expanded == parse_formula("p & <>~p & [](~p -> []~p)"));
  CHECK(parse_formula("wpenultimate(q)") == weak_penultimate(q()));
  CHECK(parse_formula("contingent(p | q)") ==
        contingent(Formula::Or(p(), q())));
}

TEST_CASE("parse: precedence and associativity") {
  // -> is right associative, <-> chains to the left, & binds tighter than |
  CHECK(parse_formula("p -> q -> p") ==
        Formula::Implies(p(), Formula::Implies(q(), p())));
  CHECK(parse_formula("p <-> q <-> p") ==
        Formula::Iff(Formula::Iff(p(), q()), p()));
  CHECK(parse_formula("p | q & p") ==
        Formula::Or(p(), Formula::And(q(), p())));
  CHECK(parse_formula("~[]<>p") ==
        Formula::Not(Formula::Box(Formula::Diamond(p()))));
}

TEST_CASE("parse: errors carry offsets and expectations") {
  CHECK_THROWS_AS(parse_formula("p &"), ParseError);
  try {
    parse_formula("p & ");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
    CHECK(!e.expected().empty());
  }
  try {
    parse_formula("foo(p)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("unknown macro") != std::string::npos);
    CHECK(e.offset() == 0);
  }
  CHECK_THROWS_AS(parse_formula("p @ q"), ParseError);
  CHECK_THROWS_AS(parse_formula("(p"), ParseError);
  CHECK_THROWS_AS(parse_formula("p q"), ParseError);
}

TEST_CASE("print: atoms and precedence cases") {
  CHECK(to_string(p()) == "p");
  CHECK(to_string(Formula::Box(Formula::Implies(p(), Formula::Box(p())))) ==
        "[](p -> []p)");
  CHECK(to_string(parse_formula("p | (q | p)")) == "p | (q | p)");
  CHECK(to_string(parse_formula("(p -> q) -> p")) == "(p -> q) -> p");
  CHECK(to_string(parse_formula("p <-> (q <-> p)")) == "p <-> (q <-> p)");
  CHECK(to_string(penultimate(p())) == "p & <>~p & [](~p -> []~p)");
}

TEST_CASE("print/parse round trip on random trees") {
  support::Rng rng(2024);
  std::vector<std::string> vocab{"p", "q", "r_1"};
  for (int i = 0; i < 1000; ++i) {
    Formula f = support::random_formula(rng, vocab, 8);
    CHECK(parse_formula(to_string(f)) == f);
  }
}

TEST_CASE("substitute: identity, simultaneity, displayed instance") {
  CHECK(substitute(p(), {}) == p());

  // simultaneous swap, not sequential
  Substitution swap{{"p", q()}, {"q", p()}};
  CHECK(substitute(parse_formula("p & q"), swap) == parse_formula("q & p"));

  // substituting <>p -> p into the concise Grzegorczyk form
  Formula concise = parse_formula("q | <>wpenultimate(~q)");
  Formula instance = substitute(concise, {{"q", parse_formula("<>p -> p")}});
  Formula displayed = parse_formula(
      "(<>p -> p) | <>(~(<>p -> p) & [](~~(<>p -> p) -> []~~(<>p -> p)))");
  CHECK(instance == displayed);
}

TEST_CASE("substitute distributes over connectives") {
  support::Rng rng(7);
  std::vector<std::string> vocab{"p", "q"};
  Substitution s{{"p", parse_formula("<>q -> q")}, {"q", parse_formula("~p")}};
  for (int i = 0; i < 200; ++i) {
    Formula f = support::random_formula(rng, vocab, 5);
    Formula g = support::random_formula(rng, vocab, 5);
    CHECK(substitute(Formula::Box(f), s) == Formula::Box(substitute(f, s)));
    CHECK(substitute(Formula::Diamond(f), s) ==
          Formula::Diamond(substitute(f, s)));
    CHECK(substitute(Formula::Not(f), s) == Formula::Not(substitute(f, s)));
    CHECK(substitute(Formula::And(f, g), s) ==
          Formula::And(substitute(f, s), substitute(g, s)));
    CHECK(substitute(Formula::Implies(f, g), s) ==
          Formula::Implies(substitute(f, s), substitute(g, s)));
  }
}

TEST_CASE("build_macro: the three defined operators") {
  CHECK(build_macro(Macro::Penultimate, p()) ==
        parse_formula("p & <>~p & [](~p -> []~p)"));
  CHECK(build_macro(Macro::WeakPenultimate, p()) ==
        parse_formula("p & [](~p -> []~p)"));
  CHECK(build_macro(Macro::Contingent, Formula::top()) ==
        parse_formula("<>true & <>~true"));
}

TEST_CASE("build_axiom: schema instances") {
  CHECK(build_axiom(Schema::Grz, {p()}) ==
        parse_formula("[]([](p -> []p) -> p) -> p"));
  CHECK(build_axiom(Schema::GrzStar, {p()}) ==
        parse_formula(
            "(<>p & <>~p) -> <>(penultimate(p) | penultimate(~p))"));
  CHECK(build_axiom(Schema::Alt1, {p()}) == parse_formula("[]p | []~p"));
  CHECK(build_axiom(Schema::T, {p()}) == parse_formula("[]p -> p"));
  CHECK(build_axiom(Schema::Four, {p()}) == parse_formula("[]p -> [][]p"));
  CHECK(build_axiom(Schema::Two, {p()}) == parse_formula("<>[]p -> []<>p"));
  CHECK(build_axiom(Schema::Three, {p(), q()}) ==
        parse_formula("[]([]p -> q) | []([]q -> p)"));
  CHECK(build_axiom(Schema::K, {p(), q()}) ==
        parse_formula("[](p -> q) -> ([]p -> []q)"));
  CHECK(build_axiom(Schema::GrzDisjunctive, {p()}) ==
        parse_formula("p | <>(~p & [](p -> []p))"));
  CHECK(build_axiom(Schema::GrzConcise, {p()}) ==
        parse_formula("p | <>wpenultimate(~p)"));
  CHECK_THROWS_AS(build_axiom(Schema::Grz, {p(), q()}), std::invalid_argument);
  CHECK_THROWS_AS(build_axiom(Schema::K, {p()}), std::invalid_argument);
}

TEST_CASE("theta: exact button patterns") {
  std::vector<Formula> b{Formula::var("b0"), Formula::var("b1")};
  CHECK(to_string(theta(b, 0b01)) == "[]b0 & ~[]b1");
  CHECK(to_string(theta({Formula::var("b0")}, 0)) == "~[]b0");
  CHECK(to_string(theta(b, 0b11)) == "[]b0 & []b1");
}

TEST_CASE("jankov_fine: one reflexive node") {
  Frame f(1);
  f.add_edge(0, 0);
  CHECK(to_string(jankov_fine(f, 0)) == "w0 & [](w0 & (w0 -> <>w0))");
}

TEST_CASE("jankov_fine: chain clause") {
  Frame f = support::chain(2);
  std::string text = to_string(jankov_fine(f, 0));
  CHECK(text.find("(w1 -> ~<>w0)") != std::string::npos);
}

TEST_CASE("jankov_fine: diamond clause counts match pair enumeration") {
  Frame f = support::diamond();
  Formula jf = jankov_fine(f, 0);

  // independent clause counts straight off the frame
  int distinct_pairs = 0, related = 0, unrelated = 0;
  for (int w = 0; w < f.size(); ++w)
    for (int v = 0; v < f.size(); ++v) {
      if (w != v) ++distinct_pairs;
      if (f.sees(w, v))
        ++related;
      else
        ++unrelated;
    }
  CHECK(distinct_pairs == 12);
  CHECK(related == 9);
  CHECK(unrelated == 7);

  REQUIRE(jf.kind() == Formula::Kind::And);
  REQUIRE(jf.right().kind() == Formula::Kind::Box);
  std::vector<Formula> clauses;
  flatten_and(jf.right().child(), clauses);

  int disjuncts = count_or_disjuncts(clauses.front());
  int excl = 0, access = 0, non_access = 0;
  for (std::size_t i = 1; i < clauses.size(); ++i) {
    const Formula& c = clauses[i];
    REQUIRE(c.kind() == Formula::Kind::Implies);
    if (c.right().kind() == Formula::Kind::Not &&
        c.right().child().kind() == Formula::Kind::Var)
      ++excl;
    else if (c.right().kind() == Formula::Kind::Diamond)
      ++access;
    else
      ++non_access;
  }
  CHECK(disjuncts == 4);
  CHECK(excl == distinct_pairs);
  CHECK(access == related);
  CHECK(non_access == unrelated);
}

TEST_CASE("jankov_fine: one variable per node") {
  support::Rng rng(5);
  for (int n = 1; n <= 4; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      Frame f(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i == j || rng.below(2)) f.add_edge(i, j);
      CHECK(variables(jankov_fine(f, 0)).size() ==
            static_cast<std::size_t>(n));
    }
}

TEST_CASE("variable names follow the identifier rule") {
  CHECK_THROWS_AS(Formula::var("P"), std::invalid_argument);
  CHECK_THROWS_AS(Formula::var("true"), std::invalid_argument);
  CHECK_THROWS_AS(Formula::var("penultimate"), std::invalid_argument);
  CHECK_THROWS_AS(Formula::var(""), std::invalid_argument);
  CHECK_NOTHROW(Formula::var("pQ_9"));
}
