#include <doctest.h>

#include <functional>

#include "grz/bisim.hpp"
#include "grz/construct.hpp"
#include "grz/control.hpp"
#include "support.hpp"

using namespace grz;

namespace {

std::vector<std::string> vocab_of(const Model& m) {
  std::vector<std::string> out;
  for (const auto& [var, set] : m.valuation) {
    (void)set;
    out.push_back(var);
  }
  return out;
}

// independent count of maximal chains in [lo, hi], by brute recursion over
// strictly increasing extensions
long count_maximal_chains(const Frame& f, int lo, int hi) {
  if (lo == hi) return 1;
  long total = 0;
  for (int next = 0; next < f.size(); ++next) {
    if (next == lo || next == hi) continue;
    if (!f.sees(lo, next) || !f.sees(next, hi)) continue;
    // next must cover lo within the interval
    bool covered = false;
    for (int z = 0; z < f.size(); ++z)
      if (z != lo && z != next && f.sees(lo, z) && f.sees(z, next) &&
          f.sees(z, hi))
        covered = true;
    if (!covered) total += count_maximal_chains(f, next, hi);
  }
  // the two-element chain itself, when hi covers lo
  bool direct_cover = f.sees(lo, hi);
  for (int z = 0; z < f.size(); ++z)
    if (z != lo && z != hi && f.sees(lo, z) && f.sees(z, hi))
      direct_cover = false;
  return total + (direct_cover ? 1 : 0);
}

long expected_unravel_size(const Frame& f, int point) {
  long total = 1; // the bale
  WorldSet reach = reachable_from(f, point);
  for (int u = 0; u < f.size(); ++u)
    if ((reach >> u) & 1) total += count_maximal_chains(f, point, u);
  return total;
}

struct TreeShape {
  int width = 0;
  int depth = 0;
  bool full_and_uniform = true;
};

// children = covers in the tree order; checks full b-ary, uniform leaf depth
TreeShape analyze_tree(const Frame& f, int root) {
  TreeShape shape;
  std::vector<std::vector<int>> children(f.size());
  for (int a = 0; a < f.size(); ++a)
    for (int b = 0; b < f.size(); ++b) {
      if (a == b || !f.sees(a, b)) continue;
      bool cover = true;
      for (int z = 0; z < f.size(); ++z)
        if (z != a && z != b && f.sees(a, z) && f.sees(z, b)) cover = false;
      if (cover) children[a].push_back(b);
    }
  for (int v = 0; v < f.size(); ++v)
    shape.width = std::max(shape.width, static_cast<int>(children[v].size()));
  std::function<void(int, int)> walk = [&](int v, int d) {
    shape.depth = std::max(shape.depth, d);
    for (int c : children[v]) walk(c, d + 1);
  };
  walk(root, 0);
  std::function<void(int, int)> verify = [&](int v, int d) {
    if (children[v].empty()) {
      if (d != shape.depth) shape.full_and_uniform = false;
    } else if (static_cast<int>(children[v].size()) != shape.width) {
      shape.full_and_uniform = false;
    }
    for (int c : children[v]) verify(c, d + 1);
  };
  verify(root, 0);
  return shape;
}

} // namespace

TEST_CASE("unravel_baled: a single reflexive world becomes a two-chain") {
  Model m{support::antichain(1), {}};
  m.valuation.emplace("p", world_bit(0));
  UnravelResult r = unravel_baled({m, 0});
  CHECK(r.model.frame.size() == 2);
  CHECK(isomorphic(r.model.frame, support::chain(2)));
  CHECK(r.model.valuation.at("p") == (world_bit(0) | world_bit(1)));
  CHECK(are_bisimilar({r.model, r.point}, {m, 0}, {"p"}));
}

TEST_CASE("unravel_baled: the diamond grows two copies of the top") {
  support::Rng rng(3);
  Model m = support::random_model(rng, support::diamond(), {"p", "q"});
  UnravelResult r = unravel_baled({m, 0});
  CHECK(r.model.frame.size() == 6);
  CHECK(expected_unravel_size(m.frame, 0) == 6);
  CHECK(check_class(r.model.frame, FrameClass::BaledTree));
  CHECK(!check_bisimulation(r.copy_map, r.model, m, vocab_of(m)).has_value());
}

TEST_CASE("unravel_baled: a two-chain stays a chain") {
  Model m{support::chain(2), {}};
  m.valuation.emplace("p", world_bit(1));
  UnravelResult r = unravel_baled({m, 0});
  CHECK(r.model.frame.size() == 3);
  CHECK(isomorphic(r.model.frame, support::chain(3)));
}

TEST_CASE("unravel_baled: rejects non-directed input") {
  Model m{support::antichain(2), {}};
  CHECK_THROWS_AS(unravel_baled({m, 0}), std::invalid_argument);
  Model cluster{support::cluster(2), {}};
  CHECK_THROWS_AS(unravel_baled({cluster, 0}), std::invalid_argument);
}

TEST_CASE("unravel_baled: certificate sweep over small directed posets") {
  support::Rng rng(2025);
  std::vector<std::string> vocab{"p", "q"};
  for (int n = 1; n <= 4; ++n)
    for (const Frame& f :
         enumerate_frames(FrameClass::DirectedPoset, n, true)) {
      long expected = expected_unravel_size(f, 0);
      for (int sample = 0; sample < 10; ++sample) {
        Model m = support::random_model(rng, f, vocab);
        UnravelResult r = unravel_baled({m, 0});
        CHECK(r.model.frame.size() == expected);
        CHECK(check_class(r.model.frame, FrameClass::BaledTree));
        CHECK(!check_bisimulation(r.copy_map, r.model, m, vocab).has_value());
        CHECK(are_bisimilar({r.model, r.point}, {m, 0}, vocab));
      }
    }
}

TEST_CASE("unravel_tree: chains and the V are already regular trees") {
  Model chain{support::chain(3), {}};
  chain.valuation.emplace("p", world_bit(2));
  UnravelResult r = unravel_tree({chain, 0}, false);
  CHECK(r.model.frame.size() == 3);
  CHECK(isomorphic(r.model.frame, support::chain(3)));
  UnravelResult reg = unravel_tree({chain, 0}, true);
  CHECK(reg.model.frame.size() == 3); // width 1, nothing to pad

  Frame v(3);
  for (int i = 0; i < 3; ++i) v.add_edge(i, i);
  v.add_edge(0, 1);
  v.add_edge(0, 2);
  Model vm{v, {}};
  vm.valuation.emplace("p", world_bit(1));
  UnravelResult vr = unravel_tree({vm, 0}, true);
  CHECK(vr.model.frame.size() == 3); // already full 2-ary, depth 1
  TreeShape shape = analyze_tree(vr.model.frame, vr.point);
  CHECK(shape.full_and_uniform);
  CHECK(shape.width == 2);
  CHECK(shape.depth == 1);
}

TEST_CASE("unravel_tree: the diamond pads to a full binary tree") {
  support::Rng rng(8);
  Model m = support::random_model(rng, support::diamond(), {"p", "q"});
  UnravelResult plain = unravel_tree({m, 0}, false);
  CHECK(plain.model.frame.size() == 5);
  CHECK(check_class(plain.model.frame, FrameClass::Tree));

  UnravelResult reg = unravel_tree({m, 0}, true);
  CHECK(reg.model.frame.size() == 7); // full binary of depth 2
  TreeShape shape = analyze_tree(reg.model.frame, reg.point);
  CHECK(shape.full_and_uniform);
  CHECK(shape.width == 2);
  CHECK(shape.depth == 2);
  CHECK(!check_bisimulation(reg.copy_map, reg.model, m, vocab_of(m)).has_value());
  CHECK(are_bisimilar({reg.model, reg.point}, {m, 0}, vocab_of(m)));
}

TEST_CASE("unravel_tree: regular padding certified on small posets") {
  support::Rng rng(55);
  std::vector<std::string> vocab{"p", "q"};
  for (int n = 1; n <= 4; ++n)
    for (const Frame& f : enumerate_frames(FrameClass::Poset, n, true)) {
      Model m = support::random_model(rng, f, vocab);
      UnravelResult r = unravel_tree({m, 0}, true);
      CHECK(check_class(r.model.frame, FrameClass::Tree));
      TreeShape shape = analyze_tree(r.model.frame, r.point);
      CHECK(shape.full_and_uniform);
      CHECK(!check_bisimulation(r.copy_map, r.model, m, vocab).has_value());
      CHECK(are_bisimilar({r.model, r.point}, {m, 0}, vocab));
    }
}

TEST_CASE("unravel_tree: regularization respects the world cap") {
  // a wide root with one deep branch: the full 4-ary depth-3 tree would
  // need 85 worlds
  Frame f(7);
  for (int i = 0; i < 7; ++i) f.add_edge(i, i);
  for (int leaf = 1; leaf <= 4; ++leaf) f.add_edge(0, leaf);
  f.add_edge(1, 5);
  f.add_edge(5, 6);
  f.add_edge(0, 5);
  f.add_edge(0, 6);
  f.add_edge(1, 6);
  Model m{f, {}};
  CHECK(check_class(f, FrameClass::Poset));
  CHECK_NOTHROW(unravel_tree({m, 0}, false));
  CHECK_THROWS_AS(unravel_tree({m, 0}, true), ResourceLimitError);
}

TEST_CASE("powerset_button_model: degenerate and small cases") {
  ButtonModel zero = powerset_button_model(0);
  CHECK(zero.pointed.model.frame.size() == 1);
  CHECK(zero.buttons.empty());

  ButtonModel two = powerset_button_model(2);
  CHECK(isomorphic(two.pointed.model.frame, support::diamond()));
  CHECK(check_control(ControlKind::IndependentButtons, two.pointed,
                      two.buttons)
            .passed);

  ButtonModel three = powerset_button_model(3);
  for (const Formula& b : three.buttons) {
    Formula button = Formula::Box(Formula::Diamond(Formula::Box(b)));
    CHECK(extension(three.pointed.model, button) ==
          three.pointed.model.frame.worlds());
  }
  CHECK_THROWS_AS(powerset_button_model(7), ResourceLimitError);
}

TEST_CASE("powerset_button_model: five independent buttons") {
  ButtonModel five = powerset_button_model(5);
  CHECK(five.pointed.model.frame.size() == 32);
  CHECK(check_control(ControlKind::IndependentButtons, five.pointed,
                      five.buttons)
            .passed);
}

TEST_CASE("powerset_button_model: six buttons hit the 64-world boundary") {
  ButtonModel six = powerset_button_model(6);
  const Model& m = six.pointed.model;
  CHECK(m.frame.size() == 64);
  CHECK(m.frame.worlds() == ~WorldSet{0});
  // every b_i is a button everywhere, and the sets behave at the top bit
  for (const Formula& b : six.buttons) {
    Formula button = Formula::Box(Formula::Diamond(Formula::Box(b)));
    CHECK(extension(m, button) == m.frame.worlds());
  }
  CHECK(satisfies({m, 63}, parse_formula("[]b5")));
  CHECK(!satisfies({m, 0}, parse_formula("<>~b0 -> b0")));
  // the independence sweep itself is capped at 5 statements
  CHECK_THROWS_AS(
      check_control(ControlKind::IndependentButtons, six.pointed, six.buttons),
      ResourceLimitError);
}

TEST_CASE("ratchet_chain_model: volumes climb one by one") {
  RatchetModel one = ratchet_chain_model(1);
  CHECK(one.pointed.model.frame.size() == 1);
  CHECK(satisfies(one.pointed, Formula::Box(one.ratchet[0])));

  RatchetModel three = ratchet_chain_model(3);
  CHECK(check_control(ControlKind::Ratchet, three.pointed, three.ratchet)
            .passed);
  // volume-two pattern holds exactly at the middle world
  Formula volume_two =
      Formula::And(Formula::Box(three.ratchet[1]),
                   Formula::Not(Formula::Box(three.ratchet[2])));
  CHECK(extension(three.pointed.model, volume_two) == world_bit(1));

  for (int n = 2; n <= 6; ++n) {
    RatchetModel rm = ratchet_chain_model(n);
    CHECK(check_control(ControlKind::Ratchet, rm.pointed, rm.ratchet).passed);
  }
}
