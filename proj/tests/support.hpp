#pragma once

// Shared helpers for the unit and acceptance suites: a deterministic
// generator (no reliance on library distributions), small frame builders,
// and independent brute-force oracles kept apart from the implementation
// paths they check.

#include <cstdint>
#include <string>
#include <vector>

#include "grz/formula.hpp"
#include "grz/frame.hpp"
#include "grz/model.hpp"

namespace support {

// splitmix64; identical draws on every platform
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed + 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

inline grz::Formula random_formula(Rng& rng,
                                   const std::vector<std::string>& vocab,
                                   int depth) {
  using grz::Formula;
  if (depth == 0 || rng.below(8) == 0) {
    std::uint64_t pick = rng.below(vocab.size() + 2);
    if (pick == vocab.size()) return Formula::top();
    if (pick == vocab.size() + 1) return Formula::bottom();
    return Formula::var(vocab[pick]);
  }
  switch (rng.below(7)) {
    case 0: return Formula::Not(random_formula(rng, vocab, depth - 1));
    case 1: return Formula::Box(random_formula(rng, vocab, depth - 1));
    case 2: return Formula::Diamond(random_formula(rng, vocab, depth - 1));
    case 3:
      return Formula::And(random_formula(rng, vocab, depth - 1),
                          random_formula(rng, vocab, depth - 1));
    case 4:
      return Formula::Or(random_formula(rng, vocab, depth - 1),
                         random_formula(rng, vocab, depth - 1));
    case 5:
      return Formula::Implies(random_formula(rng, vocab, depth - 1),
                              random_formula(rng, vocab, depth - 1));
    default:
      return Formula::Iff(random_formula(rng, vocab, depth - 1),
                          random_formula(rng, vocab, depth - 1));
  }
}

// reflexive-transitive chain 0 < 1 < ... < n-1
inline grz::Frame chain(int n) {
  grz::Frame f(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) f.add_edge(i, j);
  return f;
}

// single cluster: all worlds mutually accessible
inline grz::Frame cluster(int n) {
  grz::Frame f(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) f.add_edge(i, j);
  return f;
}

// 0 < {1, 2} < 3, reflexive-transitive
inline grz::Frame diamond() {
  grz::Frame f(4);
  for (int i = 0; i < 4; ++i) f.add_edge(i, i);
  f.add_edge(0, 1);
  f.add_edge(0, 2);
  f.add_edge(0, 3);
  f.add_edge(1, 3);
  f.add_edge(2, 3);
  return f;
}

inline grz::Frame antichain(int n) {
  grz::Frame f(n);
  for (int i = 0; i < n; ++i) f.add_edge(i, i);
  return f;
}

inline grz::Model random_model(Rng& rng, const grz::Frame& f,
                               const std::vector<std::string>& vocab) {
  grz::Model m{f, {}};
  for (const auto& v : vocab) m.valuation.emplace(v, rng.next() & f.worlds());
  return m;
}

// --- brute-force oracles ----------------------------------------------------

inline bool oracle_reflexive(const grz::Frame& f) {
  for (int i = 0; i < f.size(); ++i)
    if (!f.sees(i, i)) return false;
  return true;
}

inline bool oracle_transitive(const grz::Frame& f) {
  for (int i = 0; i < f.size(); ++i)
    for (int j = 0; j < f.size(); ++j)
      for (int k = 0; k < f.size(); ++k)
        if (f.sees(i, j) && f.sees(j, k) && !f.sees(i, k)) return false;
  return true;
}

inline bool oracle_antisymmetric(const grz::Frame& f) {
  for (int i = 0; i < f.size(); ++i)
    for (int j = 0; j < f.size(); ++j)
      if (i != j && f.sees(i, j) && f.sees(j, i)) return false;
  return true;
}

// all labeled frames on n worlds, as relation bitmasks fed to `fn`
template <typename Fn>
void for_all_relations(int n, Fn&& fn) {
  std::uint64_t total = std::uint64_t{1} << (n * n);
  for (std::uint64_t key = 0; key < total; ++key) {
    grz::Frame f(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if ((key >> (i * n + j)) & 1) f.add_edge(i, j);
    fn(f);
  }
}

// recursive satisfaction, the slow independent twin of extension()
inline bool oracle_satisfies(const grz::Model& m, int w, const grz::Formula& f) {
  using K = grz::Formula::Kind;
  switch (f.kind()) {
    case K::Var: {
      auto it = m.valuation.find(f.name());
      return it != m.valuation.end() && ((it->second >> w) & 1);
    }
    case K::Top: return true;
    case K::Bottom: return false;
    case K::Not: return !oracle_satisfies(m, w, f.child());
    case K::And:
      return oracle_satisfies(m, w, f.left()) &&
             oracle_satisfies(m, w, f.right());
    case K::Or:
      return oracle_satisfies(m, w, f.left()) ||
             oracle_satisfies(m, w, f.right());
    case K::Implies:
      return !oracle_satisfies(m, w, f.left()) ||
             oracle_satisfies(m, w, f.right());
    case K::Iff:
      return oracle_satisfies(m, w, f.left()) ==
             oracle_satisfies(m, w, f.right());
    case K::Box: {
      for (int v = 0; v < m.frame.size(); ++v)
        if (m.frame.sees(w, v) && !oracle_satisfies(m, v, f.child()))
          return false;
      return true;
    }
    case K::Diamond: {
      for (int v = 0; v < m.frame.size(); ++v)
        if (m.frame.sees(w, v) && oracle_satisfies(m, v, f.child()))
          return true;
      return false;
    }
  }
  return false;
}

} // namespace support
