#include "grz/frame.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <unordered_set>

namespace grz {

int first_world(WorldSet s) {
  return s == 0 ? -1 : std::countr_zero(s);
}

int world_count(WorldSet s) { return std::popcount(s); }

Frame::Frame(int size) : size_(size), rows_(static_cast<std::size_t>(size), 0) {
  if (size < 1 || size > kMaxWorlds)
    throw std::invalid_argument("frame size must be between 1 and 64");
}

Frame Frame::from_edges(int size,
                        const std::vector<std::pair<int, int>>& edges) {
  Frame f(size);
  for (auto [a, b] : edges) f.add_edge(a, b);
  return f;
}

void Frame::add_edge(int from, int to) {
  if (from < 0 || from >= size_ || to < 0 || to >= size_)
    throw std::invalid_argument("edge endpoint out of range");
  rows_[from] |= world_bit(to);
}

void Frame::remove_edge(int from, int to) {
  if (from < 0 || from >= size_ || to < 0 || to >= size_)
    throw std::invalid_argument("edge endpoint out of range");
  rows_[from] &= ~world_bit(to);
}

WorldSet Frame::predecessors(int to) const {
  WorldSet col = 0;
  for (int i = 0; i < size_; ++i)
    if (sees(i, to)) col |= world_bit(i);
  return col;
}

std::vector<std::pair<int, int>> Frame::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < size_; ++i)
    for (int j = 0; j < size_; ++j)
      if (sees(i, j)) out.emplace_back(i, j);
  return out;
}

std::uint64_t Frame::relation_key() const {
  if (size_ * size_ > 64)
    throw std::invalid_argument("relation key needs size*size <= 64");
  std::uint64_t key = 0;
  for (int i = 0; i < size_; ++i)
    for (int j = 0; j < size_; ++j)
      if (sees(i, j)) key |= std::uint64_t{1} << (i * size_ + j);
  return key;
}

namespace {

bool is_reflexive(const Frame& f) {
  for (int i = 0; i < f.size(); ++i)
    if (!f.sees(i, i)) return false;
  return true;
}

bool is_transitive(const Frame& f) {
  // i -> j forces row(i) to cover row(j)
  for (int i = 0; i < f.size(); ++i) {
    WorldSet succ = f.successors(i);
    for (WorldSet rest = succ; rest;) {
      int j = std::countr_zero(rest);
      rest &= rest - 1;
      if (f.successors(j) & ~succ) return false;
    }
  }
  return true;
}

bool is_antisymmetric(const Frame& f) {
  for (int i = 0; i < f.size(); ++i)
    for (int j = i + 1; j < f.size(); ++j)
      if (f.sees(i, j) && f.sees(j, i)) return false;
  return true;
}

bool is_directed(const Frame& f) {
  for (int i = 0; i < f.size(); ++i)
    for (int j = i; j < f.size(); ++j)
      if ((f.successors(i) & f.successors(j)) == 0) return false;
  return true;
}

bool is_total(const Frame& f) {
  for (int i = 0; i < f.size(); ++i)
    for (int j = i; j < f.size(); ++j)
      if (!f.sees(i, j) && !f.sees(j, i)) return false;
  return true;
}

bool is_poset(const FrameProperties& p) {
  return p.reflexive && p.transitive && p.antisymmetric;
}

std::optional<int> least_of(const Frame& f, WorldSet candidates) {
  // least element of a subset in a poset: its up-set covers the subset
  for (WorldSet rest = candidates; rest;) {
    int u = std::countr_zero(rest);
    rest &= rest - 1;
    if ((candidates & ~f.successors(u)) == 0) return u;
  }
  return std::nullopt;
}

std::optional<int> greatest_of(const Frame& f, WorldSet candidates) {
  for (WorldSet rest = candidates; rest;) {
    int u = std::countr_zero(rest);
    rest &= rest - 1;
    WorldSet down = f.predecessors(u);
    if ((candidates & ~down) == 0) return u;
  }
  return std::nullopt;
}

bool is_lattice(const Frame& f) {
  for (int i = 0; i < f.size(); ++i)
    for (int j = i; j < f.size(); ++j) {
      WorldSet pair = world_bit(i) | world_bit(j);
      if (!sup(f, pair) || !inf(f, pair)) return false;
    }
  return true;
}

// Finite Boolean algebra = bounded complemented distributive lattice; the
// power-of-two size check is redundant but cheap.
bool is_boolean_algebra(const Frame& f, const FrameProperties& p) {
  if (!p.lattice || !p.has_least || !p.has_greatest) return false;
  if (std::popcount(static_cast<unsigned>(f.size())) != 1) return false;
  int n = f.size();
  int bot = *least_of(f, f.worlds());
  int top = *greatest_of(f, f.worlds());
  std::vector<int> join(static_cast<std::size_t>(n) * n);
  std::vector<int> meet(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      join[x * n + y] = *sup(f, world_bit(x) | world_bit(y));
      meet[x * n + y] = *inf(f, world_bit(x) | world_bit(y));
    }
  for (int x = 0; x < n; ++x) {
    bool complemented = false;
    for (int y = 0; y < n && !complemented; ++y)
      complemented = join[x * n + y] == top && meet[x * n + y] == bot;
    if (!complemented) return false;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        int lhs = meet[x * n + join[y * n + z]];
        int rhs = join[meet[x * n + y] * n + meet[x * n + z]];
        if (lhs != rhs) return false;
      }
  return true;
}

// Tree: poset with a least element whose principal down-sets are chains.
bool is_tree(const Frame& f, bool poset, bool has_least) {
  if (!poset || !has_least) return false;
  for (int w = 0; w < f.size(); ++w) {
    WorldSet down = f.predecessors(w);
    for (WorldSet rest = down; rest;) {
      int a = std::countr_zero(rest);
      rest &= rest - 1;
      for (WorldSet rest2 = rest; rest2;) {
        int b = std::countr_zero(rest2);
        rest2 &= rest2 - 1;
        if (!f.sees(a, b) && !f.sees(b, a)) return false;
      }
    }
  }
  return true;
}

Frame restrict_frame(const Frame& f, WorldSet keep) {
  std::vector<int> idx(static_cast<std::size_t>(f.size()), -1);
  int n = 0;
  for (int w = 0; w < f.size(); ++w)
    if (keep & world_bit(w)) idx[w] = n++;
  Frame out(n);
  for (int i = 0; i < f.size(); ++i)
    for (int j = 0; j < f.size(); ++j)
      if (idx[i] >= 0 && idx[j] >= 0 && f.sees(i, j))
        out.add_edge(idx[i], idx[j]);
  return out;
}

} // namespace

FrameProperties properties(const Frame& f) {
  FrameProperties p;
  p.reflexive = is_reflexive(f);
  p.transitive = is_transitive(f);
  p.antisymmetric = is_antisymmetric(f);
  p.directed = is_directed(f);
  p.linear = is_total(f);
  bool poset = is_poset(p);
  auto least = poset ? least_of(f, f.worlds()) : std::nullopt;
  auto greatest = poset ? greatest_of(f, f.worlds()) : std::nullopt;
  p.has_least = least.has_value();
  p.has_greatest = greatest.has_value();
  p.lattice = poset && is_lattice(f);
  p.boolean_algebra = is_boolean_algebra(f, p);
  p.tree = is_tree(f, poset, p.has_least);
  if (poset && greatest && f.size() >= 2) {
    Frame rest = restrict_frame(f, f.worlds() & ~world_bit(*greatest));
    FrameProperties q;
    q.reflexive = is_reflexive(rest);
    q.transitive = is_transitive(rest);
    q.antisymmetric = is_antisymmetric(rest);
    bool sub_poset = is_poset(q);
    bool sub_least = sub_poset && least_of(rest, rest.worlds()).has_value();
    p.baled_tree = is_tree(rest, sub_poset, sub_least);
  }
  p.alt1 = true;
  for (int i = 0; i < f.size(); ++i)
    if (world_count(f.successors(i)) > 1) p.alt1 = false;
  return p;
}

bool check_class(const Frame& f, FrameClass c) {
  if (c == FrameClass::Arbitrary) return true;
  FrameProperties p = properties(f);
  bool preorder = p.reflexive && p.transitive;
  bool poset = preorder && p.antisymmetric;
  switch (c) {
    case FrameClass::Arbitrary: return true;
    case FrameClass::Preorder: return preorder;
    case FrameClass::Poset: return poset;
    case FrameClass::DirectedPoset: return poset && p.directed;
    case FrameClass::Lattice: return p.lattice;
    case FrameClass::BooleanAlgebra: return p.boolean_algebra;
    case FrameClass::LinearOrder: return poset && p.linear;
    case FrameClass::Tree: return p.tree;
    case FrameClass::BaledTree: return p.baled_tree;
    case FrameClass::Alt1: return p.alt1;
    case FrameClass::DirectedPreorder: return preorder && p.directed;
    case FrameClass::LinearPreorder: return preorder && p.linear;
  }
  return false;
}

std::string to_string(FrameClass c) {
  switch (c) {
    case FrameClass::Arbitrary: return "arbitrary";
    case FrameClass::Preorder: return "preorder";
    case FrameClass::Poset: return "poset";
    case FrameClass::DirectedPoset: return "directed_poset";
    case FrameClass::Lattice: return "lattice";
    case FrameClass::BooleanAlgebra: return "boolean_algebra";
    case FrameClass::LinearOrder: return "linear_order";
    case FrameClass::Tree: return "tree";
    case FrameClass::BaledTree: return "baled_tree";
    case FrameClass::Alt1: return "alt1";
    case FrameClass::DirectedPreorder: return "directed_preorder";
    case FrameClass::LinearPreorder: return "linear_preorder";
  }
  return "?";
}

std::optional<FrameClass> frame_class_from_string(const std::string& name) {
  if (name == "arbitrary") return FrameClass::Arbitrary;
  if (name == "preorder") return FrameClass::Preorder;
  if (name == "poset") return FrameClass::Poset;
  if (name == "directed_poset" || name == "directed")
    return FrameClass::DirectedPoset;
  if (name == "lattice") return FrameClass::Lattice;
  if (name == "boolean_algebra" || name == "boolean")
    return FrameClass::BooleanAlgebra;
  if (name == "linear_order" || name == "linear")
    return FrameClass::LinearOrder;
  if (name == "tree") return FrameClass::Tree;
  if (name == "baled_tree" || name == "baled") return FrameClass::BaledTree;
  if (name == "alt1") return FrameClass::Alt1;
  if (name == "directed_preorder") return FrameClass::DirectedPreorder;
  if (name == "linear_preorder") return FrameClass::LinearPreorder;
  return std::nullopt;
}

std::optional<int> sup(const Frame& f, WorldSet worlds) {
  WorldSet upper = f.worlds();
  for (WorldSet rest = worlds; rest;) {
    int s = std::countr_zero(rest);
    rest &= rest - 1;
    upper &= f.successors(s);
  }
  if (upper == 0) return std::nullopt;
  return least_of(f, upper);
}

std::optional<int> inf(const Frame& f, WorldSet worlds) {
  WorldSet lower = f.worlds();
  for (WorldSet rest = worlds; rest;) {
    int s = std::countr_zero(rest);
    rest &= rest - 1;
    lower &= f.predecessors(s);
  }
  if (lower == 0) return std::nullopt;
  return greatest_of(f, lower);
}

WorldSet reachable_from(const Frame& f, int w) {
  WorldSet seen = world_bit(w);
  WorldSet frontier = seen;
  while (frontier) {
    WorldSet next = 0;
    for (WorldSet rest = frontier; rest;) {
      int u = std::countr_zero(rest);
      rest &= rest - 1;
      next |= f.successors(u);
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen;
}

GeneratedSubframe generated_subframe(const Frame& f, int w) {
  if (w < 0 || w >= f.size())
    throw std::invalid_argument("world out of range");
  WorldSet keep = reachable_from(f, w);
  std::vector<int> to_original;
  to_original.push_back(w);
  for (int u = 0; u < f.size(); ++u)
    if (u != w && (keep & world_bit(u))) to_original.push_back(u);
  Frame out(static_cast<int>(to_original.size()));
  for (std::size_t i = 0; i < to_original.size(); ++i)
    for (std::size_t j = 0; j < to_original.size(); ++j)
      if (f.sees(to_original[i], to_original[j]))
        out.add_edge(static_cast<int>(i), static_cast<int>(j));
  return {std::move(out), std::move(to_original)};
}

Frame closure(const Frame& f, bool reflexive, bool transitive) {
  Frame out = f;
  if (reflexive)
    for (int i = 0; i < out.size(); ++i) out.add_edge(i, i);
  if (transitive) {
    // Warshall on bitset rows
    std::vector<WorldSet> rows(static_cast<std::size_t>(out.size()));
    for (int i = 0; i < out.size(); ++i) rows[i] = out.successors(i);
    for (int k = 0; k < out.size(); ++k)
      for (int i = 0; i < out.size(); ++i)
        if (rows[i] & world_bit(k)) rows[i] |= rows[k];
    Frame closed(out.size());
    for (int i = 0; i < out.size(); ++i)
      for (int j = 0; j < out.size(); ++j)
        if (rows[i] & world_bit(j)) closed.add_edge(i, j);
    return closed;
  }
  return out;
}

Frame relabel(const Frame& f, const std::vector<int>& perm) {
  Frame out(f.size());
  for (int i = 0; i < f.size(); ++i)
    for (int j = 0; j < f.size(); ++j)
      if (f.sees(i, j)) out.add_edge(perm[i], perm[j]);
  return out;
}

Frame canonical_form(const Frame& f) {
  int n = f.size();
  if (n > 8)
    throw std::invalid_argument("canonical form supported for n <= 8");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best_key = relabel(f, perm).relation_key();
  std::vector<int> best = perm;
  while (std::next_permutation(perm.begin(), perm.end())) {
    std::uint64_t key = relabel(f, perm).relation_key();
    if (key < best_key) {
      best_key = key;
      best = perm;
    }
  }
  return relabel(f, best);
}

bool isomorphic(const Frame& a, const Frame& b) {
  if (a.size() != b.size()) return false;
  return canonical_form(a).relation_key() == canonical_form(b).relation_key();
}

Frame powerset_frame(int atoms) {
  if (atoms < 0 || atoms > 6)
    throw std::invalid_argument("powerset frame supported for 0..6 atoms");
  int n = 1 << atoms;
  Frame f(n);
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c)
      if ((b & ~c) == 0) f.add_edge(b, c);
  return f;
}

namespace {

// --- enumeration -----------------------------------------------------------

// Natural posets: strict down-sets D_j <= {0..j-1} with i in D_j implying
// D_i subset of D_j; the labels then form a linear extension. Every labeled
// poset is a relabeling of exactly the natural ones.
void natural_posets_rec(int n, int j, std::vector<std::uint32_t>& down,
                        const std::function<void(const std::vector<std::uint32_t>&)>& emit) {
  if (j == n) {
    emit(down);
    return;
  }
  for (std::uint32_t s = 0; s < (1u << j); ++s) {
    bool closed = true;
    for (std::uint32_t rest = s; rest && closed;) {
      int i = std::countr_zero(rest);
      rest &= rest - 1;
      closed = (down[i] & ~s) == 0;
    }
    if (!closed) continue;
    down[j] = s;
    natural_posets_rec(n, j + 1, down, emit);
  }
}

Frame frame_from_downsets(int n, const std::vector<std::uint32_t>& down) {
  Frame f(n);
  for (int j = 0; j < n; ++j) {
    f.add_edge(j, j);
    for (std::uint32_t rest = down[j]; rest;) {
      int i = std::countr_zero(rest);
      rest &= rest - 1;
      f.add_edge(i, j);
    }
  }
  return f;
}

void for_each_natural_poset(int n, const std::function<void(const Frame&)>& fn) {
  std::vector<std::uint32_t> down(static_cast<std::size_t>(n), 0);
  natural_posets_rec(n, 0, down,
                     [&](const std::vector<std::uint32_t>& d) {
                       fn(frame_from_downsets(n, d));
                     });
}

class Emitter {
public:
  Emitter(bool up_to_iso, std::size_t cap) : up_to_iso_(up_to_iso), cap_(cap) {}

  void add(const Frame& f) {
    if (up_to_iso_) {
      Frame canon = canonical_form(f);
      if (!seen_.insert(canon.relation_key()).second) return;
      push(canon);
    } else {
      if (!seen_.insert(f.relation_key()).second) return;
      push(f);
    }
  }

  std::vector<Frame> take() { return std::move(out_); }

private:
  void push(const Frame& f) {
    if (out_.size() >= cap_)
      throw ResourceLimitError("frame enumeration cap exceeded");
    out_.push_back(f);
  }

  bool up_to_iso_;
  std::size_t cap_;
  std::unordered_set<std::uint64_t> seen_;
  std::vector<Frame> out_;
};

void all_permutations(int n, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    fn(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

// Every labeled frame in `reps`' isomorphism classes, by relabeling.
void expand_labeled(const std::vector<Frame>& reps, Emitter& em) {
  for (const Frame& f : reps)
    all_permutations(f.size(), [&](const std::vector<int>& perm) {
      em.add(relabel(f, perm));
    });
}

std::vector<Frame> posets_matching(int n, FrameClass c, bool up_to_iso,
                                   std::size_t cap) {
  if (n > 6)
    throw ResourceLimitError("poset enumeration supported up to 6 worlds");
  Emitter reps(/*up_to_iso=*/true, cap);
  for_each_natural_poset(n, [&](const Frame& f) {
    if (c == FrameClass::Poset || check_class(f, c)) reps.add(f);
  });
  std::vector<Frame> canon = reps.take();
  if (up_to_iso) return canon;
  Emitter em(/*up_to_iso=*/false, cap);
  expand_labeled(canon, em);
  return em.take();
}

// Labeled preorders: a set partition of the worlds (restricted-growth string,
// blocks indexed by least member) plus a labeled poset on the blocks. Each
// labeled preorder arises from exactly one pair.
void for_each_preorder(int n, std::size_t cap,
                       const std::function<void(const Frame&)>& fn) {
  std::vector<int> rgs(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<Frame>> posets_by_k(static_cast<std::size_t>(n) + 1);
  std::function<void(int, int)> rec = [&](int i, int maxb) {
    if (i == n) {
      int k = maxb + 1;
      if (posets_by_k[k].empty())
        posets_by_k[k] = posets_matching(k, FrameClass::Poset,
                                         /*up_to_iso=*/false, cap);
      for (const Frame& q : posets_by_k[k]) {
        Frame f(n);
        for (int u = 0; u < n; ++u)
          for (int v = 0; v < n; ++v)
            if (q.sees(rgs[u], rgs[v])) f.add_edge(u, v);
        fn(f);
      }
      return;
    }
    for (int b = 0; b <= maxb + 1; ++b) {
      rgs[i] = b;
      rec(i + 1, std::max(maxb, b));
    }
  };
  rec(1, 0); // rgs[0] fixed to block 0
}

std::vector<Frame> preorders_matching(int n, FrameClass c, bool up_to_iso,
                                      std::size_t cap) {
  if (n > 5)
    throw ResourceLimitError("preorder enumeration supported up to 5 worlds");
  Emitter em(up_to_iso, cap);
  for_each_preorder(n, cap, [&](const Frame& f) {
    if (c == FrameClass::Preorder || check_class(f, c)) em.add(f);
  });
  return em.take();
}

std::vector<Frame> arbitrary_frames(int n, bool up_to_iso, std::size_t cap) {
  if (n > 4)
    throw ResourceLimitError("arbitrary-frame enumeration limited to 4 worlds");
  Emitter em(up_to_iso, cap);
  std::uint64_t total = std::uint64_t{1} << (n * n);
  for (std::uint64_t key = 0; key < total; ++key) {
    Frame f(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if ((key >> (i * n + j)) & 1) f.add_edge(i, j);
    em.add(f);
  }
  return em.take();
}

std::vector<Frame> alt1_frames(int n, bool up_to_iso, std::size_t cap) {
  if (n > 7 || (up_to_iso && n > 5))
    throw ResourceLimitError("alt1 enumeration cap exceeded for this size");
  Emitter em(up_to_iso, cap);
  // successor choice per world: none or a single target
  std::vector<int> choice(static_cast<std::size_t>(n), -1);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      Frame f(n);
      for (int w = 0; w < n; ++w)
        if (choice[w] >= 0) f.add_edge(w, choice[w]);
      em.add(f);
      return;
    }
    for (int t = -1; t < n; ++t) {
      choice[i] = t;
      rec(i + 1);
    }
  };
  rec(0);
  return em.take();
}

std::vector<Frame> boolean_algebras(int n, bool up_to_iso, std::size_t cap) {
  if (std::popcount(static_cast<unsigned>(n)) != 1) return {};
  int atoms = std::countr_zero(static_cast<unsigned>(n));
  if (atoms > 6)
    throw ResourceLimitError("boolean algebra enumeration limited to 64 worlds");
  Frame p = powerset_frame(atoms);
  if (up_to_iso) return {p};
  if (n > 7)
    throw ResourceLimitError("labeled boolean algebra enumeration limited to 7 worlds");
  Emitter em(/*up_to_iso=*/false, cap);
  expand_labeled({p}, em);
  return em.take();
}

} // namespace

std::vector<Frame> enumerate_frames(FrameClass c, int n, bool up_to_iso,
                                    std::size_t cap) {
  if (n < 1) throw std::invalid_argument("world count must be at least 1");
  switch (c) {
    case FrameClass::Arbitrary:
      return arbitrary_frames(n, up_to_iso, cap);
    case FrameClass::Alt1:
      return alt1_frames(n, up_to_iso, cap);
    case FrameClass::BooleanAlgebra:
      return boolean_algebras(n, up_to_iso, cap);
    case FrameClass::Preorder:
    case FrameClass::DirectedPreorder:
    case FrameClass::LinearPreorder:
      return preorders_matching(n, c, up_to_iso, cap);
    case FrameClass::Poset:
    case FrameClass::DirectedPoset:
    case FrameClass::Lattice:
    case FrameClass::LinearOrder:
    case FrameClass::Tree:
    case FrameClass::BaledTree:
      return posets_matching(n, c, up_to_iso, cap);
  }
  throw std::invalid_argument("unknown frame class");
}

} // namespace grz
