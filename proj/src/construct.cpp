#include "grz/construct.hpp"

#include <algorithm>
#include <bit>
#include <functional>

namespace grz {

namespace {

// Strict covers of x within the world set `interval`.
WorldSet covers_within(const Frame& f, int x, WorldSet interval) {
  WorldSet out = 0;
  for (WorldSet rest = interval & f.successors(x) & ~world_bit(x); rest;) {
    int y = std::countr_zero(rest);
    rest &= rest - 1;
    bool covered = true;
    WorldSet between =
        interval & f.successors(x) & f.predecessors(y) & ~world_bit(x) &
        ~world_bit(y);
    if (between) covered = false;
    if (covered) out |= world_bit(y);
  }
  return out;
}

// All maximal chains of the interval [lo, hi], as world sets. A maximal
// chain is a cover path from lo to hi inside the interval.
void maximal_chains(const Frame& f, int lo, int hi,
                    std::vector<WorldSet>& out) {
  WorldSet interval = f.successors(lo) & f.predecessors(hi);
  std::function<void(int, WorldSet)> walk = [&](int x, WorldSet chain) {
    if (x == hi) {
      out.push_back(chain);
      return;
    }
    for (WorldSet rest = covers_within(f, x, interval); rest;) {
      int y = std::countr_zero(rest);
      rest &= rest - 1;
      walk(y, chain | world_bit(y));
    }
  };
  walk(lo, world_bit(lo));
}

struct PathNode {
  int source;
  WorldSet chain;
};

// t' end-extends t: t' contains t and every new element lies above all of t.
bool end_extends(const Frame& f, WorldSet t_big, WorldSet t_small) {
  if (t_small & ~t_big) return false;
  for (WorldSet fresh = t_big & ~t_small; fresh;) {
    int x = std::countr_zero(fresh);
    fresh &= fresh - 1;
    for (WorldSet rest = t_small; rest;) {
      int y = std::countr_zero(rest);
      rest &= rest - 1;
      if (!f.sees(y, x)) return false;
    }
  }
  return true;
}

std::vector<PathNode> path_nodes(const Frame& f, int point) {
  std::vector<PathNode> nodes;
  WorldSet reach = reachable_from(f, point);
  for (int u = 0; u < f.size(); ++u) {
    if (!(reach & world_bit(u))) continue;
    std::vector<WorldSet> chains;
    maximal_chains(f, point, u, chains);
    for (WorldSet t : chains) nodes.push_back({u, t});
  }
  std::sort(nodes.begin(), nodes.end(), [](const PathNode& a, const PathNode& b) {
    return a.source != b.source ? a.source < b.source : a.chain < b.chain;
  });
  return nodes;
}

std::map<std::string, WorldSet> copy_valuation(
    const Model& source, const std::vector<std::pair<int, int>>& copy_map,
    int new_size) {
  std::map<std::string, WorldSet> out;
  for (const auto& [var, set] : source.valuation) {
    WorldSet mask = 0;
    for (auto [fresh, orig] : copy_map)
      if ((set >> orig) & 1) mask |= world_bit(fresh);
    out.emplace(var, mask & full_world_set(new_size));
  }
  return out;
}

} // namespace

UnravelResult unravel_baled(const PointedModel& p) {
  const Frame& f = p.model.frame;
  if (!check_class(f, FrameClass::DirectedPoset))
    throw std::invalid_argument(
        "baled unraveling needs a finite directed poset");
  FrameProperties props = properties(f);
  (void)props;
  int greatest = -1;
  for (int w = 0; w < f.size(); ++w)
    if (f.predecessors(w) == f.worlds()) greatest = w;
  // directedness of a finite poset guarantees the greatest element
  if (greatest < 0)
    throw std::invalid_argument("directed poset without greatest element");

  std::vector<PathNode> nodes = path_nodes(f, p.point);
  int bale = static_cast<int>(nodes.size());
  int n = bale + 1;
  if (n > kMaxWorlds)
    throw ResourceLimitError("unraveling exceeds the 64-world limit");

  Frame out(n);
  for (int i = 0; i < bale; ++i) {
    for (int j = 0; j < bale; ++j)
      if (f.sees(nodes[i].source, nodes[j].source) &&
          end_extends(f, nodes[j].chain, nodes[i].chain))
        out.add_edge(i, j);
    out.add_edge(i, bale);
  }
  out.add_edge(bale, bale);

  std::vector<std::pair<int, int>> copy_map;
  for (int i = 0; i < bale; ++i) copy_map.emplace_back(i, nodes[i].source);
  copy_map.emplace_back(bale, greatest);

  Model model{out, copy_valuation(p.model, copy_map, n)};
  int point = -1;
  for (int i = 0; i < bale; ++i)
    if (nodes[i].source == p.point && nodes[i].chain == world_bit(p.point))
      point = i;
  return {std::move(model), std::move(copy_map), point};
}

namespace {

struct TreeNode {
  int source;
  int parent; // -1 at the root
  std::vector<int> children;
  int depth = 0;
};

int deep_copy(std::vector<TreeNode>& tree, int v, int parent) {
  int idx = static_cast<int>(tree.size());
  tree.push_back({tree[v].source, parent, {}, tree[parent].depth + 1});
  std::vector<int> kids = tree[v].children;
  for (int c : kids) tree[idx].children.push_back(deep_copy(tree, c, idx));
  return idx;
}

void regularize_node(std::vector<TreeNode>& tree, int v, int width,
                     int depth_limit) {
  if (tree[v].depth == depth_limit) return;
  if (tree[v].children.empty()) {
    // extend the leaf with a copy of itself
    int idx = static_cast<int>(tree.size());
    tree.push_back({tree[v].source, v, {}, tree[v].depth + 1});
    tree[v].children.push_back(idx);
  }
  std::vector<int> kids = tree[v].children;
  for (int c : kids) regularize_node(tree, c, width, depth_limit);
  std::size_t original = tree[v].children.size();
  std::size_t next = 0;
  while (tree[v].children.size() < static_cast<std::size_t>(width)) {
    int dup = deep_copy(tree, tree[v].children[next % original], v);
    tree[v].children.push_back(dup);
    ++next;
  }
}

} // namespace

UnravelResult unravel_tree(const PointedModel& p, bool regularize) {
  const Frame& f = p.model.frame;
  if (!check_class(f, FrameClass::Poset))
    throw std::invalid_argument("tree unraveling needs a finite poset");

  std::vector<PathNode> nodes = path_nodes(f, p.point);
  std::vector<TreeNode> tree(nodes.size());
  int root = -1;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    tree[i].source = nodes[i].source;
    tree[i].parent = -1;
    if (nodes[i].chain == world_bit(p.point)) root = static_cast<int>(i);
  }
  // parent: drop the chain's top element
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    WorldSet rest = nodes[i].chain & ~world_bit(nodes[i].source);
    if (rest == 0) continue;
    for (std::size_t j = 0; j < nodes.size(); ++j)
      if (nodes[j].chain == rest &&
          ((rest >> nodes[j].source) & 1) &&
          (f.successors(nodes[j].source) & rest) == world_bit(nodes[j].source)) {
        tree[i].parent = static_cast<int>(j);
        break;
      }
  }
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (tree[i].parent >= 0)
      tree[tree[i].parent].children.push_back(static_cast<int>(i));
  std::function<void(int)> set_depth = [&](int v) {
    for (int c : tree[v].children) {
      tree[c].depth = tree[v].depth + 1;
      set_depth(c);
    }
  };
  set_depth(root);

  if (regularize) {
    int width = 0, depth = 0;
    for (const TreeNode& t : tree) {
      width = std::max(width, static_cast<int>(t.children.size()));
      depth = std::max(depth, t.depth);
    }
    if (width > 0) regularize_node(tree, root, width, depth);
  }

  if (tree.size() > static_cast<std::size_t>(kMaxWorlds))
    throw ResourceLimitError("unraveling exceeds the 64-world limit");

  // breadth-first indexing, root first
  std::vector<int> order;
  order.push_back(root);
  for (std::size_t head = 0; head < order.size(); ++head)
    for (int c : tree[order[head]].children) order.push_back(c);
  std::vector<int> index(tree.size(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) index[order[i]] = static_cast<int>(i);

  int n = static_cast<int>(order.size());
  Frame out(n);
  for (int v : order) {
    // ancestors-or-self are below v
    for (int a = v; a != -1; a = tree[a].parent) out.add_edge(index[a], index[v]);
  }

  std::vector<std::pair<int, int>> copy_map;
  for (std::size_t i = 0; i < order.size(); ++i)
    copy_map.emplace_back(static_cast<int>(i), tree[order[i]].source);

  Model model{out, copy_valuation(p.model, copy_map, n)};
  return {std::move(model), std::move(copy_map), 0};
}

ButtonModel powerset_button_model(int n) {
  if (n < 0 || n > 6)
    throw ResourceLimitError("powerset button model supported for 0..6 buttons");
  Frame frame = powerset_frame(n);
  Model model{frame, {}};
  std::vector<Formula> buttons;
  for (int i = 0; i < n; ++i) {
    WorldSet mask = 0;
    for (int b = 0; b < frame.size(); ++b)
      if ((b >> i) & 1) mask |= world_bit(b);
    std::string name = "b" + std::to_string(i);
    model.valuation.emplace(name, mask);
    buttons.push_back(Formula::var(name));
  }
  return {{std::move(model), 0}, std::move(buttons)};
}

RatchetModel ratchet_chain_model(int n) {
  if (n < 1 || n > kMaxWorlds)
    throw std::invalid_argument("ratchet length must be between 1 and 64");
  Frame frame(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) frame.add_edge(i, j);
  Model model{frame, {}};
  std::vector<Formula> ratchet;
  for (int i = 0; i < n; ++i) {
    WorldSet mask = full_world_set(n) & ~full_world_set(i);
    std::string name = "r" + std::to_string(i);
    model.valuation.emplace(name, mask);
    ratchet.push_back(Formula::var(name));
  }
  return {{std::move(model), 0}, std::move(ratchet)};
}

} // namespace grz
