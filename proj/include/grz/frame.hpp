#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grz/errors.hpp"

namespace grz {

/// Set of world indices, one bit per world. Frames are capped at 64 worlds,
/// which covers everything the finite sweeps need (the largest construction
/// is the powerset frame on 6 atoms).
using WorldSet = std::uint64_t;

inline constexpr int kMaxWorlds = 64;

constexpr WorldSet world_bit(int w) { return WorldSet{1} << w; }

constexpr WorldSet full_world_set(int n) {
  return n >= 64 ? ~WorldSet{0} : (WorldSet{1} << n) - 1;
}

/// Lowest world index in `s`, or -1 when empty.
int first_world(WorldSet s);

int world_count(WorldSet s);

/// Finite Kripke frame: worlds 0..size-1 and an accessibility relation kept
/// as one successor bitset per world.
class Frame {
public:
  explicit Frame(int size);

  static Frame from_edges(int size,
                          const std::vector<std::pair<int, int>>& edges);

  int size() const noexcept { return size_; }
  bool sees(int from, int to) const { return (rows_[from] >> to) & 1; }
  WorldSet successors(int from) const { return rows_[from]; }
  WorldSet predecessors(int to) const;
  WorldSet worlds() const { return full_world_set(size_); }

  void add_edge(int from, int to);
  void remove_edge(int from, int to);

  std::vector<std::pair<int, int>> edges() const;

  /// Row-major relation bits packed into a single word; total order used by
  /// the enumerators for deduplication. Requires size*size <= 64.
  std::uint64_t relation_key() const;

  bool operator==(const Frame& other) const {
    return size_ == other.size_ && rows_ == other.rows_;
  }

private:
  int size_;
  std::vector<WorldSet> rows_;
};

struct FrameProperties {
  bool reflexive = false;
  bool transitive = false;
  bool antisymmetric = false; // fatness one on preorders
  bool directed = false;      // every two worlds reach a common world
  bool linear = false;        // total: any two worlds comparable
  bool lattice = false;
  bool boolean_algebra = false;
  bool tree = false;
  bool baled_tree = false;
  bool alt1 = false; // at most one successor per world
  bool has_least = false;
  bool has_greatest = false;
};

FrameProperties properties(const Frame& f);

enum class FrameClass {
  Arbitrary,
  Preorder,
  Poset,
  DirectedPoset,
  Lattice,
  BooleanAlgebra,
  LinearOrder,
  Tree,
  BaledTree,
  Alt1,
  DirectedPreorder,
  LinearPreorder,
};

bool check_class(const Frame& f, FrameClass c);

std::string to_string(FrameClass c);
std::optional<FrameClass> frame_class_from_string(const std::string& name);

inline constexpr std::size_t kDefaultFrameCap = 1u << 20;

/// All frames of class `c` with exactly `n` worlds, in a fixed deterministic
/// order. With `up_to_iso` exactly one representative per isomorphism class
/// is kept (canonical form by relation-key minimization over permutations,
/// adequate for n <= 8). Throws ResourceLimitError past `cap` emitted frames
/// or when the underlying candidate space is too large to scan.
std::vector<Frame> enumerate_frames(FrameClass c, int n, bool up_to_iso,
                                    std::size_t cap = kDefaultFrameCap);

/// Least upper bound of `worlds` in a poset, if it exists. By convention
/// sup of the empty set is the least element of the frame (when present):
/// the upper-bound set of the empty set is every world.
std::optional<int> sup(const Frame& f, WorldSet worlds);
std::optional<int> inf(const Frame& f, WorldSet worlds);

/// Worlds reachable from `w` under the reflexive-transitive closure of the
/// relation (always includes `w` itself).
WorldSet reachable_from(const Frame& f, int w);

struct GeneratedSubframe {
  Frame frame;
  std::vector<int> to_original; // new index -> original world; [0] == w
};

GeneratedSubframe generated_subframe(const Frame& f, int w);

Frame closure(const Frame& f, bool reflexive, bool transitive);

/// Representative of the isomorphism class of `f`: the relabeling with the
/// smallest relation key. Supported for n <= 8.
Frame canonical_form(const Frame& f);

bool isomorphic(const Frame& a, const Frame& b);

Frame relabel(const Frame& f, const std::vector<int>& perm);

/// Inclusion order on all subsets of {0..atoms-1}; world index == subset
/// bitmask. The 2^atoms-element Boolean algebra.
Frame powerset_frame(int atoms);

} // namespace grz
