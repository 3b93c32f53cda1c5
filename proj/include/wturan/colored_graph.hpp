#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wturan/pair_table.hpp"

namespace wturan {

// Total edge coloring of a complete graph: every pair carries a color in
// [1, k]. Isomorphism is by vertex permutation; the canonical form is the
// lexicographically smallest edge-color sequence in pair order.
class ColoredGraph {
 public:
  ColoredGraph() = default;
  ColoredGraph(int n, int k);  // all pairs color 1

  int order() const { return n_; }
  int colors() const { return k_; }
  int color(int i, int j) const { return c_.at(i, j); }
  void set_color(int i, int j, int color);

  /// Edge-color sequence under a vertex relabeling (perm[v] = new label),
  /// listed in pair order of the relabeled graph.
  std::vector<int> relabeled_sequence(const std::vector<int>& perm) const;

  /// Lexicographic minimum of relabeled_sequence over all n! permutations.
  ColoredGraph canonical() const;
  bool is_canonical() const;

  /// Compact form "n:k:<colors>", colors as base-36 digits in pair order.
  std::string key() const;

  /// Count of pairs with the given color.
  int color_count(int color) const;

  friend bool operator==(const ColoredGraph& a, const ColoredGraph& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.c_ == b.c_;
  }
  friend bool operator<(const ColoredGraph& a, const ColoredGraph& b);

 private:
  int n_ = 0;
  int k_ = 1;
  PairTable<int> c_;
};

/// Injection from pattern vertices to host vertices under which every pattern
/// pair keeps its exact color, or nullopt. Pattern and host colors must be
/// drawn from compatible palettes (colors are compared as integers).
std::optional<std::vector<int>> contains_colored(const ColoredGraph& host,
                                                 const ColoredGraph& pattern);

/// All total k-colorings of K_n up to isomorphism avoiding every forbidden
/// pattern, in canonical form, sorted. Guards: n <= 5, k <= 8.
std::vector<ColoredGraph> enumerate_colored(int n, int k,
                                            const std::vector<ColoredGraph>& forbidden);

}  // namespace wturan
