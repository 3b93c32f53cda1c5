#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "wturan/pair_table.hpp"
#include "wturan/rational.hpp"

namespace wturan {

// Complete-graph model with rational edge weights in [0,1]; weight 0 is a
// non-edge. The support (pairs with weight > 0) is the underlying simple graph.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(int n);

  int order() const { return n_; }
  const Rat& weight(int i, int j) const { return w_.at(i, j); }
  void set_weight(int i, int j, const Rat& w);
  bool has_edge(int i, int j) const { return w_.at(i, j) > 0; }

  /// Support edges (i < j, weight) in pair order.
  std::vector<std::tuple<int, int, Rat>> positive_edges() const;

  /// w(G) = (2/n^2) * sum of edge weights, exact.
  Rat total_weight() const;

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }

 private:
  int n_ = 0;
  PairTable<Rat> w_;
};

// Weight per clique order r >= 2; constant beyond the largest specified r,
// step-constant between specified values.
struct CliqueWeighting {
  std::map<int, Rat> values;
  Rat value(int r) const;
  static CliqueWeighting turan(int max_r);  // w_T(r) for r in [2, max_r]
};

/// Turan weight w_T(r) = r/(2(r-1)).
Rat turan_weight(int r);

/// Rescaled weight t_w(r) = 2(r-1)/r * w(r); identically 1 for w_T.
Rat rescale(const CliqueWeighting& cw, int r);

// Template (r,f): demands an r-clique whose weights strictly exceed the
// thresholds f. K_r^a has every threshold equal to a.
struct WeightedCliquePattern {
  int r = 0;
  PairTable<Rat> f;
  WeightedCliquePattern() = default;
  explicit WeightedCliquePattern(int order) : r(order), f(order) {}
  static WeightedCliquePattern uniform(int r, const Rat& a);
  const Rat& threshold(int i, int j) const { return f.at(i, j); }
};

/// Injection phi with weight(phi(i)phi(j)) > f(ij) on every pattern pair, or
/// absent. Backtracking over pattern vertices, most-constrained first.
std::optional<std::vector<int>> contains_pattern(const WeightedGraph& g,
                                                 const WeightedCliquePattern& p);

/// Weigh each support edge by cw(order of the largest clique through it),
/// via exhaustive maximal-clique enumeration (pivoting Bron-Kerbosch).
WeightedGraph assign_clique_weights(const WeightedGraph& support, const CliqueWeighting& cw,
                                    int guard = 60);

// Blow-up shape: part proportions x (positive, summing to 1) and cross-part
// weights f over pairs of parts.
struct BlowupSpec {
  std::vector<Rat> x;
  PairTable<Rat> f;
  int parts() const { return static_cast<int>(x.size()); }
  void validate() const;
};

/// Limiting density of the blow-up: sum over part pairs of 2 x_i x_j f(ij).
Rat blowup_density(const BlowupSpec& spec);

WeightedGraph make_turan_graph(int n, int k);

/// Realize the blow-up on n vertices: |V_i| = floor(x_i n) for i < t-1,
/// remainder in the last part.
WeightedGraph make_blowup(const BlowupSpec& spec, int n);

// Text format: "n <count>" then one "<i> <j> <p>/<q>" line per edge.
WeightedGraph parse_graph(std::istream& in);
WeightedGraph parse_graph_file(const std::string& path);
void write_graph(std::ostream& out, const WeightedGraph& g);

// Weighting file: one "<r> <p>/<q>" line per specified clique order.
CliqueWeighting parse_weighting(std::istream& in);
CliqueWeighting parse_weighting_file(const std::string& path);

}  // namespace wturan
