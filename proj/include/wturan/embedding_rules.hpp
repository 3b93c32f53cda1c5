#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wturan/colored_graph.hpp"
#include "wturan/pair_table.hpp"
#include "wturan/rational.hpp"
#include "wturan/weighted_graph.hpp"

namespace wturan {

// Cluster configuration: t clusters, each guaranteed to hold a K_p, with
// strict pairwise density lower bounds (density > a_ij across the pair).
// An absent threshold means vertices of the two clusters cannot be co-used.
struct ClusterConfig {
  int t = 0;
  int p = 0;
  PairTable<std::optional<Rat>> thresholds;

  ClusterConfig() = default;
  ClusterConfig(int t, int p) : t(t), p(p), thresholds(t) {}

  void set(int i, int j, const Rat& a) { thresholds.at(i, j) = a; }
  const std::optional<Rat>& threshold(int i, int j) const { return thresholds.at(i, j); }

  void validate() const;  // t >= 1, p >= 1, thresholds in [0,1)
};

/// Vertices that survive restricting s picked vertices to the neighborhood of
/// one later choice across a pair of density strictly above a, in the limit of
/// vanishing regularity error: floor(s*a) + 1. Always in [1, s] for a < 1.
int survivors(int s, const Rat& a);

// Witness of a guaranteed clique: the clusters used, in embedding order, with
// the shrink order each one survived and the per-cluster vertex counts.
struct EmbedResult {
  int size = 0;
  std::vector<int> order;                // used clusters in embedding order
  std::vector<std::vector<int>> chains;  // per position, later clusters in shrink order
  std::vector<int> contributions;        // per cluster (all t), 0 if unused
};

/// Largest clique the configuration guarantees, maximized over every
/// pairwise-usable cluster subset, embedding order, and per-cluster shrink
/// order; first maximizer in lexicographic (subset, order, chains) position.
/// Guard: t <= 7.
EmbedResult max_embeddable(const ClusterConfig& config);

/// max_embeddable(config).size >= q.
bool is_forbidden(const ClusterConfig& config, int q);

// Density class: color 1 is the single density 0; color c >= 2 covers
// (lower, upper]. The rule string records the guaranteed embedding.
struct TableRow {
  int color = 0;
  Rat lower, upper;
  std::string rule;
};

struct DiscretizationTable {
  std::vector<TableRow> rows;
  std::optional<Rat> cap;  // densities above this are impossible outright

  void validate() const;
  int color_of(const Rat& density) const;  // domain error above the cap
};

enum class CaseKind { rho512, rho614, rho411, p6 };

// One of the computed Ramsey-Turan cases; p6 carries its clique parameter.
struct CaseId {
  CaseKind kind = CaseKind::rho512;
  int p6_param = 0;

  static CaseId parse(const std::string& name);  // "rho512", ..., "p6(9)"
  std::string str() const;
  int clique_order() const;  // within-cluster clique order p
  int target() const;        // clique size q ruled out by the case
};

DiscretizationTable discretization(const CaseId& c);

// A forbidden configuration as printed, with its per-cluster vertex labels.
struct CatalogEntry {
  std::string name;  // "fig5a" ... "fig10"
  ClusterConfig config;
  std::vector<int> labels;
};

/// The case's catalog of forbidden configurations.
std::vector<CatalogEntry> case_figures(const CaseId& c);

/// Cluster configuration a blow-up guarantees under the given discretization:
/// each part is a cluster, each positive weight maps to its class lower
/// bound, weight-0 pairs (class 1) become unusable.
ClusterConfig config_from_blowup(const BlowupSpec& spec, const DiscretizationTable& table, int p);

/// All total colorings of K_t whose class lower bounds meet every threshold
/// of the configuration (l_c >= a_ij; absent pairs unconstrained), canonical
/// and deduplicated. A threshold of 1 or above has no matching class.
std::vector<ColoredGraph> expand_config(const ClusterConfig& config,
                                        const DiscretizationTable& table);

/// Union of expand_config over the case's catalog, sorted and deduplicated.
std::vector<ColoredGraph> colored_forbidden_set(const CaseId& c);

// Config file: "t <t>", "p <p>", then "<i> <j> <p>/<q>" per usable pair
// (0-indexed; omitted pair = unusable).
ClusterConfig parse_config(std::istream& in);
ClusterConfig parse_config_file(const std::string& path);
void write_config(std::ostream& out, const ClusterConfig& config);

}  // namespace wturan
