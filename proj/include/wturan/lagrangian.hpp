#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wturan/pair_table.hpp"
#include "wturan/rational.hpp"
#include "wturan/weighted_graph.hpp"

namespace wturan {

// Symmetric nonnegative rational matrix with zero diagonal.
struct SymMatrix {
  int m = 0;
  PairTable<Rat> a;
  SymMatrix() = default;
  explicit SymMatrix(int dim) : m(dim), a(dim) {}
  Rat at(int i, int j) const { return i == j ? Rat(0) : a.at(i, j); }
  void set(int i, int j, const Rat& v);
};

SymMatrix matrix_from_graph(const WeightedGraph& g);

struct LagrangianResult {
  Rat value;
  std::vector<int> support;  // increasing vertex indices
  std::vector<Rat> x;        // positive, aligned with support, sums to 1
  bool kkt_verified = false;
};

/// Global maximum of u^T A u over the standard simplex, exact.
/// Enumerates supports that are cliques of the positivity graph, solves the
/// equal-weighted-degree system on each, keeps strictly positive solutions.
/// Ties go to the lexicographically smallest support.
LagrangianResult lagrangian_exact(const SymMatrix& a, int guard = 18);

/// Equal weighted degrees on the support and no heavier vertex off it.
bool kkt_check(const SymMatrix& a, const LagrangianResult& r);

struct ReplicatorResult {
  double value = 0.0;
  std::vector<double> x;
  long iterations = 0;
};

/// Numeric fallback: x <- x .* (Ax) / (x^T A x) from the uniform start.
/// extra_starts > 0 adds that many deterministic corner-biased starts and
/// keeps the best value reached.
ReplicatorResult lagrangian_replicator(const SymMatrix& a, long max_iter = 1000000,
                                       double tol = 0.0, int extra_starts = 0);

// Text format: "m <dim>" then m rows of m rationals.
SymMatrix parse_matrix(std::istream& in);
SymMatrix parse_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const SymMatrix& a);

}  // namespace wturan
