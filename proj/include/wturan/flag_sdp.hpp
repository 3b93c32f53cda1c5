#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wturan/colored_graph.hpp"
#include "wturan/embedding_rules.hpp"
#include "wturan/rational.hpp"

namespace wturan {

// Linear color-density maximization over admissible k-colorings of K_N:
// maximize sum_c u_c * (density of color c) subject to the forbidden
// patterns. u is indexed by color (u[0] belongs to color 1 and must be 0).
struct DensityProblem {
  int k = 1;
  int N = 3;
  std::vector<Rat> u;
  std::vector<ColoredGraph> forbidden;

  void validate() const;
};

/// Toy instance: two colors, forbid the monochromatic color-2 triangle,
/// objective the color-2 density. Optimum 1/2 on 3 vertices.
DensityProblem mantel_problem();

/// Same problem posed on 4 vertices (two edge types instead of one).
DensityProblem mantel_problem_n4();

/// The case's density problem: colors and objective from its discretization
/// table (u_c = class upper bound), forbidden patterns from the verified
/// catalog expansion restricted to order <= N. rho512 and rho614 use N=4,
/// rho411 uses N=5, p6 uses N=4.
DensityProblem case_problem(const CaseId& c);

/// sum_c u_c * (pairs of color c) / (n choose 2).
Rat obj_value(const ColoredGraph& g, const std::vector<Rat>& u);

// One sum-of-squares block: a type on N-2 labeled vertices plus its flags.
// A flag extends the type by one vertex, so it is determined by the color
// vector from the type vertices to the extension; only admissible
// extensions are kept.
struct FlagBlock {
  ColoredGraph type;
  std::vector<std::vector<int>> flags;
};

// The assembled SDP: minimize lambda subject to, for every admissible graph
// G, lambda >= obj(G) + sum over blocks of <Q_b, M_b(G)>, with each Q_b PSD.
struct SdpInstance {
  DensityProblem problem;
  std::vector<ColoredGraph> graphs;  // admissible, canonical, sorted
  std::vector<Rat> objective;        // per graph
  std::vector<FlagBlock> blocks;
  bool infeasible = false;           // no admissible graph exists
};

SdpInstance build_sdp(const DensityProblem& problem);

/// Exact flag pair-density matrix M_b(G): entry (f1,f2) counts ordered type
/// embeddings extended by the two leftover vertices realizing the flag pair,
/// normalized by (N)_{N-2} * 2. Symmetric, nonnegative, total mass <= 1.
std::vector<std::vector<Rat>> pair_matrix(const SdpInstance& inst, int block, int graph);

// A rational sum-of-squares certificate for the instance.
struct Certificate {
  Rat lambda;
  std::vector<std::vector<std::vector<Rat>>> q;  // per block, dense symmetric
};

struct VerifyResult {
  bool ok = false;
  std::string reason;  // empty when ok
};

/// Exact check: every Q_b is PSD (fraction-exact LDL^T with symmetric
/// pivoting) and every admissible graph satisfies
/// lambda - obj(G) - sum <Q_b, M_b(G)> >= 0. On rejection the reason names
/// the offending pivot or graph.
VerifyResult verify_certificate(const SdpInstance& inst, const Certificate& cert);

/// Entry-wise best rational approximation with bounded denominator, PSD
/// repaired by the smallest diagonal shift found by exact bisection (dyadic,
/// granularity 2^-60), lambda recomputed as the exact maximum of
/// obj(G) + sum <Q_b, M_b(G)>. The result always verifies.
Certificate round_solution(const SdpInstance& inst,
                           const std::vector<std::vector<std::vector<double>>>& numeric,
                           const Int& denominator_limit);

// Certificate file: "lambda <p/q>", then per block "block <id> <dim>" with
// dim rows of dim rationals.
Certificate parse_certificate(std::istream& in);
Certificate parse_certificate_file(const std::string& path);
void write_certificate(std::ostream& out, const Certificate& cert);

// Numeric solution file: per block "block <id> <dim>" with dim rows of dim
// decimal values (solver output headed for round_solution).
std::vector<std::vector<std::vector<double>>> parse_numeric_solution(std::istream& in);
std::vector<std::vector<std::vector<double>>> parse_numeric_solution_file(const std::string& path);

}  // namespace wturan
