#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "wturan/lagrangian.hpp"
#include "wturan/rational.hpp"
#include "wturan/weighted_graph.hpp"

namespace wturan {

// Finite forbidden family of weighted clique templates. r_max is the largest
// usable blow-up order: some template must rule out all-positive cliques of
// order r_max + 1 (an all-zero-threshold template), or the caller supplies it.
struct ForbiddenFamily {
  std::vector<WeightedCliquePattern> patterns;
  int r_max = 0;
};

/// Assemble a family, deriving r_max from any pure all-zero template. An
/// explicit value (> 0) is combined by minimum; without either, domain error.
ForbiddenFamily make_family(std::vector<WeightedCliquePattern> patterns, int explicit_r_max = 0);

// Candidate edge weights for the blow-up search, sorted and distinct, in [0,1].
struct Alphabet {
  std::vector<Rat> values;
  void validate() const;
};

Alphabet parse_alphabet(const std::string& comma_separated);

struct BlowupSolution {
  int t = 1;
  BlowupSpec spec;   // weights f over pairs of [t] and part sizes x
  Rat density;       // = blowup_density(spec) = Lagrangian of the weight matrix
  bool lower_bound_only = false;
};

/// Best blow-up density over all family-free weighted cliques (t, f) with
/// t <= min(t_cap, r_max) and f drawn from the alphabet; part sizes from
/// lagrangian_exact. Exhaustive DFS with isomorphism pruning: a partial
/// assignment is abandoned unless its completed prefix is the
/// lexicographically least among relabelings, so each f is tried once per
/// isomorphism class. Ties: smallest t, then lexicographically smallest f.
/// When t_cap < r_max the answer is only a lower bound and is flagged as such.
BlowupSolution optimize_dF(const ForbiddenFamily& family, const Alphabet& alphabet, int t_cap,
                           long node_budget = 4000000);

// Families behind the closed forms below.
ForbiddenFamily heavy_family(const Rat& a);               // {K_3^a, K_4^0}
ForbiddenFamily chubby_family(int q, int r, const Rat& a);  // {q-clique with an edge > a, K_{r+1}^0}
ForbiddenFamily matching_family(int r, const Rat& a);     // {triangle with two edges > a, K_{r+1}^0}

/// d({K_3^a, K_4^0}) = 2/(4-a), attained by parts ((2-a)/(4-a), 1/(4-a), 1/(4-a))
/// with weight a between the last two parts and 1 elsewhere. 0 < a <= 1.
std::pair<Rat, std::vector<Rat>> closed_form_heavy(const Rat& a);

/// d({K_q^a, K_{r+1}^0}) = max{1 - 1/(q-1), a(1 - 1/r)} for 2 <= q <= r.
Rat closed_form_chubby(int q, int r, const Rat& a);

/// d({(3,(a,a,0)), K_{r+1}^0}): 1/2 when a <= 1/2; a + (1-2a)/r for even r;
/// a^2(r-1)/(a(r+1)-1) for odd r.
Rat closed_form_matching(int r, const Rat& a);

// Named extremal constructions. conj_ptr(p,t,r) covers the three rho cases:
// rho512 = conj_ptr(5,2,0), rho614 = conj_ptr(6,2,0), rho411 = conj_ptr(4,2,1).
BlowupSpec construction_spec(const std::string& name);
WeightedGraph named_construction(const std::string& name, int n);

// Family file: one block per template, "pattern r=<r>" then "<i> <j> <p>/<q>"
// threshold lines; omitted pairs default to threshold 0.
ForbiddenFamily parse_family(std::istream& in, int explicit_r_max = 0);
ForbiddenFamily parse_family_file(const std::string& path, int explicit_r_max = 0);
void write_family(std::ostream& out, const ForbiddenFamily& family);

}  // namespace wturan
