#include "wturan/weighted_graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "wturan/errors.hpp"

#include "line_reader.hpp"

namespace wturan {

WeightedGraph::WeightedGraph(int n) : n_(n), w_(n) {
  if (n <= 0) throw parse_error("graph order must be positive");
}

void WeightedGraph::set_weight(int i, int j, const Rat& w) {
  if (w < 0 || w > 1) throw parse_error("edge weight outside [0,1]");
  w_.at(i, j) = w;
}

std::vector<std::tuple<int, int, Rat>> WeightedGraph::positive_edges() const {
  std::vector<std::tuple<int, int, Rat>> out;
  for (int j = 1; j < n_; ++j)
    for (int i = 0; i < j; ++i)
      if (w_.at(i, j) > 0) out.emplace_back(i, j, w_.at(i, j));
  return out;
}

Rat WeightedGraph::total_weight() const {
  Rat s(0);
  for (const Rat& w : w_.raw()) s += w;
  return 2 * s / Rat(static_cast<long>(n_) * n_);
}

Rat CliqueWeighting::value(int r) const {
  if (r < 2) throw std::domain_error("clique order must be >= 2");
  if (values.empty()) throw std::domain_error("empty clique weighting");
  auto it = values.upper_bound(r);
  if (it == values.begin()) throw std::domain_error("weighting undefined below its smallest r");
  return std::prev(it)->second;  // step-constant, constant beyond the largest key
}

CliqueWeighting CliqueWeighting::turan(int max_r) {
  CliqueWeighting cw;
  for (int r = 2; r <= std::max(2, max_r); ++r) cw.values[r] = turan_weight(r);
  return cw;
}

Rat turan_weight(int r) {
  if (r < 2) throw std::domain_error("turan_weight needs r >= 2");
  return frac(r, 2L * (r - 1));
}

Rat rescale(const CliqueWeighting& cw, int r) {
  if (r < 2) throw std::domain_error("rescale needs r >= 2");
  return frac(2L * (r - 1), r) * cw.value(r);
}

WeightedCliquePattern WeightedCliquePattern::uniform(int r, const Rat& a) {
  WeightedCliquePattern p(r);
  for (Rat& t : p.f.raw()) t = a;
  return p;
}

std::optional<std::vector<int>> contains_pattern(const WeightedGraph& g,
                                                 const WeightedCliquePattern& p) {
  const int r = p.r, n = g.order();
  if (r == 0) return std::vector<int>{};
  if (r > n) return std::nullopt;
  if (r == 1) return std::vector<int>{0};

  // Order pattern vertices greedily: start from the largest threshold sum,
  // then always extend with the vertex most constrained against placed ones.
  std::vector<Rat> total(r, Rat(0));
  for (int j = 1; j < r; ++j)
    for (int i = 0; i < j; ++i) {
      total[i] += p.f.at(i, j);
      total[j] += p.f.at(i, j);
    }
  std::vector<int> order;
  std::vector<bool> placed(r, false);
  for (int step = 0; step < r; ++step) {
    int pick = -1;
    Rat pick_score;
    for (int v = 0; v < r; ++v) {
      if (placed[v]) continue;
      Rat score(0);
      for (int u : order) score += p.f.at(u, v);
      if (order.empty()) score = total[v];
      if (pick < 0 || score > pick_score ||
          (score == pick_score && total[v] > total[pick])) {
        pick = v;
        pick_score = score;
      }
    }
    placed[pick] = true;
    order.push_back(pick);
  }

  std::vector<int> image(r, -1);
  std::vector<bool> used(n, false);
  auto dfs = [&](auto&& self, int depth) -> bool {
    if (depth == r) return true;
    const int pv = order[depth];
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      bool ok = true;
      for (int e = 0; e < depth && ok; ++e) {
        const int qu = order[e];
        ok = g.weight(v, image[qu]) > p.f.at(pv, qu);
      }
      if (!ok) continue;
      used[v] = true;
      image[pv] = v;
      if (self(self, depth + 1)) return true;
      used[v] = false;
      image[pv] = -1;
    }
    return false;
  };
  if (dfs(dfs, 0)) return image;
  return std::nullopt;
}

namespace {

// adjacency rows as bit words
struct BitRows {
  int n, words;
  std::vector<uint64_t> bits;
  BitRows(int n) : n(n), words((n + 63) / 64), bits(static_cast<size_t>(n) * words, 0) {}
  void set(int i, int j) {
    bits[static_cast<size_t>(i) * words + j / 64] |= uint64_t(1) << (j % 64);
  }
  const uint64_t* row(int i) const { return &bits[static_cast<size_t>(i) * words]; }
};

struct BkState {
  const BitRows& adj;
  std::vector<int>& best_through_pair;  // flat upper-triangle, max clique order
  const PairTable<Rat>* dummy = nullptr;
  std::vector<int> r_stack;

  void report(const std::vector<int>& clique) {
    const int sz = static_cast<int>(clique.size());
    for (size_t a = 0; a < clique.size(); ++a)
      for (size_t b = a + 1; b < clique.size(); ++b) {
        int i = clique[a], j = clique[b];
        if (i > j) std::swap(i, j);
        int& slot = best_through_pair[static_cast<size_t>(j) * (j - 1) / 2 + i];
        slot = std::max(slot, sz);
      }
  }
};

void bron_kerbosch(BkState& st, std::vector<uint64_t> pset, std::vector<uint64_t> xset) {
  const int words = st.adj.words;
  bool p_empty = true, x_empty = true;
  for (int w = 0; w < words; ++w) {
    p_empty &= pset[w] == 0;
    x_empty &= xset[w] == 0;
  }
  if (p_empty && x_empty) {
    st.report(st.r_stack);
    return;
  }
  if (p_empty) return;

  // pivot: vertex of P|X with the most neighbours in P
  int pivot = -1, pivot_deg = -1;
  for (int w = 0; w < words; ++w) {
    uint64_t both = pset[w] | xset[w];
    while (both) {
      int v = w * 64 + __builtin_ctzll(both);
      both &= both - 1;
      int deg = 0;
      const uint64_t* row = st.adj.row(v);
      for (int t = 0; t < words; ++t) deg += __builtin_popcountll(row[t] & pset[t]);
      if (deg > pivot_deg) {
        pivot_deg = deg;
        pivot = v;
      }
    }
  }

  std::vector<uint64_t> cand(words);
  const uint64_t* prow = st.adj.row(pivot);
  for (int w = 0; w < words; ++w) cand[w] = pset[w] & ~prow[w];

  for (int w = 0; w < words; ++w) {
    while (cand[w]) {
      int v = w * 64 + __builtin_ctzll(cand[w]);
      cand[w] &= cand[w] - 1;
      const uint64_t* row = st.adj.row(v);
      std::vector<uint64_t> np(words), nx(words);
      for (int t = 0; t < words; ++t) {
        np[t] = pset[t] & row[t];
        nx[t] = xset[t] & row[t];
      }
      st.r_stack.push_back(v);
      bron_kerbosch(st, np, nx);
      st.r_stack.pop_back();
      pset[static_cast<size_t>(v) / 64] &= ~(uint64_t(1) << (v % 64));
      xset[static_cast<size_t>(v) / 64] |= uint64_t(1) << (v % 64);
    }
  }
}

}  // namespace

WeightedGraph assign_clique_weights(const WeightedGraph& support, const CliqueWeighting& cw,
                                    int guard) {
  const int n = support.order();
  if (n > guard)
    throw capacity_error("assign_clique_weights: n = " + std::to_string(n) + " exceeds guard " +
                         std::to_string(guard));
  BitRows adj(n);
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (support.has_edge(i, j)) {
        adj.set(i, j);
        adj.set(j, i);
      }
  std::vector<int> best(PairTable<int>::pair_count(n), 0);
  BkState st{adj, best};
  std::vector<uint64_t> pset(adj.words, 0), xset(adj.words, 0);
  for (int v = 0; v < n; ++v) pset[v / 64] |= uint64_t(1) << (v % 64);
  bron_kerbosch(st, pset, xset);

  WeightedGraph out(n);
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      int r = best[static_cast<size_t>(j) * (j - 1) / 2 + i];
      if (r >= 2) out.set_weight(i, j, cw.value(r));
    }
  return out;
}

void BlowupSpec::validate() const {
  if (x.empty()) throw parse_error("blow-up with no parts");
  Rat sum(0);
  for (const Rat& xi : x) {
    if (xi <= 0) throw parse_error("blow-up part proportion must be positive");
    sum += xi;
  }
  if (sum != 1) throw parse_error("blow-up proportions must sum to 1");
  for (const Rat& w : f.raw())
    if (w < 0 || w > 1) throw parse_error("blow-up weight outside [0,1]");
}

Rat blowup_density(const BlowupSpec& spec) {
  spec.validate();
  Rat d(0);
  const int t = spec.parts();
  for (int j = 1; j < t; ++j)
    for (int i = 0; i < j; ++i) d += 2 * spec.x[i] * spec.x[j] * spec.f.at(i, j);
  return d;
}

WeightedGraph make_turan_graph(int n, int k) {
  if (k < 1 || n < k) throw std::domain_error("make_turan_graph needs 1 <= k <= n");
  std::vector<int> part(n);
  int v = 0;
  const int base = n / k, extra = n % k;
  for (int p = 0; p < k; ++p) {
    const int size = base + (p < extra ? 1 : 0);
    for (int s = 0; s < size; ++s) part[v++] = p;
  }
  WeightedGraph g(n);
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (part[i] != part[j]) g.set_weight(i, j, Rat(1));
  return g;
}

WeightedGraph make_blowup(const BlowupSpec& spec, int n) {
  spec.validate();
  const int t = spec.parts();
  if (n < t) throw std::domain_error("blow-up needs n >= number of parts");
  std::vector<int> size(t, 0);
  long used = 0;
  for (int i = 0; i + 1 < t; ++i) {
    Int fl = floor_rat(spec.x[i] * n);
    size[i] = static_cast<int>(fl.get_si());
    used += size[i];
  }
  size[t - 1] = n - static_cast<int>(used);
  std::vector<int> part(n);
  int v = 0;
  for (int p = 0; p < t; ++p)
    for (int s = 0; s < size[p]; ++s) part[v++] = p;
  WeightedGraph g(n);
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (part[i] != part[j]) g.set_weight(i, j, spec.f.at(part[i], part[j]));
  return g;
}

WeightedGraph parse_graph(std::istream& in) {
  LineReader rd{in};
  std::string line;
  if (!rd.next(line)) throw parse_error("empty graph file");
  auto head = split_ws(line);
  if (head.size() != 2 || head[0] != "n") rd.fail("expected header 'n <count>'");
  long n = to_long(head[1], rd);
  if (n <= 0) rd.fail("graph order must be positive");
  WeightedGraph g(static_cast<int>(n));
  std::vector<bool> seen(PairTable<Rat>::pair_count(static_cast<int>(n)), false);
  while (rd.next(line)) {
    auto tok = split_ws(line);
    if (tok.size() != 3) rd.fail("expected '<i> <j> <p>/<q>'");
    long i = to_long(tok[0], rd), j = to_long(tok[1], rd);
    if (i < 0 || j < 0 || i >= n || j >= n) rd.fail("vertex out of range");
    if (i == j) rd.fail("self-loop");
    Rat w;
    try {
      w = parse_rat(tok[2]);
    } catch (const parse_error& e) {
      rd.fail(e.what());
    }
    if (w < 0 || w > 1) rd.fail("weight outside [0,1]");
    const long lo = std::min(i, j), hi = std::max(i, j);
    const size_t slot = static_cast<size_t>(hi) * (hi - 1) / 2 + lo;
    if (seen[slot]) rd.fail("duplicate edge " + tok[0] + " " + tok[1]);
    seen[slot] = true;
    g.set_weight(static_cast<int>(i), static_cast<int>(j), w);
  }
  return g;
}

WeightedGraph parse_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  return parse_graph(in);
}

void write_graph(std::ostream& out, const WeightedGraph& g) {
  out << "n " << g.order() << "\n";
  for (const auto& [i, j, w] : g.positive_edges())
    out << i << " " << j << " " << fmt_rat(w) << "\n";
}

CliqueWeighting parse_weighting(std::istream& in) {
  LineReader rd{in};
  std::string line;
  CliqueWeighting cw;
  while (rd.next(line)) {
    auto tok = split_ws(line);
    if (tok.size() != 2) rd.fail("expected '<r> <p>/<q>'");
    long r = to_long(tok[0], rd);
    if (r < 2) rd.fail("clique order must be >= 2");
    if (cw.values.count(static_cast<int>(r))) rd.fail("duplicate clique order");
    Rat w;
    try {
      w = parse_rat(tok[1]);
    } catch (const parse_error& e) {
      rd.fail(e.what());
    }
    if (w < 0 || w > 1) rd.fail("weight outside [0,1]");
    cw.values[static_cast<int>(r)] = w;
  }
  if (cw.values.empty()) throw parse_error("empty weighting file");
  return cw;
}

CliqueWeighting parse_weighting_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  return parse_weighting(in);
}

}  // namespace wturan
