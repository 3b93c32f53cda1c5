#include "wturan/colored_graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "wturan/errors.hpp"

namespace wturan {

ColoredGraph::ColoredGraph(int n, int k) : n_(n), k_(k), c_(n, 1) {
  if (n < 1) throw std::domain_error("colored graph needs at least one vertex");
  if (k < 1) throw std::domain_error("colored graph needs at least one color");
}

void ColoredGraph::set_color(int i, int j, int color) {
  if (color < 1 || color > k_) throw std::domain_error("color out of range");
  c_.at(i, j) = color;
}

std::vector<int> ColoredGraph::relabeled_sequence(const std::vector<int>& perm) const {
  std::vector<int> seq(PairTable<int>::pair_count(n_));
  for (int j = 1; j < n_; ++j)
    for (int i = 0; i < j; ++i) {
      int a = perm[i], b = perm[j];
      if (a > b) std::swap(a, b);
      seq[static_cast<size_t>(b) * (b - 1) / 2 + a] = c_.at(i, j);
    }
  return seq;
}

namespace {

// Applies f to every permutation of [0, n); stops early if f returns false.
template <typename F>
void for_each_perm(int n, F&& f) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (!f(perm)) return;
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

ColoredGraph ColoredGraph::canonical() const {
  std::vector<int> best;
  for_each_perm(n_, [&](const std::vector<int>& perm) {
    std::vector<int> seq = relabeled_sequence(perm);
    if (best.empty() || seq < best) best = std::move(seq);
    return true;
  });
  ColoredGraph out(n_, k_);
  for (int j = 1; j < n_; ++j)
    for (int i = 0; i < j; ++i)
      out.c_.at(i, j) = best[static_cast<size_t>(j) * (j - 1) / 2 + i];
  return out;
}

bool ColoredGraph::is_canonical() const {
  const std::vector<int>& self = c_.raw();
  bool ok = true;
  for_each_perm(n_, [&](const std::vector<int>& perm) {
    if (relabeled_sequence(perm) < self) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

std::string ColoredGraph::key() const {
  static const char* digits = "0123456789abcdefghijklmnopqrstuvwxyz";
  std::string s = std::to_string(n_) + ":" + std::to_string(k_) + ":";
  for (int c : c_.raw()) s += digits[c];
  return s;
}

int ColoredGraph::color_count(int color) const {
  int count = 0;
  for (int c : c_.raw())
    if (c == color) ++count;
  return count;
}

bool operator<(const ColoredGraph& a, const ColoredGraph& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  if (a.k_ != b.k_) return a.k_ < b.k_;
  return a.c_.raw() < b.c_.raw();
}

std::optional<std::vector<int>> contains_colored(const ColoredGraph& host,
                                                 const ColoredGraph& pattern) {
  const int nh = host.order(), np = pattern.order();
  if (np > nh) return std::nullopt;
  std::vector<int> map(np, -1);
  std::vector<char> used(nh, 0);
  // Depth-first over injections; colors checked as each vertex is placed.
  auto place = [&](auto&& self, int v) -> bool {
    if (v == np) return true;
    for (int cand = 0; cand < nh; ++cand) {
      if (used[cand]) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u)
        ok = host.color(map[u], cand) == pattern.color(u, v);
      if (!ok) continue;
      map[v] = cand;
      used[cand] = 1;
      if (self(self, v + 1)) return true;
      used[cand] = 0;
      map[v] = -1;
    }
    return false;
  };
  if (place(place, 0)) return map;
  return std::nullopt;
}

std::vector<ColoredGraph> enumerate_colored(int n, int k,
                                            const std::vector<ColoredGraph>& forbidden) {
  if (n < 1 || k < 1) throw std::domain_error("enumeration needs n >= 1, k >= 1");
  if (n > 5 || k > 8)
    throw capacity_error("colored enumeration guarded at n <= 5, k <= 8 (got n=" +
                         std::to_string(n) + ", k=" + std::to_string(k) + ")");

  const int pairs = PairTable<int>::pair_count(n);
  ColoredGraph g(n, k);
  std::vector<ColoredGraph> out;

  // completes[s] = order of the vertex whose pairs finish at slot s, else 0.
  std::vector<int> completes(std::max(pairs, 1), 0);
  for (int c = 1; c < n; ++c) completes[PairTable<int>::pair_count(c + 1) - 1] = c + 1;

  // Admissibility and canonicality of the prefix on the first c vertices.
  // Prefix-canonical pruning is complete: pair order is prefix-closed, so a
  // canonical full sequence has every complete-vertex prefix canonical.
  auto prefix_ok = [&](int c) {
    ColoredGraph prefix(c, k);
    for (int j = 1; j < c; ++j)
      for (int i = 0; i < j; ++i) prefix.set_color(i, j, g.color(i, j));
    if (!prefix.is_canonical()) return false;
    for (const ColoredGraph& pat : forbidden)
      if (pat.order() <= c && contains_colored(prefix, pat)) return false;
    return true;
  };

  auto dfs = [&](auto&& self, int slot) -> void {
    if (slot == pairs) {
      out.push_back(g);
      return;
    }
    auto [i, j] = PairTable<int>::pair_at(slot);
    for (int color = 1; color <= k; ++color) {
      g.set_color(i, j, color);
      if (completes[slot] == 0 || prefix_ok(completes[slot])) self(self, slot + 1);
    }
    g.set_color(i, j, 1);
  };

  if (n == 1) {
    out.push_back(g);  // no pairs to color
  } else {
    dfs(dfs, 0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace wturan
