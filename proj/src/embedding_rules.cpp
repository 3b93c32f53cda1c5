#include "wturan/embedding_rules.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "wturan/errors.hpp"
#include "line_reader.hpp"

namespace wturan {

void ClusterConfig::validate() const {
  if (t < 1) throw std::domain_error("configuration needs at least one cluster");
  if (p < 1) throw std::domain_error("within-cluster clique order must be positive");
  for (int j = 1; j < t; ++j)
    for (int i = 0; i < j; ++i) {
      const auto& a = thresholds.at(i, j);
      if (a && (*a < 0 || *a >= 1))
        throw std::domain_error("threshold outside [0,1) at pair " + std::to_string(i) + " " +
                                std::to_string(j));
    }
}

int survivors(int s, const Rat& a) {
  if (s < 1) throw std::domain_error("survivors needs s >= 1");
  if (a < 0 || a >= 1) throw std::domain_error("survivors needs a in [0,1)");
  // Limit of ceil(s(d - eps/2) - eps/2) as eps -> 0 with d > a: floor(s*a)+1.
  Int f = floor_rat(Rat(s) * a);
  return static_cast<int>(f.get_si()) + 1;
}

namespace {

// Best shrink value for one cluster: start at s vertices and survive across
// every cluster in `mask`, order chosen freely. Memo holds, per state, the
// value and the smallest next cluster achieving it (lex-min chain recovery).
struct ChainSearch {
  const ClusterConfig& cfg;
  std::map<std::tuple<int, int, int>, std::pair<int, int>> memo;  // (i,mask,s) -> (value, next)

  std::pair<int, int> run(int i, int mask, int s) {
    if (mask == 0) return {s, -1};
    auto key = std::make_tuple(i, mask, s);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    int best = -1, best_next = -1;
    for (int e = 0; e < cfg.t; ++e) {
      if (!(mask & (1 << e))) continue;
      int next_s = survivors(s, *cfg.threshold(i, e));
      int value = run(i, mask & ~(1 << e), next_s).first;
      if (value > best) {
        best = value;
        best_next = e;
      }
    }
    memo[key] = {best, best_next};
    return {best, best_next};
  }

  std::vector<int> order(int i, int mask, int s) {
    std::vector<int> out;
    while (mask != 0) {
      int e = run(i, mask, s).second;
      out.push_back(e);
      s = survivors(s, *cfg.threshold(i, e));
      mask &= ~(1 << e);
    }
    return out;
  }
};

}  // namespace

EmbedResult max_embeddable(const ClusterConfig& config) {
  config.validate();
  if (config.t > 7)
    throw capacity_error("embedding order search guarded at t <= 7 (got t=" +
                         std::to_string(config.t) + ")");

  const int t = config.t;
  ChainSearch chains{config};

  // Pairwise-usable subsets only: an absent threshold forbids co-use.
  auto usable = [&](int mask) {
    for (int j = 1; j < t; ++j)
      for (int i = 0; i < j; ++i)
        if ((mask & (1 << i)) && (mask & (1 << j)) && !config.threshold(i, j)) return false;
    return true;
  };

  EmbedResult best;
  std::vector<int> members;
  for (int mask = 1; mask < (1 << t); ++mask) {
    if (!usable(mask)) continue;
    members.clear();
    for (int v = 0; v < t; ++v)
      if (mask & (1 << v)) members.push_back(v);
    std::vector<int> sigma = members;
    do {
      int total = 0;
      int later = mask;
      for (int v : sigma) {
        later &= ~(1 << v);
        total += chains.run(v, later, config.p).first;
      }
      if (total > best.size) {
        best.size = total;
        best.order = sigma;
        best.chains.clear();
        best.contributions.assign(t, 0);
        later = mask;
        for (int v : sigma) {
          later &= ~(1 << v);
          best.chains.push_back(chains.order(v, later, config.p));
          best.contributions[v] = chains.run(v, later, config.p).first;
        }
      }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }
  return best;
}

bool is_forbidden(const ClusterConfig& config, int q) {
  return max_embeddable(config).size >= q;
}

void DiscretizationTable::validate() const {
  if (rows.empty()) throw std::domain_error("empty discretization table");
  if (rows[0].color != 1 || rows[0].lower != 0 || rows[0].upper != 0)
    throw std::domain_error("first class must be color 1 at density 0");
  for (size_t c = 1; c < rows.size(); ++c) {
    if (rows[c].color != static_cast<int>(c) + 1)
      throw std::domain_error("class colors must be consecutive from 1");
    if (rows[c].lower != rows[c - 1].upper)
      throw std::domain_error("class intervals must be contiguous");
    if (rows[c].upper <= rows[c].lower)
      throw std::domain_error("class intervals must be nonempty");
  }
  const Rat& top = rows.back().upper;
  if (cap ? (*cap != top) : (top != 1))
    throw std::domain_error("classes must cover densities up to 1 or up to the cap");
}

int DiscretizationTable::color_of(const Rat& density) const {
  if (density < 0 || density > 1) throw std::domain_error("density outside [0,1]");
  if (density == 0) return 1;
  for (const TableRow& row : rows)
    if (row.color >= 2 && row.lower < density && density <= row.upper) return row.color;
  // Only reachable above the cap: every table either ends at 1 or carries one.
  throw std::domain_error("density " + fmt_rat(density) + " exceeds the table cap " +
                          fmt_rat(*cap));
}

CaseId CaseId::parse(const std::string& name) {
  if (name == "rho512") return {CaseKind::rho512, 0};
  if (name == "rho614") return {CaseKind::rho614, 0};
  if (name == "rho411") return {CaseKind::rho411, 0};
  if (name.rfind("p6(", 0) == 0 && name.back() == ')') {
    const std::string arg = name.substr(3, name.size() - 4);
    size_t pos = 0;
    long p = 0;
    try {
      p = std::stol(arg, &pos);
    } catch (const std::exception&) {
      throw parse_error("bad p6 parameter '" + arg + "'");
    }
    if (pos != arg.size()) throw parse_error("bad p6 parameter '" + arg + "'");
    if (p < 5) throw parse_error("p6 requires p >= 5");
    return {CaseKind::p6, static_cast<int>(p)};
  }
  throw parse_error("unknown case '" + name + "' (expected rho512, rho614, rho411, or p6(p))");
}

std::string CaseId::str() const {
  switch (kind) {
    case CaseKind::rho512: return "rho512";
    case CaseKind::rho614: return "rho614";
    case CaseKind::rho411: return "rho411";
    case CaseKind::p6: return "p6(" + std::to_string(p6_param) + ")";
  }
  return "";
}

int CaseId::clique_order() const {
  switch (kind) {
    case CaseKind::rho512: return 5;
    case CaseKind::rho614: return 6;
    case CaseKind::rho411: return 4;
    case CaseKind::p6: return p6_param;
  }
  return 0;
}

int CaseId::target() const {
  switch (kind) {
    case CaseKind::rho512: return 12;
    case CaseKind::rho614: return 14;
    case CaseKind::rho411: return 11;
    case CaseKind::p6: return p6_param + 6;
  }
  return 0;
}

namespace {

DiscretizationTable make_table(const std::vector<Rat>& uppers,
                               const std::vector<std::string>& rules,
                               std::optional<Rat> cap = std::nullopt) {
  DiscretizationTable table;
  Rat lower = 0;
  for (size_t c = 0; c < uppers.size(); ++c) {
    table.rows.push_back({static_cast<int>(c) + 1, lower, uppers[c], rules[c]});
    lower = uppers[c];
  }
  table.cap = std::move(cap);
  table.validate();
  return table;
}

}  // namespace

DiscretizationTable discretization(const CaseId& c) {
  switch (c.kind) {
    case CaseKind::rho512:
      return make_table({0, frac(1, 5), frac(1, 2), frac(3, 5), frac(4, 5), 1},
                        {"no embedding", "any 1 vertex", "some 2 vertices",
                         "any 2 vertices or some 3 vertices", "some 4 vertices",
                         "any 5 vertices"});
    case CaseKind::rho614:
      return make_table({0, frac(1, 6), frac(1, 3), frac(1, 2), frac(2, 3), frac(5, 6), 1},
                        {"no embedding", "any 1 vertex", "some 2 vertices", "some 3 vertices",
                         "any 2 vertices or some 4 vertices", "some 5 vertices",
                         "any 6 vertices"});
    case CaseKind::rho411:
      return make_table({0, frac(1, 4), frac(1, 2), frac(3, 4), 1},
                        {"no embedding", "any 1 vertex", "some 2 vertices",
                         "any 2 vertices or some 3 vertices", "any 4 vertices"});
    case CaseKind::p6: {
      const int p = c.p6_param;
      return make_table(
          {0, frac(1, p), frac(2, p), frac(3, p), frac(4, p), frac(5, p)},
          {"no embedding", "any 1 vertex", "some 2 vertices", "some 3 vertices",
           "some 4 vertices", "some 5 vertices"},
          frac(5, p));
    }
  }
  throw std::domain_error("unknown case");
}

namespace {

CatalogEntry entry(std::string name, int t, int p,
                   std::vector<std::pair<std::pair<int, int>, Rat>> thresholds,
                   std::vector<int> labels) {
  CatalogEntry e{std::move(name), ClusterConfig(t, p), std::move(labels)};
  for (const auto& [pair, a] : thresholds) e.config.set(pair.first, pair.second, a);
  return e;
}

}  // namespace

std::vector<CatalogEntry> case_figures(const CaseId& c) {
  const Rat z = 0;
  switch (c.kind) {
    case CaseKind::rho512:
      return {
          entry("fig5a", 3, 5, {{{0, 1}, frac(1, 2)}, {{0, 2}, frac(1, 5)}, {{1, 2}, frac(4, 5)}},
                {2, 5, 5}),
          entry("fig5b", 3, 5, {{{0, 1}, frac(3, 5)}, {{0, 2}, frac(1, 2)}, {{1, 2}, frac(3, 5)}},
                {3, 4, 5}),
          entry("fig5c", 4, 5,
                {{{0, 1}, z}, {{0, 2}, z}, {{0, 3}, z}, {{1, 2}, z}, {{1, 3}, z},
                 {{2, 3}, frac(4, 5)}},
                {1, 1, 5, 5}),
          entry("fig5d", 4, 5,
                {{{0, 1}, z}, {{0, 2}, z}, {{0, 3}, z}, {{1, 2}, frac(1, 5)},
                 {{1, 3}, frac(1, 2)}, {{2, 3}, frac(3, 5)}},
                {1, 2, 4, 5}),
          entry("fig5e", 4, 5,
                {{{0, 1}, frac(1, 2)}, {{0, 2}, frac(1, 5)}, {{0, 3}, frac(1, 2)},
                 {{1, 2}, frac(1, 5)}, {{1, 3}, frac(1, 2)}, {{2, 3}, frac(1, 2)}},
                {2, 2, 3, 5}),
      };
    case CaseKind::rho614:
      return {
          entry("fig7a", 3, 6, {{{0, 1}, frac(1, 2)}, {{0, 2}, frac(1, 6)}, {{1, 2}, frac(5, 6)}},
                {2, 6, 6}),
          entry("fig7b", 3, 6, {{{0, 1}, frac(1, 3)}, {{0, 2}, frac(1, 3)}, {{1, 2}, frac(5, 6)}},
                {2, 6, 6}),
          entry("fig7c", 4, 6,
                {{{0, 1}, z}, {{0, 2}, z}, {{0, 3}, z}, {{1, 2}, z}, {{1, 3}, z},
                 {{2, 3}, frac(5, 6)}},
                {1, 1, 6, 6}),
          entry("fig7d", 4, 6,
                {{{0, 1}, z}, {{0, 2}, z}, {{0, 3}, z}, {{1, 2}, frac(1, 6)},
                 {{1, 3}, frac(1, 2)}, {{2, 3}, frac(2, 3)}},
                {1, 2, 5, 6}),
          entry("fig7e", 4, 6,
                {{{0, 1}, frac(1, 2)}, {{0, 2}, frac(1, 6)}, {{0, 3}, frac(1, 2)},
                 {{1, 2}, frac(1, 6)}, {{1, 3}, frac(1, 2)}, {{2, 3}, frac(1, 2)}},
                {2, 2, 4, 6}),
          entry("fig7f", 4, 6,
                {{{0, 1}, frac(1, 3)}, {{0, 2}, frac(1, 3)}, {{0, 3}, frac(1, 2)},
                 {{1, 2}, frac(1, 3)}, {{1, 3}, frac(1, 3)}, {{2, 3}, frac(1, 2)}},
                {2, 2, 4, 6}),
      };
    case CaseKind::rho411:
      return {
          entry("fig8a", 3, 4, {{{0, 1}, frac(3, 4)}, {{0, 2}, frac(3, 4)}, {{1, 2}, frac(1, 2)}},
                {4, 3, 4}),
          entry("fig8b", 4, 4,
                {{{0, 1}, z}, {{0, 2}, z}, {{0, 3}, z}, {{1, 2}, frac(1, 4)},
                 {{1, 3}, frac(1, 2)}, {{2, 3}, frac(3, 4)}},
                {1, 2, 4, 4}),
          entry("fig8c", 4, 4,
                {{{0, 1}, frac(1, 4)}, {{0, 2}, frac(1, 2)}, {{0, 3}, frac(1, 2)},
                 {{1, 2}, frac(1, 4)}, {{1, 3}, frac(1, 2)}, {{2, 3}, frac(3, 4)}},
                {2, 2, 3, 4}),
          entry("fig8d", 5, 4,
                {{{0, 1}, z}, {{0, 2}, z}, {{0, 3}, z}, {{0, 4}, z}, {{1, 2}, z}, {{1, 3}, z},
                 {{1, 4}, z}, {{2, 3}, z}, {{2, 4}, z}, {{3, 4}, frac(3, 4)}},
                {1, 1, 1, 4, 4}),
          entry("fig8e", 5, 4,
                {{{0, 1}, z}, {{0, 2}, z}, {{0, 3}, z}, {{0, 4}, z}, {{1, 2}, z}, {{1, 3}, z},
                 {{1, 4}, z}, {{2, 3}, frac(1, 4)}, {{2, 4}, frac(1, 2)}, {{3, 4}, frac(1, 2)}},
                {1, 1, 2, 3, 4}),
      };
    case CaseKind::p6: {
      const int p = c.p6_param;
      return {
          entry("fig9a", 3, p, {{{0, 1}, z}, {{0, 2}, z}, {{1, 2}, frac(4, p)}}, {1, 5, p}),
          entry("fig9b", 4, p,
                {{{0, 1}, z}, {{0, 2}, z}, {{0, 3}, z}, {{1, 2}, z}, {{1, 3}, z},
                 {{2, 3}, frac(3, p)}},
                {1, 1, 4, p}),
          entry("fig9c", 5, p,
                {{{0, 1}, z}, {{0, 2}, z}, {{0, 3}, z}, {{0, 4}, z}, {{1, 2}, z}, {{1, 3}, z},
                 {{1, 4}, z}, {{2, 3}, z}, {{2, 4}, z}, {{3, 4}, frac(2, p)}},
                {1, 1, 1, 3, p}),
          entry("fig10", 3, p,
                {{{0, 1}, frac(3, p)}, {{0, 2}, frac(3, p)}, {{1, 2}, frac(3, p)}}, {2, 4, p}),
      };
    }
  }
  throw std::domain_error("unknown case");
}

ClusterConfig config_from_blowup(const BlowupSpec& spec, const DiscretizationTable& table,
                                 int p) {
  spec.validate();
  table.validate();
  const int t = spec.parts();
  ClusterConfig config(t, p);
  for (int j = 1; j < t; ++j)
    for (int i = 0; i < j; ++i) {
      const Rat& w = spec.f.at(i, j);
      const int color = table.color_of(w);
      if (color == 1) continue;  // unusable pair
      for (const TableRow& row : table.rows)
        if (row.color == color) config.set(i, j, row.lower);
    }
  return config;
}

std::vector<ColoredGraph> expand_config(const ClusterConfig& config,
                                        const DiscretizationTable& table) {
  table.validate();
  const int t = config.t;
  const int k = static_cast<int>(table.rows.size());

  // Allowed colors per pair: classes whose entire density range clears the
  // threshold. Color 1 never qualifies for a present pair (no co-use).
  std::vector<std::vector<int>> allowed(PairTable<int>::pair_count(t));
  for (int j = 1; j < t; ++j)
    for (int i = 0; i < j; ++i) {
      auto& colors = allowed[static_cast<size_t>(j) * (j - 1) / 2 + i];
      const auto& a = config.threshold(i, j);
      for (const TableRow& row : table.rows) {
        if (a ? (row.color >= 2 && row.lower >= *a) : true) colors.push_back(row.color);
      }
      if (colors.empty()) return {};
    }

  std::set<ColoredGraph> seen;
  ColoredGraph g(t, k);
  auto fill = [&](auto&& self, size_t slot) -> void {
    if (slot == allowed.size()) {
      seen.insert(g.canonical());
      return;
    }
    auto [i, j] = PairTable<int>::pair_at(static_cast<int>(slot));
    for (int color : allowed[slot]) {
      g.set_color(i, j, color);
      self(self, slot + 1);
    }
  };
  fill(fill, 0);
  return {seen.begin(), seen.end()};
}

std::vector<ColoredGraph> colored_forbidden_set(const CaseId& c) {
  const DiscretizationTable table = discretization(c);
  std::set<ColoredGraph> seen;
  for (const CatalogEntry& fig : case_figures(c)) {
    // Only configurations that actually embed K_q may constrain the host.
    if (!is_forbidden(fig.config, c.target())) continue;
    for (const ColoredGraph& g : expand_config(fig.config, table)) seen.insert(g);
  }
  return {seen.begin(), seen.end()};
}

ClusterConfig parse_config(std::istream& in) {
  LineReader rd{in};
  std::string line;
  if (!rd.next(line)) throw parse_error("empty config file");
  auto head = split_ws(line);
  if (head.size() != 2 || head[0] != "t") rd.fail("expected header 't <count>'");
  long t = to_long(head[1], rd);
  if (t <= 0) rd.fail("cluster count must be positive");
  if (!rd.next(line)) throw parse_error("missing 'p <order>' line");
  head = split_ws(line);
  if (head.size() != 2 || head[0] != "p") rd.fail("expected 'p <order>'");
  long p = to_long(head[1], rd);
  if (p <= 0) rd.fail("clique order must be positive");

  ClusterConfig config(static_cast<int>(t), static_cast<int>(p));
  while (rd.next(line)) {
    auto tok = split_ws(line);
    if (tok.size() != 3) rd.fail("expected '<i> <j> <p>/<q>'");
    long i = to_long(tok[0], rd), j = to_long(tok[1], rd);
    if (i < 0 || j < 0 || i >= t || j >= t) rd.fail("cluster out of range");
    if (i == j) rd.fail("self-loop");
    Rat a;
    try {
      a = parse_rat(tok[2]);
    } catch (const parse_error& e) {
      rd.fail(e.what());
    }
    if (a < 0 || a >= 1) rd.fail("threshold outside [0,1)");
    if (config.threshold(static_cast<int>(i), static_cast<int>(j)))
      rd.fail("duplicate pair " + tok[0] + " " + tok[1]);
    config.set(static_cast<int>(i), static_cast<int>(j), a);
  }
  return config;
}

ClusterConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  return parse_config(in);
}

void write_config(std::ostream& out, const ClusterConfig& config) {
  out << "t " << config.t << "\n";
  out << "p " << config.p << "\n";
  for (int j = 1; j < config.t; ++j)
    for (int i = 0; i < j; ++i)
      if (const auto& a = config.threshold(i, j)) out << i << " " << j << " " << fmt_rat(*a) << "\n";
}

}  // namespace wturan
