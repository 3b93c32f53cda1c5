#include "wturan/blowup_optimizer.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "line_reader.hpp"
#include "wturan/errors.hpp"

namespace wturan {

ForbiddenFamily make_family(std::vector<WeightedCliquePattern> patterns, int explicit_r_max) {
  int derived = 0;
  for (const auto& p : patterns) {
    if (p.r < 2) throw std::domain_error("pattern order must be at least 2");
    bool pure = std::all_of(p.f.raw().begin(), p.f.raw().end(), [](const Rat& v) { return v == 0; });
    if (pure && (derived == 0 || p.r - 1 < derived)) derived = p.r - 1;
  }
  ForbiddenFamily fam;
  fam.patterns = std::move(patterns);
  if (explicit_r_max < 0) throw std::domain_error("r_max must be positive");
  if (explicit_r_max > 0 && derived > 0)
    fam.r_max = std::min(explicit_r_max, derived);
  else if (explicit_r_max > 0)
    fam.r_max = explicit_r_max;
  else if (derived > 0)
    fam.r_max = derived;
  else
    throw std::domain_error(
        "family has no all-zero-threshold template; supply r_max explicitly");
  return fam;
}

void Alphabet::validate() const {
  if (values.empty()) throw std::domain_error("alphabet is empty");
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0 || values[i] > 1) throw std::domain_error("alphabet value out of [0,1]");
    if (i > 0 && values[i] <= values[i - 1]) throw std::domain_error("alphabet must be strictly increasing");
  }
}

Alphabet parse_alphabet(const std::string& comma_separated) {
  Alphabet a;
  std::string tok;
  std::istringstream ss(comma_separated);
  while (std::getline(ss, tok, ',')) a.values.push_back(parse_rat(tok));
  std::sort(a.values.begin(), a.values.end());
  a.values.erase(std::unique(a.values.begin(), a.values.end()), a.values.end());
  a.validate();
  return a;
}

namespace {

int slot_of(int i, int j) {
  if (i > j) std::swap(i, j);
  return j * (j - 1) / 2 + i;
}

struct Search {
  const ForbiddenFamily& family;
  const std::vector<Rat>& values;
  long budget;
  long nodes = 0;

  bool found = false;
  Rat best_d = Rat(0);
  int best_t = 1;
  std::vector<int8_t> best_choice;
  std::vector<Rat> best_x;

  int t = 0, pairs = 0;
  std::vector<std::pair<int, int>> pair_of;
  std::vector<int> completes;  // vertex completed at this slot, or -1
  // relabel maps per completed vertex count; identity omitted
  std::vector<std::vector<std::vector<int>>> slot_maps;
  std::vector<int8_t> choice;

  void prepare(int order) {
    t = order;
    pairs = static_cast<int>(PairTable<Rat>::pair_count(t));
    pair_of.resize(pairs);
    completes.assign(pairs, -1);
    for (int s = 0; s < pairs; ++s) {
      pair_of[s] = PairTable<Rat>::pair_at(s);
      for (int c = 1; c < t; ++c)
        if (s + 1 == static_cast<int>(PairTable<Rat>::pair_count(c + 1))) completes[s] = c;
    }
    slot_maps.assign(t, {});
    for (int c = 1; c < t; ++c) {
      std::vector<int> perm(c + 1);
      std::iota(perm.begin(), perm.end(), 0);
      const int sub = static_cast<int>(PairTable<Rat>::pair_count(c + 1));
      while (std::next_permutation(perm.begin(), perm.end())) {
        std::vector<int> map(sub);
        for (int s = 0; s < sub; ++s) map[s] = slot_of(perm[pair_of[s].first], perm[pair_of[s].second]);
        slot_maps[c].push_back(std::move(map));
      }
    }
    choice.assign(pairs, -1);
  }

  // least relabeling of the completed prefix wins; everything else is a copy
  bool canonical(int c) const {
    const int sub = static_cast<int>(PairTable<Rat>::pair_count(c + 1));
    for (const auto& map : slot_maps[c]) {
      for (int s = 0; s < sub; ++s) {
        const int8_t relabeled = choice[map[s]];
        if (relabeled != choice[s]) {
          if (relabeled < choice[s]) return false;
          break;
        }
      }
    }
    return true;
  }

  bool family_hit(int c) const {
    WeightedGraph g(c + 1);
    const int sub = static_cast<int>(PairTable<Rat>::pair_count(c + 1));
    for (int s = 0; s < sub; ++s)
      if (values[choice[s]] > 0) g.set_weight(pair_of[s].first, pair_of[s].second, values[choice[s]]);
    for (const auto& p : family.patterns)
      if (p.r <= c + 1 && contains_pattern(g, p)) return true;
    return false;
  }

  void evaluate() {
    SymMatrix a(t);
    for (int s = 0; s < pairs; ++s)
      a.set(pair_of[s].first, pair_of[s].second, values[choice[s]]);
    LagrangianResult r = lagrangian_exact(a, std::max(18, t));
    if (static_cast<int>(r.support.size()) != t) return;  // same value shows up at a smaller t
    bool better = false;
    if (!found || r.value > best_d)
      better = true;
    else if (r.value == best_d && t == best_t)
      better = std::lexicographical_compare(choice.begin(), choice.end(), best_choice.begin(),
                                            best_choice.end());
    if (better) {
      found = true;
      best_d = r.value;
      best_t = t;
      best_choice = choice;
      best_x = r.x;
    }
  }

  void dfs(int s) {
    for (int8_t v = 0; v < static_cast<int8_t>(values.size()); ++v) {
      if (++nodes > budget)
        throw capacity_error("blow-up search budget exhausted; best so far d = " +
                             fmt_rat(best_d) + " at t = " + std::to_string(best_t));
      choice[s] = v;
      const int c = completes[s];
      if (c >= 0 && (!canonical(c) || family_hit(c))) continue;
      if (s + 1 == pairs)
        evaluate();
      else
        dfs(s + 1);
    }
    choice[s] = -1;
  }
};

}  // namespace

BlowupSolution optimize_dF(const ForbiddenFamily& family, const Alphabet& alphabet, int t_cap,
                           long node_budget) {
  alphabet.validate();
  if (t_cap < 1) throw std::domain_error("t_cap must be at least 1");
  if (family.r_max < 1) throw std::domain_error("family r_max is not set");

  BlowupSolution out;  // t = 1 never embeds anything and has density 0
  out.t = 1;
  out.spec.x = {Rat(1)};
  out.spec.f = PairTable<Rat>(1);
  out.density = Rat(0);
  out.lower_bound_only = t_cap < family.r_max;

  Search search{family, alphabet.values, node_budget};
  const int t_max = std::min(t_cap, family.r_max);
  for (int t = 2; t <= t_max; ++t) {
    search.prepare(t);
    search.dfs(0);
  }
  if (search.found && search.best_d > 0) {
    out.t = search.best_t;
    out.spec.f = PairTable<Rat>(search.best_t);
    for (size_t s = 0; s < out.spec.f.raw().size(); ++s)
      out.spec.f.raw()[s] = alphabet.values[search.best_choice[s]];
    out.spec.x = search.best_x;
    out.density = search.best_d;
  }
  return out;
}

ForbiddenFamily heavy_family(const Rat& a) {
  return make_family({WeightedCliquePattern::uniform(3, a), WeightedCliquePattern::uniform(4, Rat(0))});
}

ForbiddenFamily chubby_family(int q, int r, const Rat& a) {
  if (q < 2 || q > r) throw std::domain_error("need 2 <= q <= r");
  WeightedCliquePattern chubby(q);  // a q-clique with some edge heavier than a
  chubby.f.at(0, 1) = a;
  return make_family({std::move(chubby), WeightedCliquePattern::uniform(r + 1, Rat(0))});
}

ForbiddenFamily matching_family(int r, const Rat& a) {
  if (r < 2) throw std::domain_error("need r >= 2");
  WeightedCliquePattern cherry(3);
  cherry.f.at(0, 1) = a;
  cherry.f.at(0, 2) = a;
  cherry.f.at(1, 2) = Rat(0);
  return make_family({cherry, WeightedCliquePattern::uniform(r + 1, Rat(0))});
}

std::pair<Rat, std::vector<Rat>> closed_form_heavy(const Rat& a) {
  if (a <= 0 || a > 1) throw std::domain_error("need 0 < a <= 1");
  const Rat den = Rat(4) - a;
  return {Rat(2) / den, {(Rat(2) - a) / den, Rat(1) / den, Rat(1) / den}};
}

Rat closed_form_chubby(int q, int r, const Rat& a) {
  if (q < 2 || q > r) throw std::domain_error("need 2 <= q <= r");
  if (a < 0 || a > 1) throw std::domain_error("need 0 <= a <= 1");
  const Rat turan_branch = Rat(1) - frac(1, q - 1);
  const Rat flat_branch = a * (Rat(1) - frac(1, r));
  return std::max(turan_branch, flat_branch);
}

Rat closed_form_matching(int r, const Rat& a) {
  if (r < 2) throw std::domain_error("need r >= 2");
  if (a < 0 || a > 1) throw std::domain_error("need 0 <= a <= 1");
  if (a <= frac(1, 2)) return frac(1, 2);
  if (r % 2 == 0) return a + (Rat(1) - 2 * a) / r;
  return a * a * (r - 1) / (a * (r + 1) - 1);
}

namespace {

// "name" or "name(i,j,...)" with long arguments
std::pair<std::string, std::vector<long>> parse_construction_name(const std::string& name) {
  auto open = name.find('(');
  if (open == std::string::npos) return {name, {}};
  if (name.back() != ')') throw parse_error("bad construction name '" + name + "'");
  std::string base = name.substr(0, open);
  std::string inner = name.substr(open + 1, name.size() - open - 2);
  std::vector<long> args;
  std::istringstream ss(inner);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(tok, &pos);
    } catch (const std::exception&) {
      throw parse_error("bad construction argument '" + tok + "'");
    }
    if (pos != tok.size()) throw parse_error("bad construction argument '" + tok + "'");
    args.push_back(v);
  }
  if (args.empty()) throw parse_error("bad construction name '" + name + "'");
  return {base, args};
}

BlowupSpec conj_ptr_spec(long p, long t, long r) {
  if (p < 1 || t < 1 || r < 0 || r + 1 > p) throw std::domain_error("conj_ptr needs p >= r+1, t >= 1");
  const long c = 2 * p - r - 1;
  const long s = t * c + r + 1;
  BlowupSpec spec;
  spec.x.assign(t + 1, frac(c, s));
  spec.x[0] = spec.x[1] = frac(p, s);
  spec.f = PairTable<Rat>(static_cast<int>(t + 1), Rat(1));
  spec.f.at(0, 1) = frac(r + 1, p);
  spec.validate();
  return spec;
}

}  // namespace

BlowupSpec construction_spec(const std::string& name) {
  auto [base, args] = parse_construction_name(name);
  if (base == "rho512" && args.empty()) return conj_ptr_spec(5, 2, 0);
  if (base == "rho614" && args.empty()) return conj_ptr_spec(6, 2, 0);
  if (base == "rho411" && args.empty()) return conj_ptr_spec(4, 2, 1);
  if (base == "conj_ptr") {
    if (args.size() != 3) throw parse_error("conj_ptr takes (p,t,r)");
    return conj_ptr_spec(args[0], args[1], args[2]);
  }
  if (base == "bipartite_p6") {
    if (args.size() != 1) throw parse_error("bipartite_p6 takes (p)");
    if (args[0] < 5) throw std::domain_error("bipartite_p6 needs p >= 5");
    BlowupSpec spec;
    spec.x = {frac(1, 2), frac(1, 2)};
    spec.f = PairTable<Rat>(2);
    spec.f.at(0, 1) = frac(5, args[0]);
    return spec;
  }
  if (base == "tripartite_p6") {
    if (args.size() != 1) throw parse_error("tripartite_p6 takes (p)");
    if (args[0] < 4) throw std::domain_error("tripartite_p6 needs p >= 4");
    BlowupSpec spec;
    spec.x = {frac(1, 3), frac(1, 3), frac(1, 3)};
    spec.f = PairTable<Rat>(3, frac(4, args[0]));
    return spec;
  }
  throw parse_error("unknown construction '" + name + "'");
}

WeightedGraph named_construction(const std::string& name, int n) {
  return make_blowup(construction_spec(name), n);
}

ForbiddenFamily parse_family(std::istream& in, int explicit_r_max) {
  LineReader rd{in};
  std::string line;
  std::vector<WeightedCliquePattern> patterns;
  bool have = rd.next(line);
  if (!have) throw parse_error("empty family file");
  while (have) {
    auto tok = split_ws(line);
    if (tok.size() != 2 || tok[0] != "pattern" || tok[1].rfind("r=", 0) != 0)
      rd.fail("expected 'pattern r=<order>'");
    const long r = to_long(tok[1].substr(2), rd);
    if (r < 2 || r > 64) rd.fail("pattern order out of range");
    WeightedCliquePattern p(static_cast<int>(r));
    PairTable<char> seen(static_cast<int>(r), 0);
    while ((have = rd.next(line))) {
      auto edge = split_ws(line);
      if (!edge.empty() && edge[0] == "pattern") break;
      if (edge.size() != 3) rd.fail("expected '<i> <j> <p>/<q>'");
      const long i = to_long(edge[0], rd), j = to_long(edge[1], rd);
      if (i < 0 || j < 0 || i >= r || j >= r) rd.fail("vertex out of range");
      if (i == j) rd.fail("self-loop");
      if (seen.at(static_cast<int>(i), static_cast<int>(j))) rd.fail("duplicate pair");
      seen.at(static_cast<int>(i), static_cast<int>(j)) = 1;
      Rat v;
      try {
        v = parse_rat(edge[2]);
      } catch (const parse_error& e) {
        rd.fail(e.what());
      }
      if (v < 0 || v > 1) rd.fail("threshold out of [0,1]");
      p.f.at(static_cast<int>(i), static_cast<int>(j)) = v;
    }
    patterns.push_back(std::move(p));
  }
  try {
    return make_family(std::move(patterns), explicit_r_max);
  } catch (const std::domain_error& e) {
    throw parse_error(e.what());
  }
}

ForbiddenFamily parse_family_file(const std::string& path, int explicit_r_max) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  return parse_family(in, explicit_r_max);
}

void write_family(std::ostream& out, const ForbiddenFamily& family) {
  for (const auto& p : family.patterns) {
    out << "pattern r=" << p.r << "\n";
    for (int j = 1; j < p.r; ++j)
      for (int i = 0; i < j; ++i)
        if (p.f.at(i, j) != 0) out << i << " " << j << " " << fmt_rat(p.f.at(i, j)) << "\n";
  }
}

}  // namespace wturan
