#include "wturan/flag_sdp.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "wturan/errors.hpp"

#include "line_reader.hpp"

namespace wturan {

void DensityProblem::validate() const {
  if (N < 3 || N > 5) throw std::domain_error("window order must be in [3,5]");
  if (k < 1 || k > 8) throw std::domain_error("color count must be in [1,8]");
  if (static_cast<int>(u.size()) != k) throw std::domain_error("objective size must equal color count");
  if (u[0] != 0) throw std::domain_error("color 1 must have objective coefficient 0");
  for (const ColoredGraph& f : forbidden) {
    if (f.order() > N) throw std::domain_error("forbidden pattern larger than the window");
    if (f.colors() > k) throw std::domain_error("forbidden pattern uses colors outside the palette");
  }
}

namespace {

ColoredGraph mono_triangle(int k, int color) {
  ColoredGraph t(3, k);
  t.set_color(0, 1, color);
  t.set_color(0, 2, color);
  t.set_color(1, 2, color);
  return t;
}

}  // namespace

DensityProblem mantel_problem() {
  DensityProblem p;
  p.k = 2;
  p.N = 3;
  p.u = {Rat(0), Rat(1)};
  p.forbidden = {mono_triangle(2, 2)};
  return p;
}

DensityProblem mantel_problem_n4() {
  DensityProblem p = mantel_problem();
  p.N = 4;
  return p;
}

DensityProblem case_problem(const CaseId& c) {
  const DiscretizationTable table = discretization(c);
  DensityProblem p;
  p.k = static_cast<int>(table.rows.size());
  p.N = (c.kind == CaseKind::rho411) ? 5 : 4;
  for (const TableRow& row : table.rows) p.u.push_back(row.upper);
  // Patterns larger than the window cannot be seen by it; dropping them only
  // enlarges the admissible set, so the bound stays valid.
  for (const ColoredGraph& f : colored_forbidden_set(c))
    if (f.order() <= p.N) p.forbidden.push_back(f);
  return p;
}

Rat obj_value(const ColoredGraph& g, const std::vector<Rat>& u) {
  const int n = g.order();
  if (n < 2) return Rat(0);
  Rat s(0);
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      const int c = g.color(i, j);
      if (c > static_cast<int>(u.size())) throw std::domain_error("objective does not cover the palette");
      s += u[c - 1];
    }
  return s / frac(static_cast<long>(n) * (n - 1), 2);
}

namespace {

// the type plus one extension vertex colored by the flag vector
ColoredGraph extend_type(const ColoredGraph& type, const std::vector<int>& flag) {
  const int s = type.order();
  ColoredGraph ext(s + 1, type.colors());
  for (int j = 1; j < s; ++j)
    for (int i = 0; i < j; ++i) ext.set_color(i, j, type.color(i, j));
  for (int i = 0; i < s; ++i) ext.set_color(i, s, flag[i]);
  return ext;
}

bool avoids_all(const ColoredGraph& g, const std::vector<ColoredGraph>& forbidden) {
  for (const ColoredGraph& f : forbidden)
    if (contains_colored(g, f)) return false;
  return true;
}

}  // namespace

SdpInstance build_sdp(const DensityProblem& problem) {
  problem.validate();
  SdpInstance inst;
  inst.problem = problem;
  inst.graphs = enumerate_colored(problem.N, problem.k, problem.forbidden);
  if (inst.graphs.empty()) {
    inst.infeasible = true;
    return inst;
  }
  for (const ColoredGraph& g : inst.graphs) inst.objective.push_back(obj_value(g, problem.u));

  const int s = problem.N - 2;
  for (const ColoredGraph& type : enumerate_colored(s, problem.k, problem.forbidden)) {
    FlagBlock block{type, {}};
    std::vector<int> flag(s, 1);
    for (;;) {
      if (avoids_all(extend_type(type, flag), problem.forbidden)) block.flags.push_back(flag);
      int pos = s - 1;
      while (pos >= 0 && flag[pos] == problem.k) flag[pos--] = 1;
      if (pos < 0) break;
      ++flag[pos];
    }
    if (!block.flags.empty()) inst.blocks.push_back(block);
  }
  return inst;
}

std::vector<std::vector<Rat>> pair_matrix(const SdpInstance& inst, int block, int graph) {
  const FlagBlock& b = inst.blocks.at(block);
  const ColoredGraph& g = inst.graphs.at(graph);
  const int N = g.order(), s = b.type.order();
  const int dim = static_cast<int>(b.flags.size());

  std::map<std::vector<int>, int> index;
  for (int f = 0; f < dim; ++f) index[b.flags[f]] = f;

  std::vector<std::vector<Rat>> m(dim, std::vector<Rat>(dim, Rat(0)));
  long injections = 1;
  for (int i = 0; i < s; ++i) injections *= N - i;
  const Rat norm = frac(1, injections * 2);

  // ordered injections of the type vertices; the two leftover vertices give
  // the (ordered) flag pair
  std::vector<int> theta(s);
  std::vector<char> used(N, 0);
  auto flag_of = [&](int v) {
    std::vector<int> f(s);
    for (int i = 0; i < s; ++i) f[i] = g.color(theta[i], v);
    return f;
  };
  auto place = [&](auto&& self, int pos) -> void {
    if (pos == s) {
      std::vector<int> rest;
      for (int v = 0; v < N; ++v)
        if (!used[v]) rest.push_back(v);
      const int f1 = index.at(flag_of(rest[0]));
      const int f2 = index.at(flag_of(rest[1]));
      m[f1][f2] += norm;
      m[f2][f1] += norm;
      return;
    }
    for (int v = 0; v < N; ++v) {
      if (used[v]) continue;
      bool ok = true;
      for (int i = 0; i < pos && ok; ++i)
        ok = g.color(theta[i], v) == b.type.color(i, pos);
      if (!ok) continue;
      theta[pos] = v;
      used[v] = 1;
      self(self, pos + 1);
      used[v] = 0;
    }
  };
  place(place, 0);
  return m;
}

namespace {

// Fraction-exact LDL^T with symmetric max-diagonal pivoting. Returns an
// explanation when the matrix is not PSD, nullopt when it is.
std::optional<std::string> ldlt_reject_reason(std::vector<std::vector<Rat>> a) {
  const int n = static_cast<int>(a.size());
  std::vector<int> orig(n);
  for (int i = 0; i < n; ++i) orig[i] = i;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (a[i][j] != a[j][i])
        return "not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")";

  for (int step = 0; step < n; ++step) {
    int best = step;
    for (int r = step + 1; r < n; ++r)
      if (a[r][r] > a[best][best]) best = r;
    if (a[best][best] < 0)
      return "diagonal pivot for row " + std::to_string(orig[best]) + " is negative (" +
             fmt_rat(a[best][best]) + ")";
    if (a[best][best] == 0) {
      // every remaining diagonal is zero, so any remaining off-diagonal
      // entry gives a negative 2x2 principal minor
      for (int r = step; r < n; ++r)
        for (int c = step; c < n; ++c)
          if (a[r][c] != 0)
            return "zero pivot but residual entry (" + std::to_string(orig[r]) + "," +
                   std::to_string(orig[c]) + ") is " + fmt_rat(a[r][c]);
      return std::nullopt;
    }
    if (best != step) {
      std::swap(a[best], a[step]);
      for (int r = 0; r < n; ++r) std::swap(a[r][best], a[r][step]);
      std::swap(orig[best], orig[step]);
    }
    const Rat d = a[step][step];
    for (int r = step + 1; r < n; ++r)
      for (int c = step + 1; c < n; ++c) a[r][c] -= a[r][step] * a[c][step] / d;
  }
  return std::nullopt;
}

Rat inner(const std::vector<std::vector<Rat>>& q, const std::vector<std::vector<Rat>>& m) {
  Rat s(0);
  for (size_t i = 0; i < q.size(); ++i)
    for (size_t j = 0; j < q.size(); ++j) s += q[i][j] * m[i][j];
  return s;
}

}  // namespace

VerifyResult verify_certificate(const SdpInstance& inst, const Certificate& cert) {
  if (cert.q.size() != inst.blocks.size())
    return {false, "certificate has " + std::to_string(cert.q.size()) + " blocks, instance has " +
                       std::to_string(inst.blocks.size())};
  for (size_t b = 0; b < cert.q.size(); ++b) {
    const size_t dim = inst.blocks[b].flags.size();
    bool shaped = cert.q[b].size() == dim;
    for (const auto& row : cert.q[b]) shaped = shaped && row.size() == dim;
    if (!shaped) return {false, "block " + std::to_string(b) + " has the wrong shape"};
  }
  for (size_t b = 0; b < cert.q.size(); ++b)
    if (auto why = ldlt_reject_reason(cert.q[b]))
      return {false, "block " + std::to_string(b) + " is not PSD: " + *why};

  for (size_t g = 0; g < inst.graphs.size(); ++g) {
    Rat slack = cert.lambda - inst.objective[g];
    for (size_t b = 0; b < inst.blocks.size(); ++b)
      slack -= inner(cert.q[b], pair_matrix(inst, static_cast<int>(b), static_cast<int>(g)));
    if (slack < 0)
      return {false, "graph " + std::to_string(g) + " (" + inst.graphs[g].key() +
                         ") violates the bound by " + fmt_rat(-slack)};
  }
  return {true, ""};
}

Certificate round_solution(const SdpInstance& inst,
                           const std::vector<std::vector<std::vector<double>>>& numeric,
                           const Int& denominator_limit) {
  if (numeric.size() != inst.blocks.size())
    throw std::domain_error("numeric solution has the wrong block count");
  if (denominator_limit < 1) throw std::domain_error("denominator limit must be positive");

  Certificate cert;
  for (size_t b = 0; b < numeric.size(); ++b) {
    const size_t dim = inst.blocks[b].flags.size();
    if (numeric[b].size() != dim) throw std::domain_error("numeric block " + std::to_string(b) + " has the wrong shape");
    for (const auto& row : numeric[b])
      if (row.size() != dim) throw std::domain_error("numeric block " + std::to_string(b) + " has the wrong shape");

    std::vector<std::vector<Rat>> q(dim, std::vector<Rat>(dim));
    for (size_t i = 0; i < dim; ++i)
      for (size_t j = i; j < dim; ++j) {
        const Rat avg = (Rat(numeric[b][i][j]) + Rat(numeric[b][j][i])) / 2;
        q[i][j] = q[j][i] = best_approx(avg, denominator_limit);
      }

    if (ldlt_reject_reason(q)) {
      // repair by the smallest diagonal shift, located by exact bisection
      auto shifted_ok = [&](const Rat& t) {
        auto copy = q;
        for (size_t i = 0; i < dim; ++i) copy[i][i] += t;
        return !ldlt_reject_reason(copy).has_value();
      };
      Rat lo(0), hi(1);
      while (!shifted_ok(hi)) {
        lo = hi;
        hi *= 2;  // bounded by the largest absolute row sum, so this stops
      }
      const Int granularity = Int(1) << 60;
      const Rat eps = Rat(1) / Rat(granularity);
      while (hi - lo > eps) {
        Rat mid = (lo + hi) / 2;
        if (shifted_ok(mid))
          hi = mid;
        else
          lo = mid;
      }
      for (size_t i = 0; i < dim; ++i) q[i][i] += hi;
    }
    cert.q.push_back(std::move(q));
  }

  // exact tightest bound for these blocks
  cert.lambda = Rat(0);
  for (size_t g = 0; g < inst.graphs.size(); ++g) {
    Rat bound = inst.objective[g];
    for (size_t b = 0; b < inst.blocks.size(); ++b)
      bound += inner(cert.q[b], pair_matrix(inst, static_cast<int>(b), static_cast<int>(g)));
    if (g == 0 || bound > cert.lambda) cert.lambda = bound;
  }
  return cert;
}

Certificate parse_certificate(std::istream& in) {
  LineReader rd{in};
  std::string line;
  if (!rd.next(line)) throw parse_error("empty certificate file");
  auto tok = split_ws(line);
  if (tok.size() != 2 || tok[0] != "lambda") rd.fail("expected 'lambda <p/q>'");
  Certificate cert;
  try {
    cert.lambda = parse_rat(tok[1]);
  } catch (const parse_error& e) {
    rd.fail(e.what());
  }
  while (rd.next(line)) {
    tok = split_ws(line);
    if (tok.size() != 3 || tok[0] != "block") rd.fail("expected 'block <id> <dim>'");
    const long id = to_long(tok[1], rd), dim = to_long(tok[2], rd);
    if (id != static_cast<long>(cert.q.size())) rd.fail("block ids must run 0,1,2,...");
    if (dim <= 0) rd.fail("block dimension must be positive");
    std::vector<std::vector<Rat>> q;
    for (long r = 0; r < dim; ++r) {
      if (!rd.next(line)) throw parse_error("block " + tok[1] + " is truncated");
      auto row = split_ws(line);
      if (static_cast<long>(row.size()) != dim) rd.fail("expected " + tok[2] + " entries");
      std::vector<Rat> vals;
      for (const std::string& s : row) {
        try {
          vals.push_back(parse_rat(s));
        } catch (const parse_error& e) {
          rd.fail(e.what());
        }
      }
      q.push_back(std::move(vals));
    }
    cert.q.push_back(std::move(q));
  }
  return cert;
}

Certificate parse_certificate_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  return parse_certificate(in);
}

void write_certificate(std::ostream& out, const Certificate& cert) {
  out << "lambda " << fmt_rat(cert.lambda) << "\n";
  for (size_t b = 0; b < cert.q.size(); ++b) {
    out << "block " << b << " " << cert.q[b].size() << "\n";
    for (const auto& row : cert.q[b]) {
      for (size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << fmt_rat(row[j]);
      out << "\n";
    }
  }
}

std::vector<std::vector<std::vector<double>>> parse_numeric_solution(std::istream& in) {
  LineReader rd{in};
  std::string line;
  std::vector<std::vector<std::vector<double>>> blocks;
  while (rd.next(line)) {
    auto tok = split_ws(line);
    if (tok.size() != 3 || tok[0] != "block") rd.fail("expected 'block <id> <dim>'");
    const long id = to_long(tok[1], rd), dim = to_long(tok[2], rd);
    if (id != static_cast<long>(blocks.size())) rd.fail("block ids must run 0,1,2,...");
    if (dim <= 0) rd.fail("block dimension must be positive");
    std::vector<std::vector<double>> q;
    for (long r = 0; r < dim; ++r) {
      if (!rd.next(line)) throw parse_error("block " + tok[1] + " is truncated");
      auto row = split_ws(line);
      if (static_cast<long>(row.size()) != dim) rd.fail("expected " + tok[2] + " entries");
      std::vector<double> vals;
      for (const std::string& s : row) {
        size_t pos = 0;
        double v = 0;
        try {
          v = std::stod(s, &pos);
        } catch (const std::exception&) {
          rd.fail("bad number '" + s + "'");
        }
        if (pos != s.size()) rd.fail("bad number '" + s + "'");
        vals.push_back(v);
      }
      q.push_back(std::move(vals));
    }
    if (q.empty()) rd.fail("empty block");
    blocks.push_back(std::move(q));
  }
  if (blocks.empty()) throw parse_error("empty numeric solution file");
  return blocks;
}

std::vector<std::vector<std::vector<double>>> parse_numeric_solution_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  return parse_numeric_solution(in);
}

}  // namespace wturan
