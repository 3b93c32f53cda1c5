#include "wturan/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "wturan/errors.hpp"

namespace wturan {

void SymMatrix::set(int i, int j, const Rat& v) {
  if (v < 0) throw parse_error("matrix entries must be nonnegative");
  a.at(i, j) = v;
}

SymMatrix matrix_from_graph(const WeightedGraph& g) {
  SymMatrix m(g.order());
  for (int j = 1; j < g.order(); ++j)
    for (int i = 0; i < j; ++i) m.a.at(i, j) = g.weight(i, j);
  return m;
}

namespace {

// Solve the (k+1)x(k+1) system  { sum_{i != j} a(K_i,K_j) x_i - g = 0  for j,
// sum x_i = 1 }  exactly. Returns false when singular.
bool solve_equal_degrees(const SymMatrix& a, const std::vector<int>& clique, std::vector<Rat>& x,
                         Rat& g) {
  const int k = static_cast<int>(clique.size());
  const int n = k + 1;
  std::vector<std::vector<Rat>> mat(n, std::vector<Rat>(n + 1, Rat(0)));
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < k; ++i)
      if (i != j) mat[j][i] = a.at(clique[i], clique[j]);
    mat[j][k] = Rat(-1);  // -g
  }
  for (int i = 0; i < k; ++i) mat[k][i] = Rat(1);
  mat[k][n] = Rat(1);

  for (int col = 0, row = 0; col < n; ++col, ++row) {
    int piv = -1;
    for (int r = row; r < n; ++r)
      if (mat[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return false;  // singular
    std::swap(mat[row], mat[piv]);
    const Rat inv = 1 / mat[row][col];
    for (int c = col; c <= n; ++c) mat[row][c] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == row || mat[r][col] == 0) continue;
      const Rat factor = mat[r][col];
      for (int c = col; c <= n; ++c) mat[r][c] -= factor * mat[row][c];
    }
  }
  x.assign(k, Rat(0));
  for (int i = 0; i < k; ++i) x[i] = mat[i][n];
  g = mat[k][n];
  return true;
}

bool better_candidate(const Rat& g, const std::vector<int>& support, const LagrangianResult& best) {
  if (g != best.value) return g > best.value;
  return std::lexicographical_compare(support.begin(), support.end(), best.support.begin(),
                                      best.support.end());
}

}  // namespace

LagrangianResult lagrangian_exact(const SymMatrix& a, int guard) {
  const int m = a.m;
  if (m < 1) throw std::domain_error("lagrangian on empty matrix");
  if (m > guard || m > 31)
    throw capacity_error("lagrangian_exact: m = " + std::to_string(m) + " exceeds guard " +
                         std::to_string(std::min(guard, 31)));

  std::vector<uint32_t> nbr(m, 0);
  for (int j = 1; j < m; ++j)
    for (int i = 0; i < j; ++i)
      if (a.at(i, j) > 0) {
        nbr[i] |= uint32_t(1) << j;
        nbr[j] |= uint32_t(1) << i;
      }

  LagrangianResult best;
  best.value = Rat(0);
  best.support = {0};
  best.x = {Rat(1)};

  std::vector<int> clique;
  std::vector<Rat> x;
  Rat g;
  // cliques of the positivity graph, extended in increasing vertex order
  auto extend = [&](auto&& self, uint32_t candidates) -> void {
    uint32_t rest = candidates;
    while (rest) {
      const int v = __builtin_ctz(rest);
      rest &= rest - 1;
      clique.push_back(v);
      if (clique.size() >= 2 && solve_equal_degrees(a, clique, x, g)) {
        bool positive = std::all_of(x.begin(), x.end(), [](const Rat& xi) { return xi > 0; });
        if (positive && better_candidate(g, clique, best)) {
          best.value = g;
          best.support = clique;
          best.x = x;
        }
      }
      self(self, candidates & nbr[v] & ~((uint32_t(1) << (v + 1)) - 1));
      clique.pop_back();
    }
  };
  extend(extend, (uint32_t(1) << m) - 1);

  best.kkt_verified = kkt_check(a, best);
  return best;
}

bool kkt_check(const SymMatrix& a, const LagrangianResult& r) {
  const int m = a.m;
  if (r.support.size() != r.x.size() || r.support.empty()) return false;
  Rat sum(0);
  for (const Rat& xi : r.x) {
    if (xi <= 0) return false;
    sum += xi;
  }
  if (sum != 1) return false;
  std::vector<bool> on(m, false);
  for (int v : r.support) {
    if (v < 0 || v >= m) return false;
    on[v] = true;
  }
  for (int j = 0; j < m; ++j) {
    Rat deg(0);
    for (size_t idx = 0; idx < r.support.size(); ++idx) {
      const int i = r.support[idx];
      if (i != j) deg += a.at(i, j) * r.x[idx];
    }
    if (on[j]) {
      if (deg != r.value) return false;
    } else {
      if (deg > r.value) return false;
    }
  }
  return true;
}

ReplicatorResult lagrangian_replicator(const SymMatrix& a, long max_iter, double tol,
                                       int extra_starts) {
  const int m = a.m;
  if (m < 1) throw std::domain_error("replicator on empty matrix");
  std::vector<std::vector<double>> ad(m, std::vector<double>(m, 0.0));
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i)
      if (i != j) ad[i][j] = a.at(i, j).get_d();

  auto run = [&](std::vector<double> x) {
    ReplicatorResult res;
    std::vector<double> y(m);
    double prev = -1.0;
    long it = 0;
    for (; it < max_iter; ++it) {
      double v = 0.0;
      for (int i = 0; i < m; ++i) {
        double s = 0.0;
        for (int j = 0; j < m; ++j) s += ad[i][j] * x[j];
        y[i] = s;
        v += x[i] * s;
      }
      if (v <= 0.0) {
        res.value = 0.0;
        break;
      }
      res.value = v;
      if (tol > 0.0 && it > 0 && std::fabs(v - prev) <= tol) break;
      prev = v;
      double norm = 0.0;
      for (int i = 0; i < m; ++i) {
        x[i] *= y[i] / v;
        norm += x[i];
      }
      for (int i = 0; i < m; ++i) x[i] /= norm;  // curb drift
    }
    res.x = std::move(x);
    res.iterations = it;
    return res;
  };

  ReplicatorResult best = run(std::vector<double>(m, 1.0 / m));
  for (int s = 0; s < extra_starts; ++s) {
    std::vector<double> x(m, 0.1 / m);
    x[s % m] += 0.9;
    double norm = 0.0;
    for (double xi : x) norm += xi;
    for (double& xi : x) xi /= norm;
    ReplicatorResult r = run(std::move(x));
    if (r.value > best.value) best = std::move(r);
  }
  return best;
}

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

}  // namespace

SymMatrix parse_matrix(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto next = [&](std::string& l) {
    while (std::getline(in, l)) {
      ++lineno;
      size_t pos = l.find_first_not_of(" \t\r");
      if (pos != std::string::npos && l[pos] != '#') return true;
    }
    return false;
  };
  auto fail = [&](const std::string& msg) -> void {
    throw parse_error("line " + std::to_string(lineno) + ": " + msg);
  };

  if (!next(line)) throw parse_error("empty matrix file");
  auto head = tokens_of(line);
  if (head.size() != 2 || head[0] != "m") fail("expected header 'm <dim>'");
  int m = 0;
  try {
    m = std::stoi(head[1]);
  } catch (const std::exception&) {
    fail("bad dimension");
  }
  if (m < 1) fail("dimension must be positive");

  std::vector<std::vector<Rat>> rows;
  for (int r = 0; r < m; ++r) {
    if (!next(line)) fail("expected " + std::to_string(m) + " matrix rows");
    auto tok = tokens_of(line);
    if (static_cast<int>(tok.size()) != m) fail("row needs " + std::to_string(m) + " entries");
    std::vector<Rat> row;
    for (const auto& t : tok) {
      try {
        row.push_back(parse_rat(t));
      } catch (const parse_error& e) {
        fail(e.what());
      }
    }
    rows.push_back(std::move(row));
  }
  SymMatrix a(m);
  for (int i = 0; i < m; ++i) {
    if (rows[i][i] != 0) throw parse_error("nonzero diagonal at row " + std::to_string(i));
    for (int j = 0; j < m; ++j) {
      if (rows[i][j] != rows[j][i])
        throw parse_error("asymmetric entries at " + std::to_string(i) + "," + std::to_string(j));
      if (rows[i][j] < 0) throw parse_error("negative entry");
      if (i < j) a.a.at(i, j) = rows[i][j];
    }
  }
  return a;
}

SymMatrix parse_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  return parse_matrix(in);
}

void write_matrix(std::ostream& out, const SymMatrix& a) {
  out << "m " << a.m << "\n";
  for (int i = 0; i < a.m; ++i) {
    for (int j = 0; j < a.m; ++j) {
      if (j) out << " ";
      out << fmt_rat(a.at(i, j));
    }
    out << "\n";
  }
}

}  // namespace wturan
