#include "wturan/sdpa_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "wturan/errors.hpp"

namespace wturan {

namespace {

Int scaled_to_int(const Rat& r, const Int& scale) {
  Rat v = r * Rat(scale);
  if (v.get_den() != 1) throw std::logic_error("row scaling failed to clear a denominator");
  return v.get_num();
}

}  // namespace

SdpaFile to_sdpa(const SdpInstance& inst, const std::string& name) {
  if (inst.infeasible) throw std::domain_error("cannot export an infeasible instance");
  const int nblocks = static_cast<int>(inst.blocks.size());
  const int ngraphs = static_cast<int>(inst.graphs.size());

  SdpaFile f;
  f.comments.push_back(name.empty() ? std::string("flag density SDP")
                                    : "flag density SDP for " + name);
  {
    std::ostringstream ss;
    ss << ngraphs << " graphs, " << nblocks << " flag blocks";
    f.comments.push_back(ss.str());
  }

  // var 1 is lambda; then the upper triangle of each block, row-major
  f.mdim = 1;
  std::vector<int> var_base(nblocks);
  for (int b = 0; b < nblocks; ++b) {
    const int d = static_cast<int>(inst.blocks[b].flags.size());
    var_base[b] = f.mdim;
    f.mdim += d * (d + 1) / 2;
    f.block_sizes.push_back(d);
  }
  f.block_sizes.push_back(-ngraphs);
  f.costs.assign(f.mdim, Int(0));
  f.costs[0] = 1;

  const int slack = nblocks + 1;
  for (int b = 0; b < nblocks; ++b) {
    const int d = static_cast<int>(inst.blocks[b].flags.size());
    int var = var_base[b];
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) f.entries.push_back({++var, b + 1, i + 1, j + 1, Int(1)});
  }

  for (int g = 0; g < ngraphs; ++g) {
    // clear the graph's constraint row to integers
    std::vector<Rat> row{inst.objective[g]};
    std::vector<std::vector<std::vector<Rat>>> ms;
    for (int b = 0; b < nblocks; ++b) {
      ms.push_back(pair_matrix(inst, b, g));
      const int d = static_cast<int>(inst.blocks[b].flags.size());
      for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) row.push_back((i == j ? 1 : 2) * ms[b][i][j]);
    }
    const Int scale = lcm_denominators(row);

    if (inst.objective[g] != 0)
      f.entries.push_back({0, slack, g + 1, g + 1, scaled_to_int(inst.objective[g], scale)});
    f.entries.push_back({1, slack, g + 1, g + 1, scale});
    for (int b = 0; b < nblocks; ++b) {
      const int d = static_cast<int>(inst.blocks[b].flags.size());
      int var = var_base[b];
      for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
          ++var;
          if (ms[b][i][j] == 0) continue;
          f.entries.push_back({var, slack, g + 1, g + 1,
                               -scaled_to_int((i == j ? 1 : 2) * ms[b][i][j], scale)});
        }
    }
  }

  std::sort(f.entries.begin(), f.entries.end(), [](const SdpaEntry& a, const SdpaEntry& b) {
    return std::tie(a.matno, a.blk, a.i, a.j) < std::tie(b.matno, b.blk, b.i, b.j);
  });
  return f;
}

void write_sdpa(std::ostream& out, const SdpaFile& f) {
  for (const std::string& c : f.comments) out << "\"" << c << "\n";
  out << f.mdim << "\n";
  out << f.block_sizes.size() << "\n";
  out << "{";
  for (size_t b = 0; b < f.block_sizes.size(); ++b) out << (b ? ", " : "") << f.block_sizes[b];
  out << "}\n";
  for (size_t i = 0; i < f.costs.size(); ++i) out << (i ? " " : "") << f.costs[i];
  out << "\n";
  for (const SdpaEntry& e : f.entries)
    out << e.matno << " " << e.blk << " " << e.i << " " << e.j << " " << e.value << "\n";
}

void write_sdpa_file(const std::string& path, const SdpaFile& f) {
  std::ofstream out(path);
  if (!out) throw parse_error("cannot open '" + path + "'");
  write_sdpa(out, f);
}

namespace {

// SDPA uses quote/asterisk comments and decorations like "3 = mDIM", so the
// shared '#' line reader does not fit here.
struct SdpaReader {
  std::istream& in;
  int lineno = 0;
  bool next(std::string& line) {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error("line " + std::to_string(lineno) + ": " + msg);
  }
};

std::vector<std::string> tokens_of(std::string line) {
  for (char& ch : line)
    if (ch == ',' || ch == '{' || ch == '}' || ch == '(' || ch == ')') ch = ' ';
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

long first_long(const std::string& line, SdpaReader& rd) {
  auto tok = tokens_of(line);
  if (tok.empty()) rd.fail("expected an integer");
  size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(tok[0], &pos);
  } catch (const std::exception&) {
    rd.fail("bad integer '" + tok[0] + "'");
  }
  if (pos != tok[0].size()) rd.fail("bad integer '" + tok[0] + "'");
  return v;
}

Int to_int(const std::string& s, SdpaReader& rd) {
  try {
    return Int(s);
  } catch (const std::invalid_argument&) {
    rd.fail("bad integer '" + s + "'");
  }
}

}  // namespace

SdpaFile parse_sdpa(std::istream& in) {
  SdpaReader rd{in};
  SdpaFile f;
  std::string line;

  // header comments, then mdim
  for (;;) {
    if (!rd.next(line)) throw parse_error("missing SDPA header");
    const size_t pos = line.find_first_not_of(" \t");
    if (line[pos] == '"' || line[pos] == '*') {
      std::string c = line.substr(pos + 1);
      while (!c.empty() && (c.back() == '\r' || c.back() == ' ')) c.pop_back();
      while (!c.empty() && (c.front() == ' ' || c.front() == '\t')) c.erase(c.begin());
      f.comments.push_back(c);
      continue;
    }
    break;
  }
  const long mdim = first_long(line, rd);
  if (mdim <= 0) rd.fail("mDIM must be positive");
  f.mdim = static_cast<int>(mdim);

  if (!rd.next(line)) throw parse_error("missing block count");
  const long nblock = first_long(line, rd);
  if (nblock <= 0) rd.fail("nBLOCK must be positive");

  // header rows may carry decorations like "= bLOCKsTRUCT"; read by count
  if (!rd.next(line)) throw parse_error("missing block sizes");
  auto tok = tokens_of(line);
  if (static_cast<long>(tok.size()) < nblock) rd.fail("expected " + std::to_string(nblock) + " block sizes");
  for (long b = 0; b < nblock; ++b) {
    size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(tok[b], &pos);
    } catch (const std::exception&) {
      rd.fail("bad block size '" + tok[b] + "'");
    }
    if (pos != tok[b].size() || v == 0) rd.fail("bad block size '" + tok[b] + "'");
    f.block_sizes.push_back(static_cast<int>(v));
  }

  if (!rd.next(line)) throw parse_error("missing cost row");
  tok = tokens_of(line);
  if (static_cast<long>(tok.size()) < mdim) rd.fail("expected " + std::to_string(mdim) + " costs");
  for (long i = 0; i < mdim; ++i) f.costs.push_back(to_int(tok[i], rd));

  while (rd.next(line)) {
    tok = tokens_of(line);
    if (tok.size() != 5) rd.fail("expected '<matno> <blk> <i> <j> <value>'");
    SdpaEntry e;
    long vals[4];
    for (int t = 0; t < 4; ++t) {
      size_t pos = 0;
      try {
        vals[t] = std::stol(tok[t], &pos);
      } catch (const std::exception&) {
        rd.fail("bad integer '" + tok[t] + "'");
      }
      if (pos != tok[t].size()) rd.fail("bad integer '" + tok[t] + "'");
    }
    e.matno = static_cast<int>(vals[0]);
    e.blk = static_cast<int>(vals[1]);
    e.i = static_cast<int>(vals[2]);
    e.j = static_cast<int>(vals[3]);
    e.value = to_int(tok[4], rd);
    if (e.matno < 0 || e.matno > f.mdim) rd.fail("matrix number out of range");
    if (e.blk < 1 || e.blk > static_cast<int>(f.block_sizes.size())) rd.fail("block out of range");
    const int size = std::abs(f.block_sizes[e.blk - 1]);
    if (e.i < 1 || e.j < 1 || e.i > size || e.j > size) rd.fail("entry index out of range");
    if (e.i > e.j) rd.fail("entries must have i <= j");
    if (f.block_sizes[e.blk - 1] < 0 && e.i != e.j) rd.fail("diagonal block entry off the diagonal");
    f.entries.push_back(e);
  }
  return f;
}

SdpaFile parse_sdpa_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  return parse_sdpa(in);
}

}  // namespace wturan
