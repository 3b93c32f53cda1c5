#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wturan/flag_sdp.hpp"
#include "wturan/rational.hpp"

namespace wturan {

// One coefficient of a sparse SDPA problem: entry (i,j) of the blk-th block
// of constraint matrix matno (0 = the constant side).
struct SdpaEntry {
  int matno = 0;
  int blk = 0;
  int i = 0;
  int j = 0;
  Int value;

  friend bool operator==(const SdpaEntry& a, const SdpaEntry& b) {
    return a.matno == b.matno && a.blk == b.blk && a.i == b.i && a.j == b.j && a.value == b.value;
  }
};

// Sparse SDPA problem (the .dat-s layout): minimize costs . x subject to
// sum_i x_i F_i - F_0 being PSD blockwise. Negative block sizes mark
// diagonal blocks. All values integral.
struct SdpaFile {
  std::vector<std::string> comments;  // stored without the leading quote
  int mdim = 0;
  std::vector<int> block_sizes;
  std::vector<Int> costs;
  std::vector<SdpaEntry> entries;  // sorted by (matno, blk, i, j)

  friend bool operator==(const SdpaFile& a, const SdpaFile& b) {
    return a.comments == b.comments && a.mdim == b.mdim && a.block_sizes == b.block_sizes &&
           a.costs == b.costs && a.entries == b.entries;
  }
};

/// Encode the instance: variables are lambda followed by the upper triangle
/// of every flag block (row-major); one PSD block per flag block pins the
/// block to its variables, and a diagonal slack block holds one row per
/// admissible graph, cleared to integers by each row's denominator lcm.
/// Deterministic output; errors on an infeasible instance.
SdpaFile to_sdpa(const SdpInstance& inst, const std::string& name = "");

void write_sdpa(std::ostream& out, const SdpaFile& f);
void write_sdpa_file(const std::string& path, const SdpaFile& f);

/// Accepts the written layout plus common decorations ("=" annotations on
/// header lines, commas or braces in the block line, '*' comments).
SdpaFile parse_sdpa(std::istream& in);
SdpaFile parse_sdpa_file(const std::string& path);

}  // namespace wturan
