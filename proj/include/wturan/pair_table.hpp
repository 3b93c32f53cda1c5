#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace wturan {

// Triangular table over unordered pairs of [0,n). Pairs are stored in
// vertex-completion order (0,1),(0,2),(1,2),(0,3),(1,3),(2,3),... so that the
// first C(c,2) slots are exactly the pairs inside the first c vertices; the
// canonical-prefix searches rely on that.
template <class T>
class PairTable {
 public:
  PairTable() = default;
  explicit PairTable(int n, const T& init = T{}) : n_(n), v_(pair_count(n), init) {}

  int order() const { return n_; }
  static std::size_t pair_count(int n) { return static_cast<std::size_t>(n) * (n - 1) / 2; }

  T& at(int i, int j) { return v_[index(i, j)]; }
  const T& at(int i, int j) const { return v_[index(i, j)]; }

  std::vector<T>& raw() { return v_; }
  const std::vector<T>& raw() const { return v_; }

  std::size_t index(int i, int j) const {
    if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_) throw std::out_of_range("pair index");
    if (i > j) std::swap(i, j);
    return static_cast<std::size_t>(j) * (j - 1) / 2 + i;
  }

  // pair at a given slot, inverse of index()
  static std::pair<int, int> pair_at(std::size_t idx) {
    int j = 1;
    while (pair_count(j + 1) <= idx) ++j;
    return {static_cast<int>(idx - pair_count(j)), j};
  }

  friend bool operator==(const PairTable& a, const PairTable& b) {
    return a.n_ == b.n_ && a.v_ == b.v_;
  }

 private:
  int n_ = 0;
  std::vector<T> v_;
};

}  // namespace wturan
