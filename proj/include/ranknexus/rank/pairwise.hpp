#pragma once

#include <cstddef>
#include <vector>

#include "ranknexus/core/permutation.hpp"

namespace ranknexus::rank {

/// wins(i, j) = 1 when candidate i was judged more relevant than j. Strict
/// matrices hold {0, 1}; probabilistic ones hold P(i beats j) in [0, 1].
class WinMatrix {
 public:
  enum class Mode { kStrict, kProbabilistic };

  WinMatrix(std::size_t n, Mode mode = Mode::kStrict);
  /// Row-major n*n values; validated (zero diagonal, range per mode).
  WinMatrix(std::size_t n, std::vector<double> values,
            Mode mode = Mode::kStrict);

  std::size_t size() const { return n_; }
  Mode mode() const { return mode_; }
  double operator()(std::size_t i, std::size_t j) const {
    return values_[i * n_ + j];
  }
  /// 0-based indices. Throws InvalidArgument on diagonal or range errors.
  void Set(std::size_t i, std::size_t j, double value);

 private:
  void CheckEntry(std::size_t i, std::size_t j, double value) const;

  std::size_t n_;
  Mode mode_;
  std::vector<double> values_;
};

struct PairwiseRanking {
  std::vector<std::size_t> win_counts;
  Permutation perm;
};

/// Counts wins with a strict > 0.5 threshold (exactly 0.5 is not a win),
/// then orders candidates by count descending with a stable sort.
PairwiseRanking PairwiseRank(const WinMatrix& wins);

}  // namespace ranknexus::rank
