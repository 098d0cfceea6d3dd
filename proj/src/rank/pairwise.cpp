#include "ranknexus/rank/pairwise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ranknexus/error.hpp"

namespace ranknexus::rank {

WinMatrix::WinMatrix(std::size_t n, Mode mode)
    : n_(n), mode_(mode), values_(n * n, 0.0) {}

WinMatrix::WinMatrix(std::size_t n, std::vector<double> values, Mode mode)
    : n_(n), mode_(mode), values_(std::move(values)) {
  if (values_.size() != n_ * n_) {
    throw Error(ErrorCode::kLengthMismatch,
                "win matrix needs " + std::to_string(n_ * n_) + " entries");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) CheckEntry(i, j, (*this)(i, j));
  }
}

void WinMatrix::Set(std::size_t i, std::size_t j, double value) {
  CheckEntry(i, j, value);
  values_[i * n_ + j] = value;
}

void WinMatrix::CheckEntry(std::size_t i, std::size_t j, double value) const {
  if (i >= n_ || j >= n_) {
    throw Error(ErrorCode::kOutOfRange, "win matrix index out of range");
  }
  if (i == j && value != 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "win matrix diagonal must be 0",
                i + 1);
  }
  const bool ok = mode_ == Mode::kStrict
                      ? (value == 0.0 || value == 1.0)
                      : (std::isfinite(value) && value >= 0.0 && value <= 1.0);
  if (!ok) {
    throw Error(ErrorCode::kInvalidArgument,
                "win matrix entry (" + std::to_string(i + 1) + ", " +
                    std::to_string(j + 1) + ") = " + std::to_string(value) +
                    " outside the allowed range");
  }
}

PairwiseRanking PairwiseRank(const WinMatrix& wins) {
  const std::size_t n = wins.size();
  std::vector<std::size_t> counts(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && wins(i, j) > 0.5) ++counts[i];
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{1});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return counts[a - 1] > counts[b - 1];
                   });
  return {std::move(counts), Permutation::FromOneBased(order, n)};
}

}  // namespace ranknexus::rank
