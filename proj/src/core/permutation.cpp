#include "ranknexus/core/permutation.hpp"

#include <numeric>

namespace ranknexus {

Permutation Permutation::FromOneBased(std::span<const std::size_t> order,
                                      std::size_t n) {
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> zero_based;
  zero_based.reserve(order.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::size_t v = order[pos];
    if (v < 1 || v > n) {
      throw Error(ErrorCode::kOutOfRange,
                  "index " + std::to_string(v) + " outside 1.." +
                      std::to_string(n),
                  pos + 1);
    }
    if (seen[v - 1]) {
      throw Error(ErrorCode::kDuplicateIndex,
                  "index " + std::to_string(v) + " repeated", pos + 1);
    }
    seen[v - 1] = true;
    zero_based.push_back(v - 1);
  }
  if (order.size() != n) {
    throw Error(ErrorCode::kWrongLength,
                "expected " + std::to_string(n) + " indices, got " +
                    std::to_string(order.size()),
                order.size() + 1);
  }
  return Permutation(std::move(zero_based));
}

Permutation Permutation::Identity(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return Permutation(std::move(v));
}

std::vector<std::size_t> Permutation::OneBased() const {
  std::vector<std::size_t> out(order_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) out[i] = order_[i] + 1;
  return out;
}

Permutation Permutation::Inverse() const { return Permutation(Ranks()); }

std::vector<std::size_t> Permutation::Ranks() const {
  std::vector<std::size_t> ranks(order_.size());
  for (std::size_t pos = 0; pos < order_.size(); ++pos) {
    ranks[order_[pos]] = pos;
  }
  return ranks;
}

std::string Permutation::Render() const {
  std::string out;
  for (std::size_t i = 0; i < order_.size(); ++i) {
    if (i > 0) out += " > ";
    out += '[';
    out += std::to_string(order_[i] + 1);
    out += ']';
  }
  return out;
}

}  // namespace ranknexus
