#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ranknexus/error.hpp"

namespace ranknexus {

/// A bijection on {1..n}. Indices are 1-based at every public boundary;
/// `index0` gives the 0-based view for internal indexing.
class Permutation {
 public:
  Permutation() = default;

  /// Validates `order` as a bijection on {1..n}.
  /// Throws DuplicateIndex / OutOfRange / WrongLength naming the 1-based
  /// position of the first offending entry.
  static Permutation FromOneBased(std::span<const std::size_t> order,
                                  std::size_t n);
  static Permutation Identity(std::size_t n);

  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }

  /// 1-based candidate index at 0-based rank position `pos`.
  std::size_t operator[](std::size_t pos) const { return order_[pos] + 1; }
  std::size_t index0(std::size_t pos) const { return order_[pos]; }

  std::vector<std::size_t> OneBased() const;
  Permutation Inverse() const;
  /// 0-based rank position of each 0-based candidate index.
  std::vector<std::size_t> Ranks() const;

  /// "[a] > [b] > ..." in the listwise output grammar.
  std::string Render() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<std::size_t> zero_based)
      : order_(std::move(zero_based)) {}

  std::vector<std::size_t> order_;
};

inline Permutation ValidatePermutation(std::span<const std::size_t> order,
                                       std::size_t n) {
  return Permutation::FromOneBased(order, n);
}

inline Permutation IdentityPermutation(std::size_t n) {
  return Permutation::Identity(n);
}

/// output[i] = items[perm[i]] (1-based perm). Throws LengthMismatch.
template <typename T>
std::vector<T> ApplyPermutation(std::span<const T> items,
                                const Permutation& perm) {
  if (items.size() != perm.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "apply_permutation: " + std::to_string(items.size()) +
                    " items vs permutation of size " +
                    std::to_string(perm.size()));
  }
  std::vector<T> out;
  out.reserve(items.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    out.push_back(items[perm.index0(i)]);
  }
  return out;
}

template <typename T>
std::vector<T> ApplyPermutation(const std::vector<T>& items,
                                const Permutation& perm) {
  return ApplyPermutation(std::span<const T>(items), perm);
}

}  // namespace ranknexus
