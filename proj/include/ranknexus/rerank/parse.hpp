#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ranknexus/core/permutation.hpp"

namespace ranknexus::rerank {

struct RepairEntry {
  enum class Kind {
    kOutOfRange,       // id outside 1..n, dropped
    kDuplicate,        // repeated id, later occurrence dropped
    kMissingAppended,  // id never mentioned, appended in ascending order
  };
  Kind kind;
  // The bracketed value involved (saturated for absurdly long digit runs).
  std::size_t value;
  // 1-based position among the bracketed tokens, 0 for appended ids.
  std::size_t token_position;
};

std::string_view ToString(RepairEntry::Kind k);
std::string Describe(const RepairEntry& e);

using RepairLog = std::vector<RepairEntry>;

struct ParsedRanking {
  Permutation perm;
  RepairLog repairs;
};

/// Reads "[a] > [b] > ..." leniently: bracketed integers are taken in order
/// of appearance wherever they occur, then repaired into a permutation of n
/// (drop out-of-range, keep first occurrence, append missing ascending).
/// Throws Unparseable when no bracketed integer is present, and StrictRepair
/// when `strict` is set and any repair was needed.
ParsedRanking ParseRanking(std::string_view raw, std::size_t n,
                           bool strict = false);

/// Case-insensitive yes/no on the first whitespace-delimited token with
/// surrounding punctuation stripped. Throws Unparseable.
bool ParseYesNo(std::string_view raw);

}  // namespace ranknexus::rerank
