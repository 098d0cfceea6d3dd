#include "ranknexus/rerank/parse.hpp"

#include <cctype>
#include <limits>

#include "ranknexus/error.hpp"

namespace ranknexus::rerank {

std::string_view ToString(RepairEntry::Kind k) {
  switch (k) {
    case RepairEntry::Kind::kOutOfRange: return "out_of_range";
    case RepairEntry::Kind::kDuplicate: return "duplicate";
    case RepairEntry::Kind::kMissingAppended: return "missing_appended";
  }
  return "unknown";
}

std::string Describe(const RepairEntry& e) {
  std::string out(ToString(e.kind));
  out += " [" + std::to_string(e.value) + "]";
  if (e.token_position > 0) {
    out += " at token " + std::to_string(e.token_position);
  }
  return out;
}

namespace {

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)); }
bool IsDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

// Every "[ <digits> ]" in order; whitespace inside the brackets is allowed.
std::vector<std::size_t> BracketedIntegers(std::string_view raw) {
  constexpr std::size_t kSaturated = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> out;
  std::size_t i = 0;
  while (i < raw.size()) {
    if (raw[i] != '[') {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < raw.size() && IsSpace(raw[j])) ++j;
    const std::size_t digits_begin = j;
    std::size_t value = 0;
    while (j < raw.size() && IsDigit(raw[j])) {
      const std::size_t d = static_cast<std::size_t>(raw[j] - '0');
      value = (value > (kSaturated - d) / 10) ? kSaturated : value * 10 + d;
      ++j;
    }
    const bool has_digits = j > digits_begin;
    while (j < raw.size() && IsSpace(raw[j])) ++j;
    if (has_digits && j < raw.size() && raw[j] == ']') {
      out.push_back(value);
      i = j + 1;
    } else {
      // Resume right after this '[' so a nested "[[3]" still yields 3.
      ++i;
    }
  }
  return out;
}

}  // namespace

ParsedRanking ParseRanking(std::string_view raw, std::size_t n, bool strict) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  const auto tokens = BracketedIntegers(raw);
  if (tokens.empty()) {
    throw Error(ErrorCode::kUnparseable,
                "no bracketed integer in model output");
  }
  ParsedRanking out;
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    const std::size_t v = tokens[t];
    if (v < 1 || v > n) {
      out.repairs.push_back({RepairEntry::Kind::kOutOfRange, v, t + 1});
    } else if (seen[v - 1]) {
      out.repairs.push_back({RepairEntry::Kind::kDuplicate, v, t + 1});
    } else {
      seen[v - 1] = true;
      order.push_back(v);
    }
  }
  for (std::size_t v = 1; v <= n; ++v) {
    if (!seen[v - 1]) {
      out.repairs.push_back({RepairEntry::Kind::kMissingAppended, v, 0});
      order.push_back(v);
    }
  }
  if (strict && !out.repairs.empty()) {
    throw Error(ErrorCode::kStrictRepair,
                "ranking needed " + std::to_string(out.repairs.size()) +
                    " repairs, first: " + Describe(out.repairs.front()));
  }
  out.perm = Permutation::FromOneBased(order, n);
  return out;
}

bool ParseYesNo(std::string_view raw) {
  std::size_t b = 0;
  while (b < raw.size() && IsSpace(raw[b])) ++b;
  std::size_t e = b;
  while (e < raw.size() && !IsSpace(raw[e])) ++e;
  auto is_punct = [](char c) {
    return std::ispunct(static_cast<unsigned char>(c)) != 0;
  };
  std::size_t tb = b, te = e;
  while (tb < te && is_punct(raw[tb])) ++tb;
  while (te > tb && is_punct(raw[te - 1])) --te;
  std::string token;
  for (std::size_t i = tb; i < te; ++i) {
    token += static_cast<char>(std::tolower(static_cast<unsigned char>(raw[i])));
  }
  if (token == "yes") return true;
  if (token == "no") return false;
  throw Error(ErrorCode::kUnparseable,
              "expected Yes or No, got '" + std::string(raw.substr(b, e - b)) +
                  "'");
}

}  // namespace ranknexus::rerank
