#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

namespace ranknexus::eval {

struct Judgment {
  std::string query_id;
  std::string doc_id;
  int grade = 0;
};

/// Graded relevance judgments. File order is kept so canonical files
/// round-trip byte for byte.
class Qrels {
 public:
  /// Strict mode rejects a repeated (query, doc) key; otherwise the last
  /// grade wins. Negative grades are always rejected.
  void Add(Judgment j, bool strict = true);

  std::optional<int> Grade(const std::string& query_id,
                           const std::string& doc_id) const;
  /// doc id -> grade for one query; empty when unjudged.
  const std::unordered_map<std::string, int>& ForQuery(
      const std::string& query_id) const;
  /// Query ids in sorted order.
  std::vector<std::string> QueryIds() const;

  const std::vector<Judgment>& judgments() const { return entries_; }

  // Optional query -> group key used by macro aggregation.
  std::map<std::string, std::string> group_of;

 private:
  std::vector<Judgment> entries_;
  std::map<std::string, std::unordered_map<std::string, int>> by_query_;
  std::map<std::pair<std::string, std::string>, std::size_t> position_;
};

struct RunEntry {
  std::string query_id;
  std::string doc_id;
  std::size_t rank = 0;  // 1-based
  double score = 0.0;
  std::string tag;
};

/// query id -> entries sorted by rank.
using RunByQuery = std::map<std::string, std::vector<RunEntry>>;

/// `qid iter docid grade` per line. Throws MalformedLine with the line
/// number, InvariantViolation for duplicates in strict mode.
Qrels ReadQrels(std::istream& in, bool strict = true);
Qrels ReadQrels(const std::filesystem::path& path, bool strict = true);
void WriteQrels(const Qrels& qrels, std::ostream& out);
void WriteQrels(const Qrels& qrels, const std::filesystem::path& path);

/// `qid group` per line, attached to qrels.group_of.
void ReadGroups(std::istream& in, Qrels& qrels);
void ReadGroups(const std::filesystem::path& path, Qrels& qrels);

/// `qid Q0 docid rank score tag` per line. Within each query, ranks must be
/// exactly 1..m, scores non-increasing with rank and doc ids distinct;
/// violations throw InvariantViolation. Entries keep file order.
std::vector<RunEntry> ReadRun(std::istream& in);
std::vector<RunEntry> ReadRun(const std::filesystem::path& path);

/// Canonical form: single spaces, "Q0", shortest round-trip score, '\n'.
void WriteRun(const std::vector<RunEntry>& entries, std::ostream& out);
void WriteRun(const std::vector<RunEntry>& entries,
              const std::filesystem::path& path);

/// Shortest decimal that parses back to `value`.
std::string FormatScore(double value);

RunByQuery GroupRun(const std::vector<RunEntry>& entries);

}  // namespace ranknexus::eval
