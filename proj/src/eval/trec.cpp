#include "ranknexus/eval/trec.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "ranknexus/core/io.hpp"
#include "ranknexus/error.hpp"

namespace ranknexus::eval {

void Qrels::Add(Judgment j, bool strict) {
  if (j.grade < 0) {
    throw Error(ErrorCode::kInvariantViolation,
                "negative grade for (" + j.query_id + ", " + j.doc_id + ")");
  }
  auto key = std::make_pair(j.query_id, j.doc_id);
  auto it = position_.find(key);
  if (it != position_.end()) {
    if (strict) {
      throw Error(ErrorCode::kInvariantViolation,
                  "duplicate judgment (" + j.query_id + ", " + j.doc_id + ")");
    }
    entries_[it->second].grade = j.grade;
  } else {
    position_.emplace(std::move(key), entries_.size());
    entries_.push_back(j);
  }
  by_query_[j.query_id][j.doc_id] = j.grade;
}

std::optional<int> Qrels::Grade(const std::string& query_id,
                                const std::string& doc_id) const {
  auto q = by_query_.find(query_id);
  if (q == by_query_.end()) return std::nullopt;
  auto d = q->second.find(doc_id);
  if (d == q->second.end()) return std::nullopt;
  return d->second;
}

const std::unordered_map<std::string, int>& Qrels::ForQuery(
    const std::string& query_id) const {
  static const std::unordered_map<std::string, int> kEmpty;
  auto q = by_query_.find(query_id);
  return q == by_query_.end() ? kEmpty : q->second;
}

std::vector<std::string> Qrels::QueryIds() const {
  std::vector<std::string> ids;
  ids.reserve(by_query_.size());
  for (const auto& [qid, _] : by_query_) ids.push_back(qid);
  return ids;
}

namespace {

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] void Malformed(const std::string& why, const std::string& line,
                            std::size_t line_no) {
  throw Error(ErrorCode::kMalformedLine, why + ": '" + line + "'", line_no);
}

template <typename T>
bool ParseNumber(std::string_view s, T& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

bool IsBlank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

Qrels ReadQrels(std::istream& in, bool strict) {
  Qrels qrels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    const auto f = SplitFields(line);
    if (f.size() != 4) Malformed("expected 4 fields", line, line_no);
    int grade = 0;
    if (!ParseNumber(f[3], grade)) Malformed("bad grade", line, line_no);
    try {
      qrels.Add({std::string(f[0]), std::string(f[2]), grade}, strict);
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), line_no);
    }
  }
  return qrels;
}

Qrels ReadQrels(const std::filesystem::path& path, bool strict) {
  auto in = OpenForRead(path);
  return ReadQrels(in, strict);
}

void WriteQrels(const Qrels& qrels, std::ostream& out) {
  for (const auto& j : qrels.judgments()) {
    out << j.query_id << " 0 " << j.doc_id << ' ' << j.grade << '\n';
  }
}

void WriteQrels(const Qrels& qrels, const std::filesystem::path& path) {
  auto out = OpenForWrite(path);
  WriteQrels(qrels, out);
}

void ReadGroups(std::istream& in, Qrels& qrels) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    const auto f = SplitFields(line);
    if (f.size() != 2) Malformed("expected 'qid group'", line, line_no);
    qrels.group_of[std::string(f[0])] = std::string(f[1]);
  }
}

void ReadGroups(const std::filesystem::path& path, Qrels& qrels) {
  auto in = OpenForRead(path);
  ReadGroups(in, qrels);
}

std::string FormatScore(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::vector<RunEntry> ReadRun(std::istream& in) {
  std::vector<RunEntry> entries;
  std::vector<std::size_t> line_of;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    const auto f = SplitFields(line);
    if (f.size() != 6) Malformed("expected 6 fields", line, line_no);
    RunEntry e;
    e.query_id = std::string(f[0]);
    e.doc_id = std::string(f[2]);
    if (!ParseNumber(f[3], e.rank) || e.rank == 0) {
      Malformed("bad rank", line, line_no);
    }
    if (!ParseNumber(f[4], e.score) || !std::isfinite(e.score)) {
      Malformed("bad score", line, line_no);
    }
    e.tag = std::string(f[5]);
    entries.push_back(std::move(e));
    line_of.push_back(line_no);
  }

  std::map<std::string, std::vector<std::size_t>> by_query;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    by_query[entries[i].query_id].push_back(i);
  }
  for (auto& [qid, idx] : by_query) {
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return entries[a].rank < entries[b].rank;
    });
    std::set<std::string_view> docs;
    for (std::size_t r = 0; r < idx.size(); ++r) {
      const RunEntry& e = entries[idx[r]];
      if (e.rank != r + 1) {
        throw Error(ErrorCode::kInvariantViolation,
                    "query " + qid + ": expected rank " + std::to_string(r + 1) +
                        ", found " + std::to_string(e.rank),
                    line_of[idx[r]]);
      }
      if (r > 0 && e.score > entries[idx[r - 1]].score) {
        throw Error(ErrorCode::kInvariantViolation,
                    "query " + qid + ": score increases at rank " +
                        std::to_string(e.rank),
                    line_of[idx[r]]);
      }
      if (!docs.insert(e.doc_id).second) {
        throw Error(ErrorCode::kInvariantViolation,
                    "query " + qid + ": doc " + e.doc_id + " listed twice",
                    line_of[idx[r]]);
      }
    }
  }
  return entries;
}

std::vector<RunEntry> ReadRun(const std::filesystem::path& path) {
  auto in = OpenForRead(path);
  return ReadRun(in);
}

void WriteRun(const std::vector<RunEntry>& entries, std::ostream& out) {
  for (const auto& e : entries) {
    out << e.query_id << " Q0 " << e.doc_id << ' ' << e.rank << ' '
        << FormatScore(e.score) << ' ' << e.tag << '\n';
  }
}

void WriteRun(const std::vector<RunEntry>& entries,
              const std::filesystem::path& path) {
  auto out = OpenForWrite(path);
  WriteRun(entries, out);
}

RunByQuery GroupRun(const std::vector<RunEntry>& entries) {
  RunByQuery out;
  for (const auto& e : entries) out[e.query_id].push_back(e);
  for (auto& [_, list] : out) {
    std::stable_sort(list.begin(), list.end(),
                     [](const RunEntry& a, const RunEntry& b) {
                       return a.rank < b.rank;
                     });
  }
  return out;
}

}  // namespace ranknexus::eval
