#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ranknexus/core/types.hpp"

namespace ranknexus::rerank {

enum class Role { kSystem, kUser, kAssistant };
std::string_view ToString(Role r);

struct Turn {
  Role role = Role::kUser;
  std::string text;
  // Opaque image references; only user turns carry them.
  std::vector<std::string> image_refs;
};

enum class PromptKind {
  kListwise,
  // Single-document yes/no relevance judgment.
  kRelevance,
  // Two documents, answer names the more relevant one.
  kComparison,
};

enum class RerankMode { kText, kMultimodal };
std::string_view ToString(RerankMode m);
RerankMode ParseRerankMode(std::string_view s);

/// A multi-turn chat script plus routing metadata. `query_id` and
/// `candidate_ids` are never rendered into the turns; backends that judge by
/// id (the mock oracle) read them directly.
struct PromptScript {
  PromptKind kind = PromptKind::kListwise;
  std::vector<Turn> turns;
  std::string query_id;
  std::vector<std::string> candidate_ids;

  /// System turn first, then user/assistant alternation starting with user,
  /// attachments on user turns only. Throws InvariantViolation.
  void Validate() const;
};

/// Listwise ranking script. Text mode reproduces the passage template,
/// multimodal mode the document template with image attachments.
/// Throws TooFewDocs (< 2 docs) and MissingModality (text mode and a doc has
/// no text, or multimodal mode and a doc has neither text nor image).
PromptScript BuildListwisePrompt(const Query& query,
                                 std::span<const Document> docs,
                                 RerankMode mode);

/// System + one user turn asking for a yes/no relevance answer. Absent
/// text or image lines are omitted.
PromptScript BuildPairwisePrompt(const Query& query, const Document& doc);

/// System + one user turn asking which of two documents is more relevant;
/// the answer uses the bracket grammar ("[1]" or "[2]").
PromptScript BuildComparisonPrompt(const Query& query, const Document& first,
                                   const Document& second);

/// Echoes the unusable answer as an assistant turn and appends a user turn
/// restating the expected output format.
PromptScript WithFormatReminder(const PromptScript& script,
                                const std::string& raw_answer);

}  // namespace ranknexus::rerank
