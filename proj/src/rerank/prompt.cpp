#include "ranknexus/rerank/prompt.hpp"

#include "ranknexus/error.hpp"

namespace ranknexus::rerank {

std::string_view ToString(Role r) {
  switch (r) {
    case Role::kSystem: return "system";
    case Role::kUser: return "user";
    case Role::kAssistant: return "assistant";
  }
  return "user";
}

std::string_view ToString(RerankMode m) {
  return m == RerankMode::kText ? "text" : "multimodal";
}

RerankMode ParseRerankMode(std::string_view s) {
  if (s == "text") return RerankMode::kText;
  if (s == "multimodal") return RerankMode::kMultimodal;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown rerank mode '" + std::string(s) + "'");
}

void PromptScript::Validate() const {
  if (turns.empty() || turns.front().role != Role::kSystem) {
    throw Error(ErrorCode::kInvariantViolation,
                "prompt must open with a system turn");
  }
  for (std::size_t i = 1; i < turns.size(); ++i) {
    const Role expected = (i % 2 == 1) ? Role::kUser : Role::kAssistant;
    if (turns[i].role != expected) {
      throw Error(ErrorCode::kInvariantViolation,
                  "turn roles must alternate user/assistant", i + 1);
    }
  }
  for (std::size_t i = 0; i < turns.size(); ++i) {
    if (!turns[i].image_refs.empty() && turns[i].role != Role::kUser) {
      throw Error(ErrorCode::kInvariantViolation,
                  "attachments are only allowed on user turns", i + 1);
    }
  }
}

namespace {

constexpr std::string_view kTextSystem =
    "You are RankGPT, an intelligent assistant that can rank passages based "
    "on their relevancy to the query.";
constexpr std::string_view kMultimodalSystem =
    "You are a multimodal reranking assistant. Rank documents containing "
    "both text and images based on their relevance to the query.";
constexpr std::string_view kRelevanceSystem =
    "You are an expert relevance assessor for multimodal documents. "
    "Determine whether the given document is relevant to the user query.";
constexpr std::string_view kComparisonSystem =
    "You are an expert relevance assessor for multimodal documents. "
    "Determine which of the two given documents is more relevant to the user "
    "query.";

Turn System(std::string_view text) {
  return {Role::kSystem, std::string(text), {}};
}
Turn User(std::string text, std::vector<std::string> images = {}) {
  return {Role::kUser, std::move(text), std::move(images)};
}
Turn Assistant(std::string text) { return {Role::kAssistant, std::move(text), {}}; }

void RequireContent(const Document& doc, RerankMode mode) {
  const bool ok = mode == RerankMode::kText
                      ? doc.has_text()
                      : (doc.has_text() || doc.has_image());
  if (!ok) {
    throw Error(ErrorCode::kMissingModality,
                "document '" + doc.id() + "' has no content usable in " +
                    std::string(ToString(mode)) + " mode");
  }
}

// "Document Text: ...\nDocument Image: [Attached]\n" with absent lines elided.
std::string DocumentBlock(const Document& doc, std::vector<std::string>& images) {
  std::string out;
  if (doc.has_text()) out += "Document Text: " + *doc.text() + "\n";
  if (doc.has_image()) {
    out += "Document Image: [Attached]\n";
    images.push_back(*doc.image_ref());
  }
  return out;
}

}  // namespace

PromptScript BuildListwisePrompt(const Query& query,
                                 std::span<const Document> docs,
                                 RerankMode mode) {
  if (docs.size() < 2) {
    throw Error(ErrorCode::kTooFewDocs,
                "listwise ranking needs at least 2 documents, got " +
                    std::to_string(docs.size()));
  }
  for (const auto& d : docs) RequireContent(d, mode);

  const std::string n = std::to_string(docs.size());
  PromptScript script;
  script.kind = PromptKind::kListwise;
  script.query_id = query.id();
  for (const auto& d : docs) script.candidate_ids.push_back(d.id());

  if (mode == RerankMode::kText) {
    script.turns.push_back(System(kTextSystem));
    script.turns.push_back(
        User("I will provide you with " + n +
             " passages, each indicated by number identifier []. Rank the "
             "passages based on their relevance to query: " +
             query.text() + "."));
    script.turns.push_back(Assistant("Okay, please provide the passages."));
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const std::string idx = std::to_string(i + 1);
      script.turns.push_back(User("[" + idx + "] " + *docs[i].text()));
      script.turns.push_back(Assistant("Received passage [" + idx + "]."));
    }
    script.turns.push_back(User(
        "Search Query: " + query.text() + ". Rank the " + n +
        " passages above based on their relevance. The output format should "
        "be [] > [], e.g., [1] > [2]. Only response the ranking results, do "
        "not say any word or explain."));
  } else {
    script.turns.push_back(System(kMultimodalSystem));
    script.turns.push_back(
        User("I will provide you with " + n +
             " multimodal documents, each containing text and images. Rank "
             "them by relevance to query: " +
             query.text() + "."));
    script.turns.push_back(
        Assistant("Understood. Please provide the documents."));
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const std::string idx = std::to_string(i + 1);
      std::string body = "[" + idx + "]";
      std::vector<std::string> images;
      if (docs[i].has_text()) body += " Text: " + *docs[i].text();
      if (docs[i].has_image()) {
        body += (docs[i].has_text() ? "\n" : " ");
        body += "Image: [Attached image_" + idx + "]";
        images.push_back(*docs[i].image_ref());
      }
      script.turns.push_back(User(std::move(body), std::move(images)));
      script.turns.push_back(Assistant("Received document [" + idx + "]."));
    }
    script.turns.push_back(User(
        "Query: " + query.text() + ". Rank the " + n +
        " documents considering both textual and visual content. Output "
        "format: [] > [], e.g., [1] > [2]. Only provide the ranking, no "
        "explanation."));
  }
  return script;
}

PromptScript BuildPairwisePrompt(const Query& query, const Document& doc) {
  RequireContent(doc, RerankMode::kMultimodal);
  PromptScript script;
  script.kind = PromptKind::kRelevance;
  script.query_id = query.id();
  script.candidate_ids = {doc.id()};
  std::vector<std::string> images;
  std::string body = "Query: " + query.text() + "\n";
  body += DocumentBlock(doc, images);
  body +=
      "Is this document relevant to the query? Answer only 'Yes' or 'No'.";
  script.turns.push_back(System(kRelevanceSystem));
  script.turns.push_back(User(std::move(body), std::move(images)));
  return script;
}

PromptScript BuildComparisonPrompt(const Query& query, const Document& first,
                                   const Document& second) {
  RequireContent(first, RerankMode::kMultimodal);
  RequireContent(second, RerankMode::kMultimodal);
  PromptScript script;
  script.kind = PromptKind::kComparison;
  script.query_id = query.id();
  script.candidate_ids = {first.id(), second.id()};
  std::vector<std::string> images;
  std::string body = "Query: " + query.text() + "\n";
  body += "[1]\n" + DocumentBlock(first, images);
  body += "[2]\n" + DocumentBlock(second, images);
  body +=
      "Which document is more relevant to the query? Answer only [1] or [2].";
  script.turns.push_back(System(kComparisonSystem));
  script.turns.push_back(User(std::move(body), std::move(images)));
  return script;
}

PromptScript WithFormatReminder(const PromptScript& script,
                                const std::string& raw_answer) {
  PromptScript out = script;
  out.turns.push_back(Assistant(raw_answer));
  switch (script.kind) {
    case PromptKind::kListwise:
      out.turns.push_back(
          User("Your answer could not be read. Respond only with the ranking "
               "in the format [] > [], e.g., [1] > [2]."));
      break;
    case PromptKind::kRelevance:
      out.turns.push_back(User("Answer only 'Yes' or 'No'."));
      break;
    case PromptKind::kComparison:
      out.turns.push_back(User("Answer only [1] or [2]."));
      break;
  }
  return out;
}

}  // namespace ranknexus::rerank
