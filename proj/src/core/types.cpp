#include "ranknexus/core/types.hpp"

#include <cctype>
#include <cmath>
#include <unordered_set>

#include "ranknexus/error.hpp"

namespace ranknexus {

std::string_view ToString(Modality m) {
  switch (m) {
    case Modality::kText: return "text";
    case Modality::kImage: return "image";
    case Modality::kHybrid: return "hybrid";
  }
  return "text";
}

Modality ParseModality(std::string_view s) {
  if (s == "text") return Modality::kText;
  if (s == "image") return Modality::kImage;
  if (s == "hybrid") return Modality::kHybrid;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown modality '" + std::string(s) + "'");
}

bool ContainsWhitespace(std::string_view s) {
  for (unsigned char c : s) {
    if (std::isspace(c)) return true;
  }
  return false;
}

namespace {

void CheckId(std::string_view id, std::string_view what) {
  if (id.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " id must be non-empty");
  }
  if (ContainsWhitespace(id)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " id '" + std::string(id) +
                    "' contains whitespace");
  }
}

}  // namespace

Document Document::Make(std::string id, std::optional<std::string> text,
                        std::optional<std::string> image_ref,
                        Modality modality) {
  CheckId(id, "document");
  const bool has_text = text.has_value();
  const bool has_image = image_ref.has_value() && !image_ref->empty();
  const bool ok = (modality == Modality::kText && has_text) ||
                  (modality == Modality::kImage && has_image) ||
                  (modality == Modality::kHybrid && has_text && has_image);
  if (!ok) {
    throw Error(ErrorCode::kMissingModality,
                "document '" + id + "' declared " +
                    std::string(ToString(modality)) +
                    " but lacks the matching content");
  }
  Document d;
  d.id_ = std::move(id);
  d.text_ = std::move(text);
  d.image_ref_ = std::move(image_ref);
  d.modality_ = modality;
  return d;
}

Query Query::Make(std::string id, std::string text) {
  CheckId(id, "query");
  if (text.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "query '" + id + "' has empty text");
  }
  Query q;
  q.id_ = std::move(id);
  q.text_ = std::move(text);
  return q;
}

void CandidateList::Validate() const {
  std::unordered_set<std::string_view> seen;
  for (std::size_t i = 0; i < doc_ids.size(); ++i) {
    if (!seen.insert(doc_ids[i]).second) {
      throw Error(ErrorCode::kInvariantViolation,
                  "duplicate doc id '" + doc_ids[i] + "' in candidates of " +
                      query_id,
                  i + 1);
    }
  }
  if (first_stage_scores && first_stage_scores->size() != doc_ids.size()) {
    throw Error(ErrorCode::kInvariantViolation,
                "first-stage scores not aligned with doc ids for " + query_id);
  }
}

Corpus::Corpus(std::vector<Document> docs) {
  docs_.reserve(docs.size());
  for (auto& d : docs) Add(std::move(d));
}

void Corpus::Add(Document doc) {
  auto [it, inserted] = index_.emplace(doc.id(), docs_.size());
  if (!inserted) {
    throw Error(ErrorCode::kInvariantViolation,
                "duplicate document id '" + doc.id() + "'");
  }
  docs_.push_back(std::move(doc));
}

const Document* Corpus::Find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &docs_[it->second];
}

const Document& Corpus::At(std::string_view id) const {
  if (const Document* d = Find(id)) return *d;
  throw Error(ErrorCode::kMissingDoc,
              "document '" + std::string(id) + "' not in corpus");
}

ScoreVector::ScoreVector(std::vector<double> scores)
    : scores_(std::move(scores)) {
  for (std::size_t i = 0; i < scores_.size(); ++i) {
    if (!std::isfinite(scores_[i])) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite score", i + 1);
    }
  }
}

}  // namespace ranknexus
