#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ranknexus {

enum class Modality { kText, kImage, kHybrid };

std::string_view ToString(Modality m);
Modality ParseModality(std::string_view s);

/// One rerankable unit. Construct through Document::Make so the
/// modality/content invariants hold for every instance.
class Document {
 public:
  static Document Make(std::string id, std::optional<std::string> text,
                       std::optional<std::string> image_ref,
                       Modality modality);

  const std::string& id() const { return id_; }
  const std::optional<std::string>& text() const { return text_; }
  const std::optional<std::string>& image_ref() const { return image_ref_; }
  Modality modality() const { return modality_; }

  bool has_text() const { return text_.has_value() && !text_->empty(); }
  bool has_image() const {
    return image_ref_.has_value() && !image_ref_->empty();
  }

 private:
  Document() = default;

  std::string id_;
  std::optional<std::string> text_;
  std::optional<std::string> image_ref_;
  Modality modality_ = Modality::kText;
};

class Query {
 public:
  static Query Make(std::string id, std::string text);

  const std::string& id() const { return id_; }
  const std::string& text() const { return text_; }

 private:
  Query() = default;

  std::string id_;
  std::string text_;
};

struct CandidateList {
  std::string query_id;
  std::vector<std::string> doc_ids;
  std::optional<std::vector<double>> first_stage_scores;

  /// Throws InvariantViolation on duplicate ids or misaligned scores.
  void Validate() const;
};

/// Id-addressable document store. Insertion order is preserved.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Document> docs);

  void Add(Document doc);
  const Document* Find(std::string_view id) const;
  /// Throws MissingDoc.
  const Document& At(std::string_view id) const;

  std::size_t size() const { return docs_.size(); }
  std::span<const Document> docs() const { return docs_; }

 private:
  std::vector<Document> docs_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// One finite score per candidate.
class ScoreVector {
 public:
  ScoreVector() = default;
  explicit ScoreVector(std::vector<double> scores);

  std::size_t size() const { return scores_.size(); }
  double operator[](std::size_t i) const { return scores_[i]; }
  std::span<const double> values() const { return scores_; }

 private:
  std::vector<double> scores_;
};

bool ContainsWhitespace(std::string_view s);

}  // namespace ranknexus
