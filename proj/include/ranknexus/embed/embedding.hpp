#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <vector>

namespace ranknexus::embed {

/// Vectors are stored as 32-bit floats; all geometry is computed in double.
struct EmbeddingRecord {
  std::string id;
  std::vector<float> vector;
};

/// A collection of records with uniform, positive dimension and finite
/// entries. Checked on construction.
class EmbeddingSet {
 public:
  EmbeddingSet() = default;
  explicit EmbeddingSet(std::vector<EmbeddingRecord> records);

  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  std::size_t dimension() const { return dim_; }

  const EmbeddingRecord& operator[](std::size_t i) const {
    return records_[i];
  }
  std::span<const EmbeddingRecord> records() const { return records_; }

  /// Index of `id` or npos.
  std::size_t IndexOf(const std::string& id) const;

  /// Subset in the order of `indices`.
  EmbeddingSet Subset(std::span<const std::size_t> indices) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<EmbeddingRecord> records_;
  std::size_t dim_ = 0;
};

/// `{"id": "...", "vector": [...]}` per line.
EmbeddingSet ReadEmbeddings(std::istream& in);
EmbeddingSet ReadEmbeddings(const std::filesystem::path& path);

}  // namespace ranknexus::embed
