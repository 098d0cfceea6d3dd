#include "ranknexus/embed/embedding.hpp"

#include <cmath>

#include "ranknexus/core/io.hpp"
#include "ranknexus/error.hpp"

namespace ranknexus::embed {

EmbeddingSet::EmbeddingSet(std::vector<EmbeddingRecord> records)
    : records_(std::move(records)) {
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    if (r.vector.empty()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "record '" + r.id + "' has dimension 0", i + 1);
    }
    if (i == 0) {
      dim_ = r.vector.size();
    } else if (r.vector.size() != dim_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "record '" + r.id + "' has dimension " +
                      std::to_string(r.vector.size()) + ", expected " +
                      std::to_string(dim_),
                  i + 1);
    }
    for (float v : r.vector) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "record '" + r.id + "' has a non-finite entry", i + 1);
      }
    }
  }
}

std::size_t EmbeddingSet::IndexOf(const std::string& id) const {
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (records_[i].id == id) return i;
  }
  return npos;
}

EmbeddingSet EmbeddingSet::Subset(std::span<const std::size_t> indices) const {
  std::vector<EmbeddingRecord> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(records_.at(i));
  return EmbeddingSet(std::move(out));
}

EmbeddingSet ReadEmbeddings(std::istream& in) {
  std::vector<EmbeddingRecord> records;
  ForEachJsonLine(in, [&](const nlohmann::json& j, std::size_t) {
    EmbeddingRecord r;
    r.id = j.at("id").get<std::string>();
    r.vector = j.at("vector").get<std::vector<float>>();
    records.push_back(std::move(r));
  });
  return EmbeddingSet(std::move(records));
}

EmbeddingSet ReadEmbeddings(const std::filesystem::path& path) {
  auto in = OpenForRead(path);
  return ReadEmbeddings(in);
}

}  // namespace ranknexus::embed
