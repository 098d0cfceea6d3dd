#include "ranknexus/core/corpus_io.hpp"

#include "ranknexus/core/io.hpp"
#include "ranknexus/error.hpp"

namespace ranknexus {

namespace {

std::optional<std::string> OptionalString(const nlohmann::json& j,
                                          const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<std::string>();
}

}  // namespace

Corpus ReadCorpus(std::istream& in) {
  Corpus corpus;
  ForEachJsonLine(in, [&](const nlohmann::json& j, std::size_t line_no) {
    auto text = OptionalString(j, "text");
    auto image = OptionalString(j, "image_ref");
    Modality modality;
    if (auto m = OptionalString(j, "modality")) {
      modality = ParseModality(*m);
    } else if (text && image) {
      modality = Modality::kHybrid;
    } else if (image) {
      modality = Modality::kImage;
    } else {
      modality = Modality::kText;
    }
    try {
      corpus.Add(Document::Make(j.at("id").get<std::string>(), std::move(text),
                                std::move(image), modality));
    } catch (const Error& e) {
      throw Error(ErrorCode::kMalformedLine, e.what(), line_no);
    }
  });
  return corpus;
}

Corpus ReadCorpus(const std::filesystem::path& path) {
  auto in = OpenForRead(path);
  return ReadCorpus(in);
}

std::vector<Query> ReadQueries(std::istream& in) {
  std::vector<Query> queries;
  ForEachJsonLine(in, [&](const nlohmann::json& j, std::size_t line_no) {
    try {
      queries.push_back(Query::Make(j.at("id").get<std::string>(),
                                    j.at("text").get<std::string>()));
    } catch (const Error& e) {
      throw Error(ErrorCode::kMalformedLine, e.what(), line_no);
    }
  });
  return queries;
}

std::vector<Query> ReadQueries(const std::filesystem::path& path) {
  auto in = OpenForRead(path);
  return ReadQueries(in);
}

}  // namespace ranknexus
