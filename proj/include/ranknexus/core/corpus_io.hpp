#pragma once

#include <filesystem>
#include <istream>
#include <vector>

#include "ranknexus/core/types.hpp"

namespace ranknexus {

// JSON-lines readers. Blank lines are skipped; a bad line throws
// MalformedLine with its 1-based line number.
Corpus ReadCorpus(std::istream& in);
Corpus ReadCorpus(const std::filesystem::path& path);

std::vector<Query> ReadQueries(std::istream& in);
std::vector<Query> ReadQueries(const std::filesystem::path& path);

}  // namespace ranknexus
