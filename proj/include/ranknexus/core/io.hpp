#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <string>

#include <nlohmann/json.hpp>

namespace ranknexus {

std::ifstream OpenForRead(const std::filesystem::path& path);
std::ofstream OpenForWrite(const std::filesystem::path& path,
                           bool append = false);

/// Calls `fn(json, line_number)` for every non-blank line. Parse failures
/// and exceptions thrown by `fn` other than ranknexus::Error are rethrown
/// as MalformedLine carrying the line number and content.
void ForEachJsonLine(
    std::istream& in,
    const std::function<void(const nlohmann::json&, std::size_t)>& fn);

/// Writes `content` to `path` through a sibling temp file and rename.
void AtomicWriteFile(const std::filesystem::path& path,
                     const std::string& content);

}  // namespace ranknexus
