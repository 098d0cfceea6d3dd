#include "ranknexus/core/io.hpp"

#include <cctype>

#include "ranknexus/error.hpp"

namespace ranknexus {

std::ifstream OpenForRead(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  }
  return in;
}

std::ofstream OpenForWrite(const std::filesystem::path& path, bool append) {
  auto mode = std::ios::binary | (append ? std::ios::app : std::ios::trunc);
  std::ofstream out(path, mode);
  if (!out) {
    throw Error(ErrorCode::kIo,
                "cannot open '" + path.string() + "' for writing");
  }
  return out;
}

namespace {

bool IsBlank(const std::string& line) {
  for (unsigned char c : line) {
    if (!std::isspace(c)) return false;
  }
  return true;
}

}  // namespace

void ForEachJsonLine(
    std::istream& in,
    const std::function<void(const nlohmann::json&, std::size_t)>& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    try {
      fn(nlohmann::json::parse(line), line_no);
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kMalformedLine,
                  std::string(e.what()) + " in line: " + line, line_no);
    }
  }
}

void AtomicWriteFile(const std::filesystem::path& path,
                     const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    auto out = OpenForWrite(tmp);
    out << content;
    out.flush();
    if (!out) {
      throw Error(ErrorCode::kIo, "failed writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "rename to '" + path.string() +
                                    "' failed: " + ec.message());
  }
}

}  // namespace ranknexus
