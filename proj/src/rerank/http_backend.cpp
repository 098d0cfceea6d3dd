#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "ranknexus/rerank/http_backend.hpp"

#include <httplib.h>
#include <openssl/evp.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ranknexus/error.hpp"

namespace ranknexus::rerank {

namespace {

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

std::string MimeFor(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == ".png") return "image/png";
  if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
  if (ext == ".gif") return "image/gif";
  if (ext == ".webp") return "image/webp";
  return "application/octet-stream";
}

}  // namespace

std::string Base64Encode(std::string_view bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3), '\0');
  const int written = EVP_EncodeBlock(
      reinterpret_cast<unsigned char*>(out.data()),
      reinterpret_cast<const unsigned char*>(bytes.data()),
      static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(written));
  return out;
}

std::string ImageRefToUrl(const std::string& image_ref) {
  if (StartsWith(image_ref, "http://") || StartsWith(image_ref, "https://") ||
      StartsWith(image_ref, "data:")) {
    return image_ref;
  }
  std::ifstream in(image_ref, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot read image '" + image_ref + "'");
  }
  std::ostringstream bytes;
  bytes << in.rdbuf();
  return "data:" + MimeFor(image_ref) + ";base64," + Base64Encode(bytes.str());
}

nlohmann::json BuildChatRequest(const PromptScript& prompt,
                                const std::string& model) {
  nlohmann::json messages = nlohmann::json::array();
  for (const auto& turn : prompt.turns) {
    nlohmann::json msg;
    msg["role"] = std::string(ToString(turn.role));
    if (turn.image_refs.empty()) {
      msg["content"] = turn.text;
    } else {
      nlohmann::json parts = nlohmann::json::array();
      parts.push_back({{"type", "text"}, {"text", turn.text}});
      for (const auto& ref : turn.image_refs) {
        parts.push_back({{"type", "image_url"},
                         {"image_url", {{"url", ImageRefToUrl(ref)}}}});
      }
      msg["content"] = std::move(parts);
    }
    messages.push_back(std::move(msg));
  }
  return {{"model", model}, {"messages", std::move(messages)},
          {"temperature", 0}};
}

std::string ExtractChatContent(const std::string& body) {
  try {
    const auto j = nlohmann::json::parse(body);
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const std::exception& e) {
    throw TransportError(
        std::string("response lacks choices[0].message.content: ") + e.what(),
        false);
  }
}

HttpBackend::HttpBackend(HttpBackendConfig config)
    : config_(std::move(config)) {
  const auto scheme_end = config_.endpoint.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument,
                "endpoint must be an absolute http(s) URL: " +
                    config_.endpoint);
  }
  const auto path_begin = config_.endpoint.find('/', scheme_end + 3);
  base_url_ = config_.endpoint.substr(0, path_begin);
  path_ = path_begin == std::string::npos ? "/"
                                          : config_.endpoint.substr(path_begin);
  if (config_.api_key.empty()) {
    if (const char* key = std::getenv("RERANK_API_KEY")) config_.api_key = key;
  }
}

std::string HttpBackend::Complete(const PromptScript& prompt) {
  if (!config_.supports_images) {
    for (const auto& t : prompt.turns) {
      if (!t.image_refs.empty()) {
        throw TransportError("backend configured without image support",
                             false);
      }
    }
  }
  const std::string body = BuildChatRequest(prompt, config_.model).dump();

  httplib::Client client(base_url_);
  const auto timeout = config_.timeout;
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }

  auto res = client.Post(path_, headers, body, "application/json");
  if (!res) {
    throw TransportError("request failed: " + httplib::to_string(res.error()),
                         true);
  }
  if (res->status < 200 || res->status >= 300) {
    const bool retryable = res->status == 408 || res->status == 429 ||
                           res->status >= 500;
    throw TransportError(
        "HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 512),
        retryable);
  }
  return ExtractChatContent(res->body);
}

}  // namespace ranknexus::rerank
