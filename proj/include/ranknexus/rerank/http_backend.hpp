#pragma once

#include <chrono>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "ranknexus/rerank/backend.hpp"

namespace ranknexus::rerank {

struct HttpBackendConfig {
  // Full URL of the chat-completions endpoint, http:// or https://.
  std::string endpoint;
  std::string model;
  std::chrono::seconds timeout{120};
  // Read from RERANK_API_KEY when empty.
  std::string api_key;
  bool supports_images = true;
  std::optional<std::size_t> max_candidates_hint;
};

/// Chat-completions client. Each call opens its own connection, so one
/// instance can be shared across threads.
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(HttpBackendConfig config);

  std::string Complete(const PromptScript& prompt) override;
  bool supports_images() const override { return config_.supports_images; }
  std::optional<std::size_t> max_candidates_hint() const override {
    return config_.max_candidates_hint;
  }
  std::string tag() const override { return "http:" + config_.model; }

 private:
  HttpBackendConfig config_;
  std::string base_url_;  // scheme://host[:port]
  std::string path_;
};

/// Request body for `prompt`: {model, messages, temperature: 0}. Turns with
/// attachments become content-part arrays with image_url entries; local
/// files are inlined as base64 data URIs.
nlohmann::json BuildChatRequest(const PromptScript& prompt,
                                const std::string& model);

/// choices[0].message.content. Throws TransportError (non-retryable) when
/// the body has no such field.
std::string ExtractChatContent(const std::string& body);

/// "data:<mime>;base64,..." for a local file; http(s) and data URIs pass
/// through unchanged. Throws Io when the file cannot be read.
std::string ImageRefToUrl(const std::string& image_ref);

std::string Base64Encode(std::string_view bytes);

}  // namespace ranknexus::rerank
