#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include "ranknexus/error.hpp"
#include "ranknexus/rerank/prompt.hpp"

namespace ranknexus::rerank {

/// Failure to obtain a completion at all (network, HTTP status, timeout).
class TransportError : public Error {
 public:
  TransportError(const std::string& message, bool retryable)
      : Error(ErrorCode::kBackendError, message), retryable_(retryable) {}

  bool retryable() const noexcept { return retryable_; }

 private:
  bool retryable_;
};

/// The ranking model, seen as a text-completion service. Implementations
/// must be safe to call from several threads at once.
class Backend {
 public:
  virtual ~Backend() = default;

  /// Returns the raw completion or throws TransportError.
  virtual std::string Complete(const PromptScript& prompt) = 0;

  virtual bool supports_images() const = 0;
  virtual std::optional<std::size_t> max_candidates_hint() const {
    return std::nullopt;
  }
  /// Short identifier recorded with every label the backend produces.
  virtual std::string tag() const = 0;
};

struct RetryPolicy {
  std::size_t max_attempts = 5;
  std::chrono::milliseconds base_delay{1000};
  double factor = 2.0;
  // Each delay is scaled by a uniform draw from [0.5, 1.0].
  bool jitter = true;

  using Sleeper = std::function<void(std::chrono::milliseconds)>;
  // Defaults to std::this_thread::sleep_for.
  Sleeper sleep;
};

/// Calls `backend.Complete`, retrying retryable TransportErrors with
/// exponential backoff. The last error is rethrown once attempts run out;
/// non-retryable errors are rethrown immediately. `attempts_out`, when
/// given, receives the number of calls made.
std::string CompleteWithRetry(Backend& backend, const PromptScript& prompt,
                              const RetryPolicy& policy,
                              std::size_t* attempts_out = nullptr);

/// Delay before retry number `retry` (1-based) without jitter.
std::chrono::milliseconds BackoffDelay(const RetryPolicy& policy,
                                       std::size_t retry);

}  // namespace ranknexus::rerank
