#include "ranknexus/rerank/backend.hpp"

#include <cmath>
#include <random>
#include <thread>

namespace ranknexus::rerank {

std::chrono::milliseconds BackoffDelay(const RetryPolicy& policy,
                                       std::size_t retry) {
  const double ms = static_cast<double>(policy.base_delay.count()) *
                    std::pow(policy.factor, static_cast<double>(retry - 1));
  return std::chrono::milliseconds(static_cast<long long>(ms));
}

namespace {

double JitterScale() {
  thread_local std::mt19937_64 engine{std::random_device{}()};
  return 0.5 + 0.5 * (static_cast<double>(engine() >> 11) * 0x1.0p-53);
}

}  // namespace

std::string CompleteWithRetry(Backend& backend, const PromptScript& prompt,
                              const RetryPolicy& policy,
                              std::size_t* attempts_out) {
  const std::size_t max_attempts = std::max<std::size_t>(1, policy.max_attempts);
  for (std::size_t attempt = 1;; ++attempt) {
    if (attempts_out) *attempts_out = attempt;
    try {
      return backend.Complete(prompt);
    } catch (const TransportError& e) {
      if (!e.retryable() || attempt >= max_attempts) throw;
    }
    auto delay = BackoffDelay(policy, attempt);
    if (policy.jitter) {
      delay = std::chrono::milliseconds(static_cast<long long>(
          static_cast<double>(delay.count()) * JitterScale()));
    }
    if (policy.sleep) {
      policy.sleep(delay);
    } else {
      std::this_thread::sleep_for(delay);
    }
  }
}

}  // namespace ranknexus::rerank
