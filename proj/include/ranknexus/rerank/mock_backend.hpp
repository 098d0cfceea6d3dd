#pragma once

#include <cstddef>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ranknexus/rerank/backend.hpp"

namespace ranknexus::rerank {

/// Deterministic test double.
///
///   identity  "[1] > [2] > ..." for ranking prompts, "Yes" for relevance.
///   reverse   the mirrored ranking, "No" for relevance.
///   oracle    candidates sorted by grade descending (stable), "Yes" iff
///             grade >= 1. Grades come from a lookup on (query id, doc id);
///             unknown pairs count as 0.
///   scripted  replays a fixed list of responses in order, whatever the
///             prompt; running out throws ScriptExhausted.
class MockBackend : public Backend {
 public:
  using GradeLookup = std::function<std::optional<int>(
      const std::string& query_id, const std::string& doc_id)>;

  enum class Policy { kIdentity, kReverse, kOracle, kScripted };

  static MockBackend Identity();
  static MockBackend Reverse();
  static MockBackend Oracle(GradeLookup grades);
  static MockBackend Scripted(std::vector<std::string> responses);

  MockBackend(MockBackend&& other) noexcept;

  std::string Complete(const PromptScript& prompt) override;
  bool supports_images() const override { return true; }
  std::string tag() const override;

  Policy policy() const { return policy_; }
  std::size_t calls() const;

 private:
  explicit MockBackend(Policy policy) : policy_(policy) {}

  Policy policy_;
  GradeLookup grades_;
  std::vector<std::string> script_;
  mutable std::mutex mu_;
  std::size_t next_ = 0;
  std::size_t calls_ = 0;
};

}  // namespace ranknexus::rerank
