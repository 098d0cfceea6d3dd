#include "ranknexus/rerank/mock_backend.hpp"

#include <algorithm>
#include <numeric>

#include "ranknexus/error.hpp"

namespace ranknexus::rerank {

MockBackend MockBackend::Identity() { return MockBackend(Policy::kIdentity); }
MockBackend MockBackend::Reverse() { return MockBackend(Policy::kReverse); }

MockBackend MockBackend::Oracle(GradeLookup grades) {
  MockBackend b(Policy::kOracle);
  b.grades_ = std::move(grades);
  return b;
}

MockBackend MockBackend::Scripted(std::vector<std::string> responses) {
  MockBackend b(Policy::kScripted);
  b.script_ = std::move(responses);
  return b;
}

MockBackend::MockBackend(MockBackend&& other) noexcept
    : policy_(other.policy_),
      grades_(std::move(other.grades_)),
      script_(std::move(other.script_)),
      next_(other.next_),
      calls_(other.calls_) {}

std::size_t MockBackend::calls() const {
  std::lock_guard lock(mu_);
  return calls_;
}

std::string MockBackend::tag() const {
  switch (policy_) {
    case Policy::kIdentity: return "mock-identity";
    case Policy::kReverse: return "mock-reverse";
    case Policy::kOracle: return "mock-oracle";
    case Policy::kScripted: return "mock-scripted";
  }
  return "mock";
}

namespace {

std::string RenderOrder(const std::vector<std::size_t>& order) {
  std::string out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0) out += " > ";
    out += "[" + std::to_string(order[i]) + "]";
  }
  return out;
}

}  // namespace

std::string MockBackend::Complete(const PromptScript& prompt) {
  {
    std::lock_guard lock(mu_);
    ++calls_;
    if (policy_ == Policy::kScripted) {
      if (next_ >= script_.size()) {
        throw Error(ErrorCode::kScriptExhausted,
                    "scripted backend has no response #" +
                        std::to_string(next_ + 1));
      }
      return script_[next_++];
    }
  }

  const auto grade = [&](const std::string& doc_id) {
    return grades_ ? grades_(prompt.query_id, doc_id).value_or(0) : 0;
  };

  if (prompt.kind == PromptKind::kRelevance) {
    switch (policy_) {
      case Policy::kIdentity: return "Yes";
      case Policy::kReverse: return "No";
      default:
        return grade(prompt.candidate_ids.at(0)) >= 1 ? "Yes" : "No";
    }
  }

  const std::size_t n = prompt.candidate_ids.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{1});
  if (policy_ == Policy::kReverse) {
    std::reverse(order.begin(), order.end());
  } else if (policy_ == Policy::kOracle) {
    std::vector<int> grades(n);
    for (std::size_t i = 0; i < n; ++i) {
      grades[i] = grade(prompt.candidate_ids[i]);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return grades[a - 1] > grades[b - 1];
                     });
  }
  return RenderOrder(order);
}

}  // namespace ranknexus::rerank
