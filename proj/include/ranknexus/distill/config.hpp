#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>

#include <nlohmann/json.hpp>

#include "ranknexus/embed/selection.hpp"
#include "ranknexus/rerank/engine.hpp"
#include "ranknexus/rerank/prompt.hpp"

namespace ranknexus::distill {

inline constexpr std::size_t kTextBudget = 4000;
inline constexpr std::size_t kImageBudget = 2100;

struct PipelineConfig {
  std::size_t top_k = 20;
  std::size_t selection_k = kImageBudget;
  double quality_threshold = 0.25;
  rerank::WindowConfig window;
  // Unset: kTextBudget in text mode, kImageBudget in multimodal mode.
  std::optional<std::size_t> budget;
  std::uint64_t seed = 0;
  rerank::RerankMode mode = rerank::RerankMode::kText;
  embed::SimilarityMetric selection_metric = embed::SimilarityMetric::kCosine;
  std::size_t parallelism = 1;
  bool strict = false;

  std::size_t EffectiveBudget() const;
  /// Throws InvalidArgument when a count is 0, the threshold leaves [-1, 1]
  /// or the window is malformed.
  void Validate() const;
};

/// Missing keys keep their defaults; unknown keys are rejected.
PipelineConfig ConfigFromJson(const nlohmann::json& j);
PipelineConfig LoadConfig(const std::filesystem::path& path);
nlohmann::json ToJson(const PipelineConfig& cfg);

}  // namespace ranknexus::distill
