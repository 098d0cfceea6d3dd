#include "ranknexus/distill/config.hpp"

#include "ranknexus/core/io.hpp"
#include "ranknexus/error.hpp"

namespace ranknexus::distill {

std::size_t PipelineConfig::EffectiveBudget() const {
  if (budget) return *budget;
  return mode == rerank::RerankMode::kText ? kTextBudget : kImageBudget;
}

void PipelineConfig::Validate() const {
  auto positive = [](std::size_t v, const char* name) {
    if (v == 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(name) + " must be >= 1");
    }
  };
  positive(top_k, "top_k");
  positive(selection_k, "selection_k");
  positive(EffectiveBudget(), "budget");
  positive(parallelism, "parallelism");
  if (!(quality_threshold >= -1.0 && quality_threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "quality_threshold must lie in [-1, 1]");
  }
  window.Validate();
  if (window.window_size < 2) {
    throw Error(ErrorCode::kInvalidArgument, "window size must be >= 2");
  }
}

PipelineConfig ConfigFromJson(const nlohmann::json& j) {
  PipelineConfig cfg;
  if (!j.is_object()) {
    throw Error(ErrorCode::kInvalidArgument, "config must be a JSON object");
  }
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "top_k") {
        cfg.top_k = value.get<std::size_t>();
      } else if (key == "selection_k") {
        cfg.selection_k = value.get<std::size_t>();
      } else if (key == "quality_threshold") {
        cfg.quality_threshold = value.get<double>();
      } else if (key == "window") {
        cfg.window.window_size = value.value("size", cfg.window.window_size);
        cfg.window.stride = value.value("stride", cfg.window.stride);
      } else if (key == "budget") {
        cfg.budget = value.get<std::size_t>();
      } else if (key == "seed") {
        cfg.seed = value.get<std::uint64_t>();
      } else if (key == "mode") {
        cfg.mode = rerank::ParseRerankMode(value.get<std::string>());
      } else if (key == "selection_metric") {
        cfg.selection_metric =
            embed::ParseSimilarityMetric(value.get<std::string>());
      } else if (key == "parallelism") {
        cfg.parallelism = value.get<std::size_t>();
      } else if (key == "strict") {
        cfg.strict = value.get<bool>();
      } else {
        throw Error(ErrorCode::kInvalidArgument,
                    "unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("bad config value: ") + e.what());
  }
  cfg.Validate();
  return cfg;
}

PipelineConfig LoadConfig(const std::filesystem::path& path) {
  auto in = OpenForRead(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                "config '" + path.string() + "' is not JSON: " + e.what());
  }
  return ConfigFromJson(j);
}

nlohmann::json ToJson(const PipelineConfig& cfg) {
  return {
      {"top_k", cfg.top_k},
      {"selection_k", cfg.selection_k},
      {"quality_threshold", cfg.quality_threshold},
      {"window", {{"size", cfg.window.window_size}, {"stride", cfg.window.stride}}},
      {"budget", cfg.EffectiveBudget()},
      {"seed", cfg.seed},
      {"mode", std::string(rerank::ToString(cfg.mode))},
      {"selection_metric", std::string(embed::ToString(cfg.selection_metric))},
      {"parallelism", cfg.parallelism},
      {"strict", cfg.strict},
  };
}

}  // namespace ranknexus::distill
