#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ranknexus/core/permutation.hpp"

namespace ranknexus::distill {

inline constexpr double kRepairPenalty = 0.1;
inline constexpr const char* kConfidenceFormula =
    "clamp(kendall_tau(teacher_perm, retrieval_order) - 0.1 * repair_count, "
    "-1, 1); retrieval-agreement proxy, tau := 1 for single-candidate lists";

struct TeacherLabel {
  std::string query_id;
  // In the order presented to the teacher (retrieval order).
  std::vector<std::string> candidate_ids;
  Permutation teacher_perm;
  double confidence = 0.0;
  std::size_t repair_count = 0;
  std::string backend_tag;
};

/// Kendall tau between the teacher order and the retrieval order, minus
/// kRepairPenalty per repair, clamped to [-1, 1].
double ConfidenceScore(const TeacherLabel& label);

struct FilteredLabels {
  std::vector<TeacherLabel> labels;
  // Fewer labels than the budget were available.
  bool under_budget = false;
};

/// The `budget` most confident labels, confidence descending, ties by
/// query id ascending.
FilteredLabels ConfidenceFilter(std::vector<TeacherLabel> labels,
                                std::size_t budget);

nlohmann::json ToJson(const TeacherLabel& label);
/// Validates the permutation against the candidate list.
TeacherLabel LabelFromJson(const nlohmann::json& j);

/// Reads a label file, skipping the manifest header line.
std::vector<TeacherLabel> ReadLabels(std::istream& in);
std::vector<TeacherLabel> ReadLabels(const std::filesystem::path& path);

}  // namespace ranknexus::distill
