#include "ranknexus/distill/label.hpp"

#include <algorithm>

#include "ranknexus/core/io.hpp"
#include "ranknexus/error.hpp"
#include "ranknexus/eval/metrics.hpp"

namespace ranknexus::distill {

double ConfidenceScore(const TeacherLabel& label) {
  const std::size_t n = label.teacher_perm.size();
  const double tau =
      n < 2 ? 1.0
            : eval::KendallTau(label.teacher_perm, Permutation::Identity(n));
  return std::clamp(
      tau - kRepairPenalty * static_cast<double>(label.repair_count), -1.0,
      1.0);
}

FilteredLabels ConfidenceFilter(std::vector<TeacherLabel> labels,
                                std::size_t budget) {
  if (budget == 0) throw Error(ErrorCode::kInvalidArgument, "budget must be >= 1");
  std::stable_sort(labels.begin(), labels.end(),
                   [](const TeacherLabel& a, const TeacherLabel& b) {
                     if (a.confidence != b.confidence) {
                       return a.confidence > b.confidence;
                     }
                     return a.query_id < b.query_id;
                   });
  FilteredLabels out;
  out.under_budget = labels.size() < budget;
  if (labels.size() > budget) labels.resize(budget);
  out.labels = std::move(labels);
  return out;
}

nlohmann::json ToJson(const TeacherLabel& label) {
  return {
      {"query_id", label.query_id},
      {"candidate_ids", label.candidate_ids},
      {"teacher_perm", label.teacher_perm.OneBased()},
      {"confidence", label.confidence},
      {"repair_count", label.repair_count},
      {"backend_tag", label.backend_tag},
  };
}

TeacherLabel LabelFromJson(const nlohmann::json& j) {
  TeacherLabel label;
  label.query_id = j.at("query_id").get<std::string>();
  label.candidate_ids = j.at("candidate_ids").get<std::vector<std::string>>();
  const auto perm = j.at("teacher_perm").get<std::vector<std::size_t>>();
  label.teacher_perm =
      Permutation::FromOneBased(perm, label.candidate_ids.size());
  label.confidence = j.at("confidence").get<double>();
  if (label.confidence < -1.0 || label.confidence > 1.0) {
    throw Error(ErrorCode::kInvariantViolation,
                "confidence outside [-1, 1] for " + label.query_id);
  }
  label.repair_count = j.at("repair_count").get<std::size_t>();
  label.backend_tag = j.value("backend_tag", "");
  return label;
}

std::vector<TeacherLabel> ReadLabels(std::istream& in) {
  std::vector<TeacherLabel> labels;
  ForEachJsonLine(in, [&](const nlohmann::json& j, std::size_t line_no) {
    if (j.contains("manifest")) return;
    try {
      labels.push_back(LabelFromJson(j));
    } catch (const Error& e) {
      throw Error(ErrorCode::kMalformedLine, e.what(), line_no);
    }
  });
  return labels;
}

std::vector<TeacherLabel> ReadLabels(const std::filesystem::path& path) {
  auto in = OpenForRead(path);
  return ReadLabels(in);
}

}  // namespace ranknexus::distill
