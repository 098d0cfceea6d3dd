#include "ranknexus/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ranknexus/error.hpp"

namespace ranknexus::eval {

std::string_view ToString(Gain g) {
  return g == Gain::kLinear ? "linear" : "exponential";
}

Gain ParseGain(std::string_view s) {
  if (s == "linear") return Gain::kLinear;
  if (s == "exponential" || s == "exp") return Gain::kExponential;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown gain '" + std::string(s) + "'");
}

namespace {

const std::vector<RunEntry>& Ranked(const RunByQuery& run,
                                    const std::string& qid) {
  static const std::vector<RunEntry> kEmpty;
  auto it = run.find(qid);
  return it == run.end() ? kEmpty : it->second;
}

double GainOf(int grade, Gain gain) {
  if (grade <= 0) return 0.0;
  return gain == Gain::kLinear ? static_cast<double>(grade)
                               : std::exp2(static_cast<double>(grade)) - 1.0;
}

double Discount(std::size_t rank) {
  return 1.0 / std::log2(static_cast<double>(rank) + 1.0);
}

double Mean(const std::map<std::string, double>& values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& [_, v] : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

MetricResult NdcgAtK(const Qrels& qrels, const RunByQuery& run, std::size_t k,
                     Gain gain) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  MetricResult out;
  for (const auto& qid : qrels.QueryIds()) {
    const auto& judged = qrels.ForQuery(qid);
    std::vector<int> ideal;
    ideal.reserve(judged.size());
    for (const auto& [_, g] : judged) ideal.push_back(g);
    std::sort(ideal.begin(), ideal.end(), std::greater<>());
    double idcg = 0.0;
    for (std::size_t r = 0; r < std::min(k, ideal.size()); ++r) {
      idcg += GainOf(ideal[r], gain) * Discount(r + 1);
    }
    double dcg = 0.0;
    const auto& ranked = Ranked(run, qid);
    for (std::size_t r = 0; r < std::min(k, ranked.size()); ++r) {
      auto it = judged.find(ranked[r].doc_id);
      if (it != judged.end()) dcg += GainOf(it->second, gain) * Discount(r + 1);
    }
    out.per_query[qid] = idcg > 0.0 ? dcg / idcg : 0.0;
  }
  out.mean = Mean(out.per_query);
  return out;
}

MetricResult Mrr(const Qrels& qrels, const RunByQuery& run, int rel_threshold) {
  MetricResult out;
  for (const auto& qid : qrels.QueryIds()) {
    const auto& judged = qrels.ForQuery(qid);
    const auto& ranked = Ranked(run, qid);
    double rr = 0.0;
    for (std::size_t r = 0; r < ranked.size(); ++r) {
      auto it = judged.find(ranked[r].doc_id);
      if (it != judged.end() && it->second >= rel_threshold) {
        rr = 1.0 / static_cast<double>(r + 1);
        break;
      }
    }
    out.per_query[qid] = rr;
  }
  out.mean = Mean(out.per_query);
  return out;
}

RecallResult RecallAtK(const Qrels& qrels, const RunByQuery& run,
                       std::size_t k, int rel_threshold) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  RecallResult out;
  std::map<std::string, std::vector<double>> by_group;
  for (const auto& qid : qrels.QueryIds()) {
    const auto& judged = qrels.ForQuery(qid);
    std::size_t relevant = 0;
    for (const auto& [_, g] : judged) relevant += g >= rel_threshold ? 1 : 0;
    if (relevant == 0) {
      out.excluded.push_back(qid);
      continue;
    }
    const auto& ranked = Ranked(run, qid);
    std::size_t hits = 0;
    for (std::size_t r = 0; r < std::min(k, ranked.size()); ++r) {
      auto it = judged.find(ranked[r].doc_id);
      if (it != judged.end() && it->second >= rel_threshold) ++hits;
    }
    const double recall =
        static_cast<double>(hits) / static_cast<double>(relevant);
    out.per_query[qid] = recall;
    auto g = qrels.group_of.find(qid);
    // "\x1f" keeps singleton groups from colliding with real group keys.
    by_group[g != qrels.group_of.end() ? g->second : "\x1f" + qid].push_back(
        recall);
  }
  out.micro = Mean(out.per_query);
  if (qrels.group_of.empty()) {
    out.macro = out.micro;
    out.groups = out.per_query.size();
  } else {
    double sum = 0.0;
    for (const auto& [_, values] : by_group) {
      double s = 0.0;
      for (double v : values) s += v;
      sum += s / static_cast<double>(values.size());
    }
    out.groups = by_group.size();
    out.macro = by_group.empty() ? 0.0 : sum / static_cast<double>(by_group.size());
  }
  return out;
}

double KendallTau(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "kendall_tau over permutations of different length");
  }
  const std::size_t n = a.size();
  if (n < 2) throw Error(ErrorCode::kTooShort, "kendall_tau needs n >= 2");
  const auto ra = a.Ranks();
  const auto rb = b.Ranks();
  long long concordant = 0, discordant = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool before_a = ra[i] < ra[j];
      const bool before_b = rb[i] < rb[j];
      (before_a == before_b ? concordant : discordant) += 1;
    }
  }
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return static_cast<double>(concordant - discordant) / pairs;
}

nlohmann::json Evaluate(const Qrels& qrels, const RunByQuery& run,
                        const EvalConfig& config) {
  nlohmann::json report;
  report["config"] = {
      {"gain", std::string(ToString(config.gain))},
      {"ndcg_cutoffs", config.ndcg_cutoffs},
      {"recall_cutoffs", config.recall_cutoffs},
      {"rel_threshold", config.rel_threshold},
      {"grouping_source", config.grouping_source},
      {"aggregation",
       "micro = mean over queries; macro = mean over groups of per-group "
       "query means"},
  };
  nlohmann::json means = nlohmann::json::object();
  nlohmann::json per_query = nlohmann::json::object();
  auto put = [&](const std::string& name, const std::map<std::string, double>& pq) {
    for (const auto& [qid, v] : pq) per_query[qid][name] = v;
  };
  for (std::size_t k : config.ndcg_cutoffs) {
    const std::string name = "ndcg@" + std::to_string(k);
    auto r = NdcgAtK(qrels, run, k, config.gain);
    means[name] = r.mean;
    put(name, r.per_query);
  }
  if (config.mrr) {
    auto r = Mrr(qrels, run, config.rel_threshold);
    means["mrr"] = r.mean;
    put("mrr", r.per_query);
  }
  nlohmann::json excluded = nlohmann::json::array();
  for (std::size_t k : config.recall_cutoffs) {
    const std::string name = "recall@" + std::to_string(k);
    auto r = RecallAtK(qrels, run, k, config.rel_threshold);
    means[name + "_micro"] = r.micro;
    means[name + "_macro"] = r.macro;
    put(name, r.per_query);
    excluded = r.excluded;
  }
  report["means"] = std::move(means);
  report["per_query"] = std::move(per_query);
  report["excluded_from_recall"] = std::move(excluded);
  report["num_queries"] = qrels.QueryIds().size();
  return report;
}

}  // namespace ranknexus::eval
