#include "ranknexus/rank/plackett_luce.hpp"

#include <algorithm>
#include <cmath>

#include "ranknexus/error.hpp"

namespace ranknexus::rank {

namespace {

void CheckLengths(const ScoreVector& scores, const Permutation& perm) {
  if (scores.size() != perm.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(scores.size()) + " scores vs permutation of " +
                    std::to_string(perm.size()));
  }
}

void CheckTemperature(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw Error(ErrorCode::kNonPositiveTemperature,
                "temperature must be a positive finite real");
  }
}

double LogAddExp(double a, double b) {
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  if (hi == -INFINITY) return hi;
  return hi + std::log1p(std::exp(lo - hi));
}

// Scores gathered in permutation order and divided by tau.
std::vector<double> Ordered(const ScoreVector& scores, const Permutation& perm,
                            double tau) {
  std::vector<double> x(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    x[i] = scores[perm.index0(i)] / tau;
  }
  return x;
}

// lse[i] = log sum_{j >= i} exp(x[j]).
std::vector<double> SuffixLogSumExp(const std::vector<double>& x) {
  std::vector<double> lse(x.size());
  double acc = -INFINITY;
  for (std::size_t i = x.size(); i-- > 0;) {
    acc = LogAddExp(x[i], acc);
    lse[i] = acc;
  }
  return lse;
}

// log(1 + exp(z)) without overflow or loss of small values.
double Softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

// -log of each sequential choice factor. Written as softplus of the gap to
// the rest of the suffix so a dominant item does not cancel against its own
// normalizer.
std::vector<double> StepTerms(const std::vector<double>& x) {
  const auto lse = SuffixLogSumExp(x);
  std::vector<double> terms(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double rest = i + 1 < x.size() ? lse[i + 1] : -INFINITY;
    terms[i] = Softplus(rest - x[i]);
  }
  return terms;
}

}  // namespace

double PlackettLuceLogProb(const ScoreVector& scores, const Permutation& perm) {
  CheckLengths(scores, perm);
  double log_p = 0.0;
  for (double t : StepTerms(Ordered(scores, perm, 1.0))) log_p -= t;
  return log_p;
}

double PlackettLuceProb(const ScoreVector& scores, const Permutation& perm) {
  return std::exp(PlackettLuceLogProb(scores, perm));
}

LossReport ListwiseLoss(const ScoreVector& scores, const Permutation& perm,
                        double tau, bool with_gradient) {
  CheckTemperature(tau);
  CheckLengths(scores, perm);
  LossReport report;
  report.temperature = tau;
  report.per_step_terms = StepTerms(Ordered(scores, perm, tau));
  for (double t : report.per_step_terms) report.loss += t;
  if (with_gradient) report.gradient = ListwiseLossGrad(scores, perm, tau);
  return report;
}

ScoreVector ListwiseLossGrad(const ScoreVector& scores, const Permutation& perm,
                             double tau) {
  CheckTemperature(tau);
  CheckLengths(scores, perm);
  const std::size_t n = perm.size();
  const auto x = Ordered(scores, perm, tau);
  const auto lse = SuffixLogSumExp(x);

  // Position r (in perm order) takes part in suffixes 0..r.
  std::vector<double> grad(n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    double weight_sum = 0.0;
    for (std::size_t i = 0; i <= r; ++i) weight_sum += std::exp(x[r] - lse[i]);
    grad[perm.index0(r)] = (weight_sum - 1.0) / tau;
  }
  return ScoreVector(std::move(grad));
}

}  // namespace ranknexus::rank
