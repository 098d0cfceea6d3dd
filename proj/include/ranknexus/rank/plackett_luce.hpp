#pragma once

#include <optional>
#include <vector>

#include "ranknexus/core/permutation.hpp"
#include "ranknexus/core/types.hpp"

namespace ranknexus::rank {

inline constexpr double kTrainingTemperature = 0.1;

struct LossReport {
  double loss = 0.0;
  // Negative log of each sequential choice factor; they sum to `loss`.
  std::vector<double> per_step_terms;
  std::optional<ScoreVector> gradient;
  double temperature = 1.0;
};

/// Probability of `perm` under the Plackett-Luce model with the given
/// scores: the product over positions i of
///   exp(s[perm(i)]) / sum_{j >= i} exp(s[perm(j)]),
/// accumulated in log space. Throws LengthMismatch.
double PlackettLuceProb(const ScoreVector& scores, const Permutation& perm);

/// Log of PlackettLuceProb.
double PlackettLuceLogProb(const ScoreVector& scores, const Permutation& perm);

/// Temperature-scaled listwise loss
///   L = -sum_i log( exp(s[perm(i)]/tau) / sum_{j >= i} exp(s[perm(j)]/tau) ).
/// Suffix normalizers use max-shifted log-sum-exp, which matters at tau = 0.1.
/// Throws LengthMismatch, NonPositiveTemperature.
LossReport ListwiseLoss(const ScoreVector& scores, const Permutation& perm,
                        double tau, bool with_gradient = false);

/// dL/ds_k = (1/tau) * (sum over suffixes i that still contain k of the
/// softmax weight of k within suffix i) - 1/tau.
ScoreVector ListwiseLossGrad(const ScoreVector& scores, const Permutation& perm,
                             double tau);

}  // namespace ranknexus::rank
