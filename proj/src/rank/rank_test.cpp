#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "expect_error.hpp"
#include "oracles.hpp"
#include "ranknexus/rank/pairwise.hpp"
#include "ranknexus/rank/plackett_luce.hpp"

namespace rn = ranknexus;
namespace rk = ranknexus::rank;
using rn::ErrorCode;

namespace {

using Idx = std::vector<std::size_t>;

rn::Permutation P(const Idx& order) { return rn::ValidatePermutation(order, order.size()); }

std::vector<double> RandomScores(std::mt19937_64& rng, std::size_t n, double spread) {
  std::uniform_real_distribution<double> u(-spread, spread);
  std::vector<double> s(n);
  for (auto& x : s) x = u(rng);
  return s;
}

// Frozen 50-digit evaluations.
constexpr double kProb210 = 0.48633010757520722678;   // scores [2,1,0], perm [1,2,3]
constexpr double kLoss210Tau01 = 9.079985949377762659e-05;
constexpr double kLn6 = 1.7917594692280550008;

TEST(PlackettLuce, Examples) {
  for (const auto& perm : oracle::AllPermutations(3)) {
    EXPECT_NEAR(rk::PlackettLuceProb(rn::ScoreVector({0, 0, 0}), P(perm)), 1.0 / 6, 1e-15);
  }
  EXPECT_DOUBLE_EQ(rk::PlackettLuceProb(rn::ScoreVector({42.0}), P({1})), 1.0);
  EXPECT_NEAR(rk::PlackettLuceProb(rn::ScoreVector({2, 1, 0}), P({1, 2, 3})), kProb210, 1e-15);
  EXPECT_NEAR(static_cast<double>(oracle::PlackettLuce({2, 1, 0}, {1, 2, 3})), kProb210, 1e-15);
}

TEST(PlackettLuce, LengthMismatch) {
  EXPECT_RN_ERROR(rk::PlackettLuceProb(rn::ScoreVector({1, 2}), P({1, 2, 3})),
                  ErrorCode::kLengthMismatch);
}

TEST(PlackettLuce, ExtremeScoresStayFinite) {
  const rn::ScoreVector s({800, -800, 0});
  EXPECT_NEAR(rk::PlackettLuceProb(s, P({1, 3, 2})), 1.0, 1e-12);
  // log(e^-800 / (e^-800 + 1 + e^800)) + log(1 / (1 + e^800)).
  EXPECT_NEAR(rk::PlackettLuceLogProb(s, P({2, 3, 1})), -2400.0, 1e-9);
  EXPECT_TRUE(std::isfinite(rk::PlackettLuceLogProb(s, P({2, 3, 1}))));
}

TEST(PlackettLuce, SumsToOneOverAllPermutations) {
  std::mt19937_64 rng(31);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int t = 0; t < 10; ++t) {
      const rn::ScoreVector s(RandomScores(rng, n, 4));
      double total = 0;
      for (const auto& perm : oracle::AllPermutations(n)) total += rk::PlackettLuceProb(s, P(perm));
      EXPECT_NEAR(total, 1.0, 1e-9);
    }
  }
}

TEST(ListwiseLoss, Examples) {
  const auto single = rk::ListwiseLoss(rn::ScoreVector({3.0}), P({1}), 0.1, true);
  EXPECT_EQ(single.loss, 0.0);
  ASSERT_TRUE(single.gradient);
  EXPECT_EQ(single.gradient->values()[0], 0.0);

  for (double c : {-5.0, 0.0, 2.5}) {
    EXPECT_NEAR(rk::ListwiseLoss(rn::ScoreVector({c, c, c}), P({1, 2, 3}), 1.0).loss, kLn6, 1e-12);
  }
  const auto r = rk::ListwiseLoss(rn::ScoreVector({2, 1, 0}), P({1, 2, 3}), rk::kTrainingTemperature);
  EXPECT_NEAR(r.loss, kLoss210Tau01, 1e-15);
  EXPECT_EQ(r.temperature, 0.1);
}

TEST(ListwiseLoss, ReportInvariants) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng() % 12;
    Idx perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto r = rk::ListwiseLoss(rn::ScoreVector(RandomScores(rng, n, 3)), P(perm), 0.5, true);
    ASSERT_EQ(r.per_step_terms.size(), n);
    double sum = 0;
    for (double term : r.per_step_terms) {
      EXPECT_GE(term, 0.0);
      sum += term;
    }
    EXPECT_NEAR(sum, r.loss, 1e-12);
    EXPECT_GE(r.loss, 0.0);
    ASSERT_TRUE(r.gradient);
    EXPECT_EQ(r.gradient->size(), n);
  }
}

TEST(ListwiseLoss, Errors) {
  EXPECT_RN_ERROR(rk::ListwiseLoss(rn::ScoreVector({1, 2}), P({1, 2}), 0.0),
                  ErrorCode::kNonPositiveTemperature);
  EXPECT_RN_ERROR(rk::ListwiseLoss(rn::ScoreVector({1, 2}), P({1, 2}), -1.0),
                  ErrorCode::kNonPositiveTemperature);
  EXPECT_RN_ERROR(rk::ListwiseLoss(rn::ScoreVector({1}), P({1, 2}), 1.0),
                  ErrorCode::kLengthMismatch);
  EXPECT_RN_ERROR(rk::ListwiseLossGrad(rn::ScoreVector({1}), P({1, 2}), 1.0),
                  ErrorCode::kLengthMismatch);
}

TEST(ListwiseLoss, EqualsNegativeLogProbOfScaledScores) {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 6;
    const double tau = t % 2 ? 0.1 : 1.7;
    auto scores = RandomScores(rng, n, 3);
    Idx perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> scaled(n);
    for (std::size_t i = 0; i < n; ++i) scaled[i] = scores[i] / tau;
    const double loss = rk::ListwiseLoss(rn::ScoreVector(scores), P(perm), tau).loss;
    EXPECT_NEAR(loss, -std::log(rk::PlackettLuceProb(rn::ScoreVector(scaled), P(perm))), 1e-9);
    EXPECT_NEAR(loss, static_cast<double>(oracle::ListwiseLoss(scores, perm, tau)), 1e-9);
  }
}

TEST(ListwiseLoss, TranslationInvariant) {
  std::mt19937_64 rng(34);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng() % 8;
    auto s = RandomScores(rng, n, 3);
    auto shifted = s;
    const double c = RandomScores(rng, 1, 50)[0];
    for (auto& x : shifted) x += c;
    const auto perm = rn::IdentityPermutation(n);
    EXPECT_NEAR(rk::ListwiseLoss(rn::ScoreVector(s), perm, 0.3).loss,
                rk::ListwiseLoss(rn::ScoreVector(shifted), perm, 0.3).loss, 1e-9);
    EXPECT_NEAR(rk::PlackettLuceProb(rn::ScoreVector(s), perm),
                rk::PlackettLuceProb(rn::ScoreVector(shifted), perm), 1e-9);
  }
}

TEST(ListwiseLoss, MinimizedByDescendingScoreOrder) {
  std::mt19937_64 rng(35);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng() % 4;
    const auto s = RandomScores(rng, n, 2);
    const rn::ScoreVector sv(s);
    Idx best;
    double best_loss = INFINITY;
    for (const auto& perm : oracle::AllPermutations(n)) {
      const double l = rk::ListwiseLoss(sv, P(perm), 1.0).loss;
      if (l < best_loss) {
        best_loss = l;
        best = perm;
      }
    }
    for (std::size_t i = 1; i < n; ++i) EXPECT_GE(s[best[i - 1] - 1], s[best[i] - 1]);
  }
}

TEST(ListwiseLossGrad, Examples) {
  EXPECT_EQ(rk::ListwiseLossGrad(rn::ScoreVector({1.0}), P({1}), 0.1).values()[0], 0.0);

  const auto g = rk::ListwiseLossGrad(rn::ScoreVector({0.5, 0.5, 0.5}), P({1, 2, 3}), 1.0);
  const auto fd = oracle::FiniteDifferenceGrad({0.5, 0.5, 0.5}, {1, 2, 3}, 1.0, 1e-5);
  double sum = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(g[i], fd[i], 1e-8);
    sum += g[i];
  }
  EXPECT_NEAR(sum, 0.0, 1e-12);
  // Closed form at uniform scores: 1/3 - 1, 1/3 + 1/2 - 1, 1/3 + 1/2 + 1 - 1.
  EXPECT_NEAR(g[0], -2.0 / 3, 1e-15);
  EXPECT_NEAR(g[1], -1.0 / 6, 1e-15);
  EXPECT_NEAR(g[2], 5.0 / 6, 1e-15);
}

TEST(ListwiseLossGrad, MatchesFiniteDifferencesAtTrainingTemperature) {
  std::mt19937_64 rng(36);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 8;
    // Scores spread so that tau = 0.1 does not saturate every softmax.
    const auto s = RandomScores(rng, n, 0.3);
    Idx perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto g = rk::ListwiseLossGrad(rn::ScoreVector(s), P(perm), 0.1);
    const auto fd = oracle::FiniteDifferenceGrad(s, perm, 0.1, 1e-5);
    double scale = 1e-8, err = 0, sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      scale = std::max(scale, std::abs(fd[i]));
      err = std::max(err, std::abs(g[i] - fd[i]));
      sum += g[i];
    }
    EXPECT_LT(err / scale, 1e-4);
    EXPECT_NEAR(sum, 0.0, 1e-9);
  }
}

TEST(ListwiseLossGrad, AgreesWithLossReport) {
  const rn::ScoreVector s({0.3, -1.2, 2.0, 0.7});
  const auto perm = P({3, 1, 4, 2});
  const auto r = rk::ListwiseLoss(s, perm, 0.25, true);
  const auto g = rk::ListwiseLossGrad(s, perm, 0.25);
  ASSERT_TRUE(r.gradient);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(r.gradient->values()[i], g[i]);
}

// ---- pairwise aggregation

rk::WinMatrix Strict(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> beats) {
  rk::WinMatrix m(n);
  for (auto [i, j] : beats) m.Set(i - 1, j - 1, 1.0);
  return m;
}

TEST(PairwiseRank, Examples) {
  auto r = rk::PairwiseRank(Strict(3, {{1, 2}, {1, 3}, {2, 3}}));
  EXPECT_EQ(r.win_counts, (Idx{2, 1, 0}));
  EXPECT_EQ(r.perm.OneBased(), (Idx{1, 2, 3}));

  r = rk::PairwiseRank(rk::WinMatrix(1));
  EXPECT_EQ(r.win_counts, (Idx{0}));
  EXPECT_EQ(r.perm.OneBased(), (Idx{1}));

  r = rk::PairwiseRank(Strict(3, {{1, 2}, {2, 3}, {3, 1}}));
  EXPECT_EQ(r.win_counts, (Idx{1, 1, 1}));
  EXPECT_EQ(r.perm.OneBased(), (Idx{1, 2, 3}));

  r = rk::PairwiseRank(Strict(4, {{4, 1}, {4, 2}, {4, 3}, {3, 1}, {2, 1}}));
  EXPECT_EQ(r.win_counts, (Idx{0, 1, 1, 3}));
  EXPECT_EQ(r.perm.OneBased(), (Idx{4, 2, 3, 1}));
}

TEST(PairwiseRank, HalfIsNotAWin) {
  rk::WinMatrix m(2, {0.0, 0.5, 0.5, 0.0}, rk::WinMatrix::Mode::kProbabilistic);
  const auto r = rk::PairwiseRank(m);
  EXPECT_EQ(r.win_counts, (Idx{0, 0}));
  m.Set(1, 0, 0.5000001);
  EXPECT_EQ(rk::PairwiseRank(m).perm.OneBased(), (Idx{2, 1}));
}

TEST(WinMatrix, Validation) {
  EXPECT_RN_ERROR(rk::WinMatrix(2, {1, 0, 0, 0}), ErrorCode::kInvalidArgument);
  EXPECT_RN_ERROR(rk::WinMatrix(2, {0, 0.5, 0, 0}), ErrorCode::kInvalidArgument);
  EXPECT_RN_ERROR(rk::WinMatrix(2, {0, 1.5, 0, 0}, rk::WinMatrix::Mode::kProbabilistic),
                  ErrorCode::kInvalidArgument);
  EXPECT_RN_ERROR(rk::WinMatrix(2, {0, 1, 0}), ErrorCode::kLengthMismatch);
  rk::WinMatrix m(3);
  EXPECT_RN_ERROR(m.Set(1, 1, 1.0), ErrorCode::kInvalidArgument);
}

// A strictly increasing map that fixes 0.5 leaves every threshold crossing,
// and therefore the ranking, unchanged.
TEST(PairwiseRank, InvariantUnderMonotoneMapsFixingHalf) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto squash = [](double p) {
    return p <= 0.5 ? 0.5 * std::pow(2 * p, 3.0) : 1 - 0.5 * std::pow(2 * (1 - p), 3.0);
  };
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng() % 7;
    std::vector<double> v(n * n, 0.0), w(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        v[i * n + j] = u(rng);
        w[i * n + j] = squash(v[i * n + j]);
      }
    }
    const auto a = rk::PairwiseRank(rk::WinMatrix(n, v, rk::WinMatrix::Mode::kProbabilistic));
    const auto b = rk::PairwiseRank(rk::WinMatrix(n, w, rk::WinMatrix::Mode::kProbabilistic));
    EXPECT_EQ(a.perm, b.perm);
    EXPECT_EQ(a.win_counts, b.win_counts);
  }
}

}  // namespace
