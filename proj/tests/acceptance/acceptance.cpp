// Acceptance harness: one PASS/FAIL line per criterion, exit 1 if any fail.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli_support.hpp"
#include "oracles.hpp"
#include "ranknexus/core/permutation.hpp"
#include "ranknexus/core/types.hpp"
#include "ranknexus/distill/label.hpp"
#include "ranknexus/embed/embedding.hpp"
#include "ranknexus/embed/selection.hpp"
#include "ranknexus/error.hpp"
#include "ranknexus/eval/metrics.hpp"
#include "ranknexus/eval/trec.hpp"
#include "ranknexus/rank/plackett_luce.hpp"
#include "ranknexus/rerank/parse.hpp"

namespace rn = ranknexus;
namespace ts = testing_support;

namespace {

// Pinned tolerances and limits.
constexpr double kProbSumTol = 1e-9;
constexpr double kLossTol = 1e-9;
constexpr double kGradRelTol = 1e-4;
constexpr double kGradSumTol = 1e-9;
constexpr double kFdStep = 1e-5;
constexpr double kLn6Tol = 1e-9;
constexpr double kMetricTol = 1e-12;
constexpr double kHandNdcgTol = 1e-9;
constexpr double kHandNdcg = 0.79670758099050665907;
constexpr double kPlSeconds = 10.0;
constexpr double kGreedyEquivSeconds = 30.0;
constexpr double kLargeSelectionSeconds = 600.0;
constexpr double kEndToEndSeconds = 30.0;

struct Outcome {
  bool pass = true;
  std::string detail;
  void Require(bool ok, const std::string& why) {
    if (!ok && pass) {
      pass = false;
      detail = why;
    }
  }
};

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

std::string Fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

rn::Permutation Perm(const std::vector<std::size_t>& one_based) {
  return rn::Permutation::FromOneBased(one_based, one_based.size());
}

std::vector<double> RandomScores(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> s(n);
  for (auto& x : s) x = g(rng);
  return s;
}

std::vector<std::size_t> RandomPerm(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{1});
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

rn::embed::EmbeddingSet RandomSet(std::mt19937_64& rng, std::size_t n, std::size_t d) {
  std::normal_distribution<float> g(0.0f, 1.0f);
  std::vector<rn::embed::EmbeddingRecord> recs(n);
  for (std::size_t i = 0; i < n; ++i) {
    recs[i].id = "r" + std::to_string(i);
    recs[i].vector.resize(d);
    for (auto& x : recs[i].vector) x = g(rng);
  }
  return rn::embed::EmbeddingSet(std::move(recs));
}

// 1. Probabilities over all permutations sum to one; loss is -log prob.
Outcome PlackettLuceConsistency() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  double worst_sum = 0, worst_loss = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 6);
    const auto s = RandomScores(rng, n);
    const rn::ScoreVector sv(s);
    long double total = 0;
    for (const auto& p : oracle::AllPermutations(n)) {
      total += rn::rank::PlackettLuceProb(sv, Perm(p));
      for (double tau : {0.1, 1.0, 2.5}) {
        std::vector<double> scaled(s);
        for (auto& x : scaled) x /= tau;
        const double loss = rn::rank::ListwiseLoss(sv, Perm(p), tau).loss;
        const double direct =
            -std::log(rn::rank::PlackettLuceProb(rn::ScoreVector(scaled), Perm(p)));
        const double ref = static_cast<double>(oracle::ListwiseLoss(s, p, tau));
        if (std::isfinite(direct)) {
          worst_loss = std::max(worst_loss, std::abs(loss - direct));
        }
        worst_loss = std::max(worst_loss, std::abs(loss - ref));
      }
    }
    worst_sum = std::max(worst_sum, static_cast<double>(std::abs(total - 1.0L)));
  }
  const double secs = Seconds(start);
  o.Require(worst_sum <= kProbSumTol, "sum off by " + Fmt(worst_sum));
  o.Require(worst_loss <= kLossTol, "loss off by " + Fmt(worst_loss));
  o.Require(secs < kPlSeconds, "took " + Fmt(secs) + " s");
  if (o.pass) {
    o.detail = "max |sum-1| " + Fmt(worst_sum) + ", max loss err " + Fmt(worst_loss) + ", " +
               Fmt(secs) + " s";
  }
  return o;
}

// 2. Analytic gradient against central finite differences.
Outcome GradientCheck() {
  Outcome o;
  std::mt19937_64 rng(202);
  double worst_rel = 0, worst_sum = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng() % 9;
    const double tau = t % 2 == 0 ? 0.1 : 1.0;
    const auto s = RandomScores(rng, n);
    const auto p = RandomPerm(rng, n);
    const auto g = rn::rank::ListwiseLossGrad(rn::ScoreVector(s), Perm(p), tau);
    const auto fd = oracle::FiniteDifferenceGrad(s, p, tau, kFdStep);
    double scale = 0, err = 0, sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      scale = std::max(scale, std::abs(fd[i]));
      err = std::max(err, std::abs(g[i] - fd[i]));
      sum += g[i];
    }
    worst_rel = std::max(worst_rel, scale > 0 ? err / scale : err);
    worst_sum = std::max(worst_sum, std::abs(sum));
  }
  o.Require(worst_rel < kGradRelTol, "relative error " + Fmt(worst_rel));
  o.Require(worst_sum <= kGradSumTol, "component sum " + Fmt(worst_sum));
  if (o.pass) o.detail = "max rel err " + Fmt(worst_rel) + ", max |sum| " + Fmt(worst_sum);
  return o;
}

// 3. Equal scores, n = 3, tau = 1: loss = ln 6.
Outcome UniformLoss() {
  Outcome o;
  const double loss =
      rn::rank::ListwiseLoss(rn::ScoreVector({0.7, 0.7, 0.7}), Perm({2, 3, 1}), 1.0).loss;
  const double err = std::abs(loss - std::log(6.0));
  o.Require(err <= kLn6Tol, "loss " + Fmt(loss));
  if (o.pass) o.detail = "|loss - ln 6| = " + Fmt(err);
  return o;
}

// 4. Incremental greedy equals the brute-force replay; scale invariance.
Outcome GreedyEquivalence() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(404);
  for (int t = 0; t < 200 && o.pass; ++t) {
    const std::size_t n = 1 + rng() % 15;
    const std::size_t k = 1 + rng() % std::min<std::size_t>(6, n);
    const std::size_t d = 1 + rng() % 12;
    const auto set = RandomSet(rng, n, d);
    const auto fast = rn::embed::GreedyDiversitySelect(set, k);
    const auto slow = rn::embed::BruteForceDiversityOracle(set, k);
    o.Require(fast.selected_ids == slow.selected_ids, "mismatch on instance " + std::to_string(t));

    std::vector<std::vector<float>> raw;
    for (const auto& r : set.records()) raw.push_back(r.vector);
    const auto literal = oracle::GreedyDiversity(raw, k);
    for (std::size_t i = 0; i < literal.size() && o.pass; ++i) {
      o.Require(fast.selected_ids[i] == set[literal[i]].id,
                "independent replay differs on instance " + std::to_string(t));
    }

    // Powers of two keep the scaled floats exact.
    const float factor = static_cast<float>(std::ldexp(1.0, static_cast<int>(rng() % 9) - 4));
    std::vector<rn::embed::EmbeddingRecord> scaled(set.records().begin(), set.records().end());
    for (auto& r : scaled) {
      for (auto& x : r.vector) x *= factor;
    }
    const auto again = rn::embed::GreedyDiversitySelect(rn::embed::EmbeddingSet(scaled), k);
    o.Require(again.selected_ids == fast.selected_ids,
              "scaling changed instance " + std::to_string(t));
  }
  std::mt19937_64 rng2(405);
  for (int t = 0; t < 50 && o.pass; ++t) {
    const auto set = RandomSet(rng2, 12, 6);
    const double factor = 0.01 + 100.0 * std::uniform_real_distribution<double>(0, 1)(rng2);
    std::vector<rn::embed::EmbeddingRecord> scaled(set.records().begin(), set.records().end());
    for (auto& r : scaled) {
      for (auto& x : r.vector) x = static_cast<float>(x * factor);
    }
    const auto a = rn::embed::GreedyDiversitySelect(set, 6);
    const auto b = rn::embed::GreedyDiversitySelect(rn::embed::EmbeddingSet(scaled), 6);
    o.Require(a.selected_ids == b.selected_ids,
              "arbitrary positive scaling changed instance " + std::to_string(t));
  }
  const double secs = Seconds(start);
  o.Require(secs < kGreedyEquivSeconds, "took " + Fmt(secs) + " s");
  if (o.pass) o.detail = "200 instances identical, scaling invariant, " + Fmt(secs) + " s";
  return o;
}

// 5. Full-scale greedy selection time plus an oracle spot check.
Outcome LargeSelection(std::size_t n, std::size_t d, std::size_t k, std::size_t threads) {
  Outcome o;
  std::mt19937_64 rng(505);
  const auto set = RandomSet(rng, n, d);
  rn::embed::GreedyOptions opts;
  opts.threads = threads;
  const auto start = std::chrono::steady_clock::now();
  const auto sel = rn::embed::GreedyDiversitySelect(set, k, opts);
  const double secs = Seconds(start);
  o.Require(sel.selected_ids.size() == k, "selected " + std::to_string(sel.selected_ids.size()));
  std::vector<std::string> sorted = sel.selected_ids;
  std::sort(sorted.begin(), sorted.end());
  o.Require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "duplicate pick");
  o.Require(secs < kLargeSelectionSeconds, "took " + Fmt(secs) + " s");

  std::vector<std::size_t> prefix(15);
  std::iota(prefix.begin(), prefix.end(), std::size_t{0});
  const auto head = set.Subset(prefix);
  const auto fast = rn::embed::GreedyDiversitySelect(head, 6, opts);
  const auto slow = rn::embed::BruteForceDiversityOracle(head, 6);
  o.Require(fast.selected_ids == slow.selected_ids, "15-record prefix differs from oracle");
  if (o.pass) {
    o.detail = "N=" + std::to_string(n) + " d=" + std::to_string(d) + " k=" + std::to_string(k) +
               " in " + Fmt(secs) + " s, prefix matches oracle";
  }
  return o;
}

// 6. Metrics against brute-force re-implementations.
Outcome MetricOracle() {
  Outcome o;
  std::mt19937_64 rng(606);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    rn::eval::Qrels qrels;
    oracle::Judgments j;
    oracle::Ranking ranking;
    std::vector<rn::eval::RunEntry> entries;
    const std::size_t queries = 1 + rng() % 10;
    const std::size_t pool = 2 + rng() % 60;
    for (std::size_t q = 0; q < queries; ++q) {
      const std::string qid = "q" + std::to_string(q);
      j.queries.push_back(qid);
      const auto docs = RandomPerm(rng, pool);
      const std::size_t judged = 1 + rng() % pool;
      for (std::size_t i = 0; i < judged; ++i) {
        const std::string did = "d" + std::to_string(docs[i]);
        const int grade = static_cast<int>(rng() % 4);
        qrels.Add({qid, did, grade});
        j.grade[{qid, did}] = grade;
      }
      if (rng() % 3 != 0) {
        const std::string g = "g" + std::to_string(rng() % 3);
        qrels.group_of[qid] = g;
        j.group[qid] = g;
      }
      if (rng() % 8 == 0) continue;
      const auto order = RandomPerm(rng, pool);
      const std::size_t depth = 1 + rng() % pool;
      for (std::size_t r = 0; r < depth; ++r) {
        const std::string did = "d" + std::to_string(order[r]);
        ranking[qid].push_back(did);
        entries.push_back({qid, did, r + 1, static_cast<double>(depth - r), "t"});
      }
    }
    const auto run = rn::eval::GroupRun(entries);
    for (std::size_t k : {10u, 50u}) {
      const auto lib = rn::eval::NdcgAtK(qrels, run, k);
      worst = std::max(worst, std::abs(lib.mean - oracle::Ndcg(j, ranking, k, false).mean));
    }
    worst = std::max(worst, std::abs(rn::eval::Mrr(qrels, run).mean -
                                     oracle::Mrr(j, ranking, 1).mean));
    for (std::size_t k : {1u, 3u, 5u}) {
      const auto lib = rn::eval::RecallAtK(qrels, run, k);
      const auto ref = oracle::RecallAt(j, ranking, k, 1);
      worst = std::max(worst, std::abs(lib.micro - ref.micro));
      worst = std::max(worst, std::abs(lib.macro - ref.macro));
    }
  }
  o.Require(worst <= kMetricTol, "max deviation " + Fmt(worst));

  rn::eval::Qrels hand;
  hand.Add({"q", "d1", 3});
  hand.Add({"q", "d2", 1});
  const auto hand_run =
      rn::eval::GroupRun({{"q", "d2", 1, 2.0, "t"}, {"q", "d1", 2, 1.0, "t"}});
  const double got = rn::eval::NdcgAtK(hand, hand_run, 10).mean;
  o.Require(std::abs(got - kHandNdcg) <= kHandNdcgTol, "hand fixture gave " + Fmt(got));
  if (o.pass) o.detail = "100 fixtures, max deviation " + Fmt(worst) + ", hand fixture ok";
  return o;
}

// 7. Parser totality under fuzzing, render/parse round trip.
Outcome ParserTotality() {
  Outcome o;
  std::mt19937_64 rng(707);
  const std::string alphabet = "[]>[]> 0123456789-abc\n\t,.";
  std::size_t unparseable = 0;
  for (int t = 0; t < 10000 && o.pass; ++t) {
    std::string raw;
    const std::size_t len = rng() % 80;
    for (std::size_t i = 0; i < len; ++i) raw += alphabet[rng() % alphabet.size()];
    const std::size_t n = 1 + rng() % 25;
    try {
      const auto parsed = rn::rerank::ParseRanking(raw, n);
      auto v = parsed.perm.OneBased();
      std::sort(v.begin(), v.end());
      bool ok = v.size() == n;
      for (std::size_t i = 0; ok && i < n; ++i) ok = v[i] == i + 1;
      o.Require(ok, "invalid permutation for input #" + std::to_string(t));
    } catch (const rn::Error& e) {
      o.Require(e.code() == rn::ErrorCode::kUnparseable,
                "unexpected error " + std::string(rn::ToString(e.code())));
      ++unparseable;
    }
  }
  for (int t = 0; t < 1000 && o.pass; ++t) {
    const std::size_t n = 1 + rng() % 40;
    const auto p = RandomPerm(rng, n);
    std::string rendered;
    for (std::size_t v : p) rendered += (rendered.empty() ? "[" : " > [") + std::to_string(v) + "]";
    const auto back = rn::rerank::ParseRanking(rendered, n);
    o.Require(back.perm.OneBased() == p && back.repairs.empty(), "round trip failed");
  }
  if (o.pass) {
    o.detail = "10000 fuzzed strings (" + std::to_string(unparseable) +
               " unparseable), 1000 round trips";
  }
  return o;
}

// 8. rerank --listwise with the oracle mock then eval; identity keeps order.
Outcome EndToEndRerank(const std::string& cli) {
  Outcome o;
  ts::TempDir dir;
  const auto w = ts::WriteRerankWorld(dir.path(), 50, 100, 808);
  const auto start = std::chrono::steady_clock::now();
  const auto r = ts::RunCli(cli,
                            {"rerank", "--listwise", "--run", w.run.string(), "--queries",
                             w.queries.string(), "--corpus", w.corpus.string(), "--backend",
                             "mock:oracle", "--oracle-qrels", w.qrels.string(), "-o",
                             (dir / "oracle.trec").string()},
                            dir.path());
  o.Require(r.exit_code == 0, "rerank exited " + std::to_string(r.exit_code) + ": " + r.err);
  const auto e = ts::RunCli(cli,
                            {"eval", "--qrels", w.qrels.string(), "--run",
                             (dir / "oracle.trec").string(), "-o",
                             (dir / "report.json").string()},
                            dir.path());
  o.Require(e.exit_code == 0, "eval exited " + std::to_string(e.exit_code) + ": " + e.err);
  double ndcg = -1;
  if (o.pass) {
    const auto report = nlohmann::json::parse(ts::ReadFile(dir / "report.json"));
    ndcg = report["means"]["ndcg@10"].get<double>();
    o.Require(ndcg == 1.0, "nDCG@10 = " + Fmt(ndcg));
  }
  const auto id = ts::RunCli(cli,
                             {"rerank", "--listwise", "--run", w.run.string(), "--queries",
                              w.queries.string(), "--corpus", w.corpus.string(), "--backend",
                              "mock:identity", "-o", (dir / "identity.trec").string()},
                             dir.path());
  o.Require(id.exit_code == 0, "identity rerank exited " + std::to_string(id.exit_code));
  if (o.pass) {
    const auto before = rn::eval::ReadRun(w.run);
    const auto after = rn::eval::ReadRun(dir / "identity.trec");
    bool same = before.size() == after.size();
    for (std::size_t i = 0; same && i < before.size(); ++i) {
      same = before[i].query_id == after[i].query_id && before[i].doc_id == after[i].doc_id;
    }
    o.Require(same, "identity mock changed the run order");
  }
  const double secs = Seconds(start);
  o.Require(secs < kEndToEndSeconds, "took " + Fmt(secs) + " s");
  if (o.pass) o.detail = "50x100, nDCG@10 = 1, identity order kept, " + Fmt(secs) + " s";
  return o;
}

// 9. Byte-identical distill runs; confidence filter size and order.
Outcome DistillDeterminism(const std::string& cli) {
  Outcome o;
  ts::TempDir dir;
  const auto w = ts::WriteRerankWorld(dir.path(), 30, 25, 909);
  ts::WriteFile(dir / "cfg.json", R"({"top_k": 12, "window": {"size": 6, "stride": 3}})");
  auto distill = [&](const std::string& out) {
    return ts::RunCli(cli,
                      {"--config", (dir / "cfg.json").string(), "--seed", "42",
                       "--parallelism", "3", "distill", "--queries", w.queries.string(),
                       "--query-emb", w.query_emb.string(), "--corpus-emb",
                       w.corpus_emb.string(), "--corpus", w.corpus.string(), "--backend",
                       "mock:oracle", "--oracle-qrels", w.qrels.string(), "-o",
                       (dir / out).string()},
                      dir.path());
  };
  const auto a = distill("a.jsonl");
  const auto b = distill("b.jsonl");
  o.Require(a.exit_code == 0 && b.exit_code == 0, "distill failed: " + a.err + b.err);
  if (o.pass) {
    o.Require(ts::ReadFile(dir / "a.jsonl") == ts::ReadFile(dir / "b.jsonl"),
              "label files differ");
  }
  std::vector<rn::distill::TeacherLabel> labels;
  if (o.pass) labels = rn::distill::ReadLabels(dir / "a.jsonl");
  o.Require(labels.size() == 30, "expected 30 labels");

  std::mt19937_64 rng(910);
  for (int t = 0; t < 200 && o.pass; ++t) {
    std::vector<rn::distill::TeacherLabel> pool;
    const std::size_t count = rng() % 40;
    for (std::size_t i = 0; i < count; ++i) {
      rn::distill::TeacherLabel l;
      l.query_id = "q" + std::to_string(rng() % 500);
      const std::size_t n = 1 + rng() % 8;
      for (std::size_t c = 0; c < n; ++c) l.candidate_ids.push_back("d" + std::to_string(c));
      l.teacher_perm = Perm(RandomPerm(rng, n));
      l.repair_count = rng() % 3;
      l.confidence = rn::distill::ConfidenceScore(l);
      pool.push_back(l);
    }
    const std::size_t budget = 1 + rng() % 50;
    const auto out = rn::distill::ConfidenceFilter(pool, budget);
    o.Require(out.labels.size() == std::min(budget, count), "wrong filtered size");
    for (std::size_t i = 1; i < out.labels.size() && o.pass; ++i) {
      o.Require(out.labels[i - 1].confidence >= out.labels[i].confidence,
                "confidence increased");
    }
  }
  if (o.pass) o.detail = "two 30-query runs byte-identical, 200 filter checks";
  return o;
}

// 10. TREC files round-trip byte for byte; malformed lines name their line.
Outcome TrecIo() {
  Outcome o;
  const std::string qrels_text =
      "301 0 FBIS3-10082 1\n301 0 FBIS3-10169 0\n302 0 LA010189-0001 2\n";
  const std::string run_text =
      "301 Q0 FBIS3-10082 1 14.2753 bm25\n"
      "301 Q0 FBIS3-10169 2 13.0001 bm25\n"
      "301 Q0 FT911-3 3 -2.5e-05 bm25\n"
      "302 Q0 LA010189-0001 1 1e+21 bm25\n";
  std::istringstream qin(qrels_text);
  std::ostringstream qout;
  rn::eval::WriteQrels(rn::eval::ReadQrels(qin), qout);
  o.Require(qout.str() == qrels_text, "qrels round trip differs");
  std::istringstream rin(run_text);
  std::ostringstream rout;
  rn::eval::WriteRun(rn::eval::ReadRun(rin), rout);
  o.Require(rout.str() == run_text, "run round trip differs");

  struct Bad {
    std::string text;
    bool is_run;
    std::size_t line;
  };
  const std::vector<Bad> bad = {
      {"301 0 a 1\n301 0 b\n", false, 2},
      {"301 0 a 1\n\n301 0 b x\n", false, 3},
      {"301 Q0 a 1 2.0 t\n301 Q0 b two 1.0 t\n", true, 2},
      {"301 Q0 a 1 nan_score t\n", true, 1},
      {"301 Q0 a 1 2 t\n301 Q0 b 2 1 t extra\n", true, 2},
  };
  for (const auto& b : bad) {
    std::istringstream in(b.text);
    try {
      if (b.is_run) {
        rn::eval::ReadRun(in);
      } else {
        rn::eval::ReadQrels(in);
      }
      o.Require(false, "accepted malformed input");
    } catch (const rn::Error& e) {
      o.Require(e.code() == rn::ErrorCode::kMalformedLine && e.position() == b.line,
                std::string("wrong report: ") + e.what());
      o.Require(std::string(e.what()).find("line " + std::to_string(b.line)) !=
                    std::string::npos,
                std::string("message lacks line number: ") + e.what());
    }
  }
  if (o.pass) o.detail = "byte-exact round trips, 5 malformed inputs located";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string cli;
  std::size_t large_n = 50000, large_d = 512, large_k = 2100, threads = 0;
  app.add_option("--cli", cli, "Path to the ranknexus executable")->required();
  app.add_option("--large-n", large_n)->capture_default_str();
  app.add_option("--large-d", large_d)->capture_default_str();
  app.add_option("--large-k", large_k)->capture_default_str();
  app.add_option("--threads", threads, "Scan threads for criterion 5 (0 = all cores)");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Plackett-Luce consistency", PlackettLuceConsistency},
      {"gradient check", GradientCheck},
      {"uniform-score loss", UniformLoss},
      {"greedy selection equivalence", GreedyEquivalence},
      {"selection performance",
       [&] { return LargeSelection(large_n, large_d, large_k, threads); }},
      {"metric oracle", MetricOracle},
      {"parser totality", ParserTotality},
      {"end-to-end rerank", [&] { return EndToEndRerank(cli); }},
      {"distillation determinism", [&] { return DistillDeterminism(cli); }},
      {"TREC I/O", TrecIo},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
