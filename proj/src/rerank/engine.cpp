#include "ranknexus/rerank/engine.hpp"

#include <algorithm>
#include <numeric>

#include "ranknexus/error.hpp"
#include "ranknexus/rank/pairwise.hpp"

namespace ranknexus::rerank {

void WindowConfig::Validate() const {
  if (stride < 1 || stride > window_size) {
    throw Error(ErrorCode::kInvalidArgument,
                "window needs 1 <= stride <= size, got size " +
                    std::to_string(window_size) + " stride " +
                    std::to_string(stride));
  }
}

std::vector<std::pair<std::size_t, std::size_t>> WindowSchedule(
    std::size_t n, const WindowConfig& window) {
  window.Validate();
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (n == 0) return out;
  std::size_t end = n;
  while (true) {
    const std::size_t begin = end > window.window_size ? end - window.window_size : 0;
    out.emplace_back(begin, end);
    if (begin == 0) break;
    end -= window.stride;
  }
  return out;
}

namespace {

std::vector<Document> ResolveDocs(const CandidateList& candidates,
                                  const Corpus& corpus) {
  if (candidates.doc_ids.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "no candidates for query " + candidates.query_id);
  }
  candidates.Validate();
  std::vector<Document> docs;
  docs.reserve(candidates.doc_ids.size());
  for (const auto& id : candidates.doc_ids) docs.push_back(corpus.At(id));
  return docs;
}

RerankOutcome Finish(const CandidateList& input,
                     std::vector<std::size_t> order0, RerankOutcome outcome) {
  const std::size_t n = order0.size();
  std::vector<std::size_t> one_based(n);
  for (std::size_t i = 0; i < n; ++i) one_based[i] = order0[i] + 1;
  outcome.perm = Permutation::FromOneBased(one_based, n);
  outcome.list.query_id = input.query_id;
  outcome.list.doc_ids = ApplyPermutation(input.doc_ids, outcome.perm);
  std::vector<double> scores(n);
  for (std::size_t r = 0; r < n; ++r) scores[r] = static_cast<double>(n - r);
  outcome.list.first_stage_scores = std::move(scores);
  return outcome;
}

// One backend round trip, rethrowing any failure as BackendError tagged with
// the 1-based unit number.
std::string Ask(Backend& backend, const PromptScript& prompt,
                const RetryPolicy& retry, std::size_t unit,
                RerankOutcome& outcome) {
  try {
    std::size_t attempts = 0;
    auto raw = CompleteWithRetry(backend, prompt, retry, &attempts);
    outcome.backend_calls += attempts;
    return raw;
  } catch (const Error& e) {
    ++outcome.backend_calls;
    throw Error(ErrorCode::kBackendError, e.what(), unit + 1);
  }
}

// Calls the backend and parses the answer with `parse`; an Unparseable
// answer earns exactly one retry with a format reminder. Returns nullopt
// when the second answer is unusable too.
template <typename Parse>
auto AskAndParse(Backend& backend, const PromptScript& prompt,
                 const RetryPolicy& retry, std::size_t unit,
                 RerankOutcome& outcome, Parse parse)
    -> std::optional<decltype(parse(std::string()))> {
  std::string raw = Ask(backend, prompt, retry, unit, outcome);
  try {
    return parse(raw);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kUnparseable) throw;
  }
  const PromptScript reminder = WithFormatReminder(prompt, raw);
  raw = Ask(backend, reminder, retry, unit, outcome);
  try {
    return parse(raw);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kUnparseable) throw;
    outcome.incidents.push_back({unit, e.what()});
    return std::nullopt;
  }
}

void RaiseIfStrict(bool strict, const RerankOutcome& outcome) {
  if (strict && !outcome.incidents.empty()) {
    throw Error(ErrorCode::kUnparseable, outcome.incidents.back().detail,
                outcome.incidents.back().unit + 1);
  }
}

}  // namespace

RerankOutcome RerankListwise(const Query& query, const CandidateList& candidates,
                             const Corpus& corpus, Backend& backend,
                             const ListwiseOptions& options) {
  options.window.Validate();
  if (options.window.window_size < 2) {
    throw Error(ErrorCode::kInvalidArgument, "window size must be >= 2");
  }
  if (options.mode == RerankMode::kMultimodal && !backend.supports_images()) {
    throw Error(ErrorCode::kInvalidArgument,
                "multimodal reranking needs a backend with image support");
  }
  const std::vector<Document> docs = ResolveDocs(candidates, corpus);
  const std::size_t n = docs.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  RerankOutcome outcome;

  const auto schedule = WindowSchedule(n, options.window);
  for (std::size_t w = 0; w < schedule.size(); ++w) {
    const auto [begin, end] = schedule[w];
    const std::size_t len = end - begin;
    if (len < 2) continue;
    ++outcome.windows;

    std::vector<Document> window_docs;
    window_docs.reserve(len);
    for (std::size_t i = begin; i < end; ++i) window_docs.push_back(docs[order[i]]);
    const PromptScript prompt =
        BuildListwisePrompt(query, window_docs, options.mode);

    auto parsed = AskAndParse(
        backend, prompt, options.retry, w, outcome,
        [&](const std::string& raw) {
          return ParseRanking(raw, len, options.strict);
        });
    RaiseIfStrict(options.strict, outcome);
    if (!parsed) continue;

    for (const auto& entry : parsed->repairs) outcome.repairs.push_back({w, entry});
    const std::vector<std::size_t> slice(order.begin() + static_cast<long>(begin),
                                         order.begin() + static_cast<long>(end));
    const auto reordered = ApplyPermutation(slice, parsed->perm);
    std::copy(reordered.begin(), reordered.end(),
              order.begin() + static_cast<long>(begin));
  }
  return Finish(candidates, std::move(order), std::move(outcome));
}

RerankOutcome RerankPairwise(const Query& query, const CandidateList& candidates,
                             const Corpus& corpus, Backend& backend,
                             const PairwiseOptions& options) {
  const std::vector<Document> docs = ResolveDocs(candidates, corpus);
  const std::size_t n = docs.size();
  RerankOutcome outcome;

  std::vector<std::size_t> order;
  order.reserve(n);
  if (!options.tournament) {
    std::vector<std::size_t> relevant, irrelevant;
    for (std::size_t i = 0; i < n; ++i) {
      const auto answer = AskAndParse(
          backend, BuildPairwisePrompt(query, docs[i]), options.retry, i,
          outcome, [](const std::string& raw) { return ParseYesNo(raw); });
      RaiseIfStrict(options.strict, outcome);
      (answer.value_or(false) ? relevant : irrelevant).push_back(i);
    }
    order = relevant;
    order.insert(order.end(), irrelevant.begin(), irrelevant.end());
    return Finish(candidates, std::move(order), std::move(outcome));
  }

  rank::WinMatrix wins(n);
  std::size_t call = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto parsed = AskAndParse(
          backend, BuildComparisonPrompt(query, docs[i], docs[j]),
          options.retry, call++, outcome, [&](const std::string& raw) {
            return ParseRanking(raw, 2, options.strict);
          });
      RaiseIfStrict(options.strict, outcome);
      if (parsed && parsed->perm[0] == 1) wins.Set(i, j, 1.0);
    }
  }
  const auto ranking = rank::PairwiseRank(wins);
  for (std::size_t pos = 0; pos < n; ++pos) order.push_back(ranking.perm.index0(pos));
  return Finish(candidates, std::move(order), std::move(outcome));
}

}  // namespace ranknexus::rerank
