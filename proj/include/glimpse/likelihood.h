#ifndef GLIMPSE_LIKELIHOOD_H_
#define GLIMPSE_LIKELIHOOD_H_

#include <filesystem>
#include <string_view>

#include "glimpse/corpus_io.h"
#include "glimpse/segmenter.h"
#include "glimpse/truth_matrix.h"

namespace glimpse {

enum class ScorerKind { kUnigramLm, kTfidfCosine, kExternal };

ScorerKind parse_scorer_kind(std::string_view name);
std::string_view to_string(ScorerKind kind);

struct ScorerConfig {
  ScorerKind kind = ScorerKind::kUnigramLm;
  double smoothing_alpha = 0.1;
  double floor_logprob = -18.0;
  double temperature = 1.0;

  // Throws ConfigError when a bound is violated.
  void validate() const;
};

// Mean per-token log-probability of the candidate under each document's
// add-alpha smoothed unigram model. The vocabulary is every token of the
// group's documents and candidates. Entries are divided by the temperature
// and floored at floor_logprob.
TruthMatrix score_unigram(const SubmissionGroup& group, const CandidateSet& cands,
                          const ScorerConfig& cfg);

// ln(eps + max(0, cos(doc, cand))) over TF-IDF vectors fitted on the group's
// documents, eps = exp(floor_logprob); divided by the temperature and floored.
TruthMatrix score_tfidf(const SubmissionGroup& group, const CandidateSet& cands,
                        const ScorerConfig& cfg);

// Loads a matrix computed elsewhere and reorders it to the group's document
// order and the candidate-set order. Throws DataError listing missing and
// unexpected ids.
TruthMatrix score_external(const std::filesystem::path& path,
                           const SubmissionGroup& group,
                           const CandidateSet& cands);
TruthMatrix align_matrix(TruthMatrix m, const SubmissionGroup& group,
                         const CandidateSet& cands);

// Dispatches on cfg.kind; kExternal requires `external_path`.
TruthMatrix score(const SubmissionGroup& group, const CandidateSet& cands,
                  const ScorerConfig& cfg,
                  const std::filesystem::path& external_path = {});

}  // namespace glimpse

#endif  // GLIMPSE_LIKELIHOOD_H_
