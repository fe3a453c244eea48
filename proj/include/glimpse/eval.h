#ifndef GLIMPSE_EVAL_H_
#define GLIMPSE_EVAL_H_

#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "glimpse/composer.h"
#include "glimpse/corpus_io.h"
#include "glimpse/segmenter.h"

namespace glimpse {

enum class SimilarityKind { kTfidfCosine, kExternalVectors };

SimilarityKind parse_similarity_kind(std::string_view name);
std::string_view to_string(SimilarityKind kind);

// Dense vectors keyed by text id, read from `<text_id>\t<v_1>\t...\t<v_D>`.
// Documents use the id `<submission_id>/<doc_id>`, per-document summaries
// `<submission_id>/<doc_id>#summary`.
using VectorTable = std::map<std::string, std::vector<double>>;
VectorTable load_vectors(const std::filesystem::path& path);
std::string document_vector_id(const Document& doc);
std::string summary_vector_id(const Document& doc);

struct SimilarityOptions {
  SimilarityKind kind = SimilarityKind::kTfidfCosine;
  const VectorTable* vectors = nullptr;
};

// Per document: does the evaluative listener recover it from its summary?
// The listener picks the most similar document; a tie for the top is a miss.
std::vector<bool> identification_hits(const std::vector<std::string>& summaries,
                                      const SubmissionGroup& group,
                                      const SimilarityOptions& options);

// Fraction of documents identified from their summaries.
double discriminativeness(const std::vector<std::string>& summaries,
                          const SubmissionGroup& group,
                          const SimilarityOptions& options);

enum class RougeVariant { kR1, kR2, kRL };

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// ROUGE over lowercase alphanumeric tokens, no stemming or stopwords.
// R-1/R-2 use clipped n-gram counts, R-L the longest common subsequence.
Prf rouge(std::string_view candidate, std::string_view reference, RougeVariant variant,
          std::vector<std::string>* warnings = nullptr);

struct SubmissionEval {
  std::string submission_id;
  std::string method;  // "glimpse" or "random"
  double discriminativeness = 0.0;
  double mean_summary_chars = 0.0;
  double disc_per_char = 0.0;
  std::optional<Prf> rouge1, rouge2, rougeL;
  std::vector<std::string> warnings;
};

struct Stat {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for one value
};

Stat summarize_values(const std::vector<double>& values);

struct EvalReport {
  std::vector<SubmissionEval> per_submission;
  Stat discriminativeness;
  Stat disc_per_char;
  // Present when at least one submission has a gold summary; averaged over
  // those submissions.
  std::optional<std::map<std::string, Stat>> rouge;
};

struct EvalOptions {
  SimilarityOptions similarity;
  MdsVariant rouge_variant = MdsVariant::kUnique;
};

// Scores per-document summaries for discriminativeness and, when the group
// has a gold summary, the consensus summary for ROUGE.
SubmissionEval evaluate_summaries(const std::vector<std::string>& per_doc,
                                  const std::optional<std::string>& consensus,
                                  const SubmissionGroup& group,
                                  const SimilarityOptions& similarity);

SubmissionEval evaluate(const SummaryBundle& bundle, const SubmissionGroup& group,
                        const EvalOptions& options);

EvalReport aggregate(std::vector<SubmissionEval> per_submission);

// Random comparator: every document's summary is a candidate drawn uniformly
// from the whole candidate set, independent of the document.
std::vector<std::string> random_per_doc(const CandidateSet& cands,
                                        std::size_t num_docs, std::mt19937_64& rng);

// `count` distinct candidates drawn uniformly, joined in candidate order.
std::string random_consensus(const CandidateSet& cands, std::size_t count,
                             std::mt19937_64& rng);

std::string report_csv(const EvalReport& report);

}  // namespace glimpse

#endif  // GLIMPSE_EVAL_H_
