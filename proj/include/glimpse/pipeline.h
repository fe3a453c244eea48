#ifndef GLIMPSE_PIPELINE_H_
#define GLIMPSE_PIPELINE_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "glimpse/composer.h"
#include "glimpse/config.h"
#include "glimpse/corpus_io.h"
#include "glimpse/eval.h"
#include "glimpse/rsa.h"
#include "glimpse/segmenter.h"
#include "glimpse/truth_matrix.h"

namespace glimpse {

// Candidates, truth matrix and RSA scores for one submission.
struct Analysis {
  SubmissionGroup group;
  CandidateSet candidates;
  TruthMatrix matrix;
  RsaResult rsa;
  bool rsa_from_cache = false;
};

using ImportedBySubmission = std::map<std::string, std::vector<ImportedCandidate>>;

// JSON lines of {submission_id, doc_id, text}.
ImportedBySubmission load_imported_candidates(const std::filesystem::path& path);

// Candidate generation, scoring and RSA for one group. `cached_rsa` is used
// instead of recomputing when its ids and configuration match.
Analysis analyze(const SubmissionGroup& group, const RunConfig& config,
                 const ImportedBySubmission& imported,
                 const std::optional<RsaResult>& cached_rsa = std::nullopt);

// File-system safe form of a submission id used for output file names.
std::string file_stem(const std::string& submission_id);

// Per submission: <stem>.matrix.tsv and <stem>.rsa.json. Every output is
// computed before the first write. Returns the written paths.
std::vector<std::filesystem::path> cmd_score(const RunConfig& config);

// Per submission: <stem>.summary.json and <stem>.highlights.html, reusing
// <stem>.rsa.json from the output directory when it matches.
std::vector<std::filesystem::path> cmd_summarize(const RunConfig& config);

// Writes eval_report.json and eval_report.csv; returns the report.
EvalReport cmd_eval(const RunConfig& config);

// Two short reviews sharing one sentence, each with one sentence of its own.
SubmissionGroup demo_group();

}  // namespace glimpse

#endif  // GLIMPSE_PIPELINE_H_
