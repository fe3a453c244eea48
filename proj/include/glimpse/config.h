#ifndef GLIMPSE_CONFIG_H_
#define GLIMPSE_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "glimpse/composer.h"
#include "glimpse/corpus_io.h"
#include "glimpse/eval.h"
#include "glimpse/likelihood.h"
#include "glimpse/rsa.h"
#include "glimpse/segmenter.h"

namespace glimpse {

// Everything one CLI run needs. Keys use the flat dotted names accepted in
// config files and as --<key> flags:
//
//   input.path, input.format, input.candidates, output.dir, jobs,
//   segmenter.min_chars, segmenter.max_chars, segmenter.abbreviations,
//   scorer.kind, scorer.smoothing_alpha, scorer.floor_logprob,
//   scorer.temperature, scorer.external_dir,
//   rsa.iterations, rsa.rationality_lambda, rsa.cost_per_char, rsa.trace,
//   composer.n_common, composer.n_unique, composer.per_doc_n,
//   composer.variant, eval.similarity, eval.vectors, eval.random_baseline,
//   eval.seed
struct RunConfig {
  std::filesystem::path input_path;
  CorpusFormat input_format = CorpusFormat::kJsonLines;
  // Optional JSON lines of {submission_id, doc_id, text}; replaces extraction.
  std::filesystem::path candidates_path;
  std::filesystem::path output_dir = "glimpse_out";
  std::size_t jobs = 1;

  SegmenterConfig segmenter;
  ScorerConfig scorer;
  // Directory holding <submission_id>.matrix.tsv for scorer.kind = external.
  std::filesystem::path external_dir;
  RsaConfig rsa;
  ComposerConfig composer;

  SimilarityKind similarity = SimilarityKind::kTfidfCosine;
  std::filesystem::path vectors_path;
  bool random_baseline = false;
  std::uint64_t seed = 0;

  // Sets one key; throws ConfigError for unknown keys or bad values.
  void set(std::string_view key, std::string_view value);
  // Checks numeric bounds and that referenced paths exist.
  void validate() const;

  static const std::vector<std::string>& keys();
};

// Parses `key = value` lines; `#` starts a comment line. Later keys win.
std::map<std::string, std::string> parse_key_values(std::string_view contents,
                                                    const std::string& source);

RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace glimpse

#endif  // GLIMPSE_CONFIG_H_
