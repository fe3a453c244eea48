#ifndef GLIMPSE_SEGMENTER_H_
#define GLIMPSE_SEGMENTER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "glimpse/corpus_io.h"

namespace glimpse {

// Where a candidate occurs: byte offsets [start, end) into the NFC text of
// document `doc_index`. Imported candidates carry a synthetic span covering
// the whole document; those spans are not readable text.
struct SourceSpan {
  std::size_t doc_index = 0;
  std::size_t start = 0;
  std::size_t end = 0;
  bool synthetic = false;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

struct Candidate {
  std::string id;
  std::string text;  // display text, whitespace collapsed
  std::string key;   // dedup key, see text::dedup_key
  std::vector<SourceSpan> sources;
  std::size_t length_chars = 0;

  bool has_source(std::size_t doc_index) const;
  bool is_extractive() const;
};

struct CandidateSet {
  std::vector<Candidate> candidates;
  std::vector<std::string> warnings;

  std::size_t size() const { return candidates.size(); }
  const Candidate& operator[](std::size_t i) const { return candidates[i]; }
  std::vector<std::string> ids() const;
  std::vector<std::size_t> lengths() const;
};

struct SegmenterConfig {
  std::size_t min_chars = 20;
  std::size_t max_chars = 500;
  std::vector<std::string> abbreviations = default_abbreviations();

  static std::vector<std::string> default_abbreviations();
};

// Sentence spans of one document, before length filtering. Line-leading
// quote and list markers (`>`, `*`, `-`, `+`, `1.`, `2)`) and blank lines are
// hard boundaries and never part of a span.
std::vector<std::pair<std::size_t, std::size_t>> split_sentences(
    std::string_view text, const std::vector<std::string>& abbreviations);

// Extractive candidate set. Sentences with equal dedup keys merge into one
// candidate listing every occurrence; candidates are ordered by their first
// occurrence (document index, span start) and named c0, c1, ...
CandidateSet extract_candidates(const SubmissionGroup& group,
                                const SegmenterConfig& config);

struct ImportedCandidate {
  std::string doc_id;
  std::string text;
};

// Candidates produced elsewhere (e.g. an abstractive summarizer), attached to
// their documents with synthetic spans. Throws DataError on an unknown doc_id.
CandidateSet import_candidates(const SubmissionGroup& group,
                               const std::vector<ImportedCandidate>& records);

}  // namespace glimpse

#endif  // GLIMPSE_SEGMENTER_H_
