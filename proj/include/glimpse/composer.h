#ifndef GLIMPSE_COMPOSER_H_
#define GLIMPSE_COMPOSER_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "glimpse/corpus_io.h"
#include "glimpse/rsa.h"
#include "glimpse/segmenter.h"

namespace glimpse {

enum class MdsVariant { kSpeaker, kUnique };

MdsVariant parse_mds_variant(std::string_view name);
std::string_view to_string(MdsVariant variant);

struct PerDocSummary {
  std::string doc_id;
  std::size_t doc_index = 0;
  std::vector<std::size_t> candidates;  // in document order
  std::string text;
};

struct MdsSummary {
  MdsVariant variant = MdsVariant::kUnique;
  std::vector<std::size_t> common;  // candidate-set order
  std::vector<std::size_t> unique;  // candidate-set order
  std::string text;

  // common block followed by unique block
  std::vector<std::size_t> candidates() const;
};

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;

  std::string hex() const;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kCommonColor{91, 141, 239};
inline constexpr Rgb kUniqueColor{239, 83, 80};
inline constexpr int kColorBuckets = 10;

struct Highlight {
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t candidate = 0;
  double score = 0.0;  // uniqueness, nats
  Rgb color;
  int bucket = 0;  // 0 = most common .. kColorBuckets - 1 = most unique
};

// Position of a uniqueness score on the common-to-unique scale, anchored at
// 0 and ln(num_docs): 0 is pure blue, ln N and above pure red.
double scale_position(double score, std::size_t num_docs);
Rgb scale_color(double position);
int scale_bucket(double position);

struct ComposerConfig {
  std::size_t n_common = 3;
  std::size_t n_unique = 3;
  std::size_t per_doc_n = 1;
  MdsVariant variant = MdsVariant::kUnique;

  void validate() const;
};

struct SummaryBundle {
  std::string submission_id;
  std::vector<PerDocSummary> per_doc;
  MdsSummary mds_speaker;
  MdsSummary mds_unique;
  MdsVariant variant = MdsVariant::kUnique;
  std::vector<std::vector<Highlight>> highlights;  // per document
  std::vector<std::string> warnings;

  const MdsSummary& mds() const {
    return variant == MdsVariant::kSpeaker ? mds_speaker : mds_unique;
  }
};

// Top-n own candidates of each document by final speaker probability,
// rendered in document order.
std::vector<PerDocSummary> compose_per_doc(const RsaResult& result,
                                           const CandidateSet& cands,
                                           const SubmissionGroup& group,
                                           std::size_t n_sentences,
                                           std::vector<std::string>* warnings = nullptr);

// Consensus template: the n_common least unique candidates, then n_unique
// candidates picked by the variant. A candidate picked by both blocks stays
// in the common block. When K < n_common + n_unique the quotas shrink
// proportionally (common gets the floor) and the unique block draws from the
// candidates left after the common block.
MdsSummary compose_mds(const RsaResult& result, const CandidateSet& cands,
                       MdsVariant variant, std::size_t n_common,
                       std::size_t n_unique,
                       std::vector<std::string>* warnings = nullptr);

// One highlight per extractive source span, per document in span order.
std::vector<std::vector<Highlight>> render_highlights(
    const RsaResult& result, const CandidateSet& cands,
    const SubmissionGroup& group, std::vector<std::string>* warnings = nullptr);

SummaryBundle compose_bundle(const RsaResult& result, const CandidateSet& cands,
                             const SubmissionGroup& group,
                             const ComposerConfig& config);

// Standalone HTML page: one section per document with highlighted spans, then
// the per-document and consensus summaries.
std::string render_html(const SummaryBundle& bundle, const CandidateSet& cands,
                        const SubmissionGroup& group);

// Same highlights as 24-bit ANSI background colors.
std::string render_ansi(const SummaryBundle& bundle, const SubmissionGroup& group);

}  // namespace glimpse

#endif  // GLIMPSE_COMPOSER_H_
