#include "glimpse/composer.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>

#include "glimpse/error.h"

namespace glimpse {
namespace {

void warn(std::vector<std::string>* warnings, std::string msg) {
  if (warnings) warnings->push_back(std::move(msg));
}

std::string join_texts(const CandidateSet& cands,
                       const std::vector<std::size_t>& indices) {
  std::string out;
  for (std::size_t i : indices) {
    if (!out.empty()) out += ' ';
    out += cands[i].text;
  }
  return out;
}

std::size_t first_start_in(const Candidate& c, std::size_t doc_index) {
  std::size_t best = std::string::npos;
  for (const SourceSpan& s : c.sources) {
    if (s.doc_index == doc_index) best = std::min(best, s.start);
  }
  return best;
}

std::string html_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string format_score(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Candidate ids picked by each document's speaker, strongest first.
std::vector<std::size_t> speaker_picks(const RsaResult& result) {
  struct Pick {
    double prob;
    std::size_t cand;
    std::size_t doc;
  };
  std::vector<Pick> picks;
  for (std::size_t d = 0; d < result.num_docs(); ++d) {
    std::size_t s = result.speaker_argmax[d];
    picks.push_back({result.speaker(d, s), s, d});
  }
  std::sort(picks.begin(), picks.end(), [](const Pick& a, const Pick& b) {
    if (a.prob != b.prob) return a.prob > b.prob;
    if (a.cand != b.cand) return a.cand < b.cand;
    return a.doc < b.doc;
  });
  std::vector<std::size_t> out;
  for (const Pick& p : picks) {
    if (std::find(out.begin(), out.end(), p.cand) == out.end()) out.push_back(p.cand);
  }
  return out;
}

}  // namespace

MdsVariant parse_mds_variant(std::string_view name) {
  if (name == "speaker") return MdsVariant::kSpeaker;
  if (name == "unique") return MdsVariant::kUnique;
  throw ConfigError("unknown MDS variant '" + std::string(name) + "'");
}

std::string_view to_string(MdsVariant variant) {
  return variant == MdsVariant::kSpeaker ? "speaker" : "unique";
}

std::vector<std::size_t> MdsSummary::candidates() const {
  std::vector<std::size_t> out = common;
  out.insert(out.end(), unique.begin(), unique.end());
  return out;
}

std::string Rgb::hex() const {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

double scale_position(double score, std::size_t num_docs) {
  double max_score = num_docs > 1 ? std::log(static_cast<double>(num_docs)) : 0.0;
  if (max_score <= 0.0) return 0.0;
  return std::clamp(score / max_score, 0.0, 1.0);
}

Rgb scale_color(double position) {
  double t = std::clamp(position, 0.0, 1.0);
  auto mix = [t](std::uint8_t a, std::uint8_t b) {
    return static_cast<std::uint8_t>(std::lround(a + t * (double(b) - double(a))));
  };
  return {mix(kCommonColor.r, kUniqueColor.r), mix(kCommonColor.g, kUniqueColor.g),
          mix(kCommonColor.b, kUniqueColor.b)};
}

int scale_bucket(double position) {
  int b = static_cast<int>(std::floor(std::clamp(position, 0.0, 1.0) * kColorBuckets));
  return std::min(b, kColorBuckets - 1);
}

void ComposerConfig::validate() const {
  if (per_doc_n == 0) throw ConfigError("composer.per_doc_n must be >= 1");
  if (n_common == 0 && n_unique == 0) {
    throw ConfigError("composer.n_common and composer.n_unique cannot both be 0");
  }
}

std::vector<PerDocSummary> compose_per_doc(const RsaResult& result,
                                           const CandidateSet& cands,
                                           const SubmissionGroup& group,
                                           std::size_t n_sentences,
                                           std::vector<std::string>* warnings) {
  if (n_sentences == 0) throw ConfigError("per-document summaries need n >= 1");
  std::vector<PerDocSummary> out;
  for (const Document& doc : group.documents) {
    std::vector<std::size_t> own;
    for (std::size_t s = 0; s < cands.size(); ++s) {
      if (cands[s].has_source(doc.index)) own.push_back(s);
    }
    auto row = result.speaker.row(doc.index);
    std::stable_sort(own.begin(), own.end(), [&](std::size_t a, std::size_t b) {
      return row[a] > row[b];
    });
    if (own.size() < n_sentences) {
      warn(warnings, "document '" + doc.id + "' has " + std::to_string(own.size()) +
                         " own candidates, fewer than " + std::to_string(n_sentences));
    } else {
      own.resize(n_sentences);
    }
    std::sort(own.begin(), own.end(), [&](std::size_t a, std::size_t b) {
      std::size_t sa = first_start_in(cands[a], doc.index);
      std::size_t sb = first_start_in(cands[b], doc.index);
      return sa != sb ? sa < sb : a < b;
    });
    PerDocSummary summary;
    summary.doc_id = doc.id;
    summary.doc_index = doc.index;
    summary.text = join_texts(cands, own);
    summary.candidates = std::move(own);
    out.push_back(std::move(summary));
  }
  return out;
}

MdsSummary compose_mds(const RsaResult& result, const CandidateSet& cands,
                       MdsVariant variant, std::size_t n_common,
                       std::size_t n_unique, std::vector<std::string>* warnings) {
  if (n_common == 0 && n_unique == 0) {
    throw ConfigError("n_common and n_unique cannot both be 0");
  }
  const std::size_t k = cands.size();
  const std::size_t requested = n_common + n_unique;
  const bool shortfall = k < requested;
  std::size_t common_quota = n_common;
  std::size_t unique_quota = n_unique;
  if (shortfall) {
    common_quota = k * n_common / requested;
    unique_quota = std::min(n_unique, k - common_quota);
    warn(warnings, "only " + std::to_string(k) + " candidates for a " +
                       std::to_string(requested) + "-sentence template; using " +
                       std::to_string(common_quota) + " common + " +
                       std::to_string(unique_quota) + " unique");
  }

  std::vector<std::size_t> ascending(k);
  std::iota(ascending.begin(), ascending.end(), 0);
  std::stable_sort(ascending.begin(), ascending.end(), [&](std::size_t a, std::size_t b) {
    return result.uniqueness[a] < result.uniqueness[b];
  });

  MdsSummary out;
  out.variant = variant;
  out.common.assign(ascending.begin(),
                    ascending.begin() + static_cast<std::ptrdiff_t>(common_quota));
  std::set<std::size_t> in_common(out.common.begin(), out.common.end());

  std::vector<std::size_t> pool;
  if (variant == MdsVariant::kUnique) {
    pool.assign(ascending.begin(), ascending.end());
    std::stable_sort(pool.begin(), pool.end(), [&](std::size_t a, std::size_t b) {
      return result.uniqueness[a] > result.uniqueness[b];
    });
  } else {
    pool = speaker_picks(result);
  }
  if (shortfall) {
    std::erase_if(pool, [&](std::size_t s) { return in_common.count(s) > 0; });
  }
  if (pool.size() > unique_quota) pool.resize(unique_quota);
  for (std::size_t s : pool) {
    if (!in_common.count(s)) out.unique.push_back(s);
  }

  std::sort(out.common.begin(), out.common.end());
  std::sort(out.unique.begin(), out.unique.end());
  out.text = join_texts(cands, out.candidates());
  return out;
}

std::vector<std::vector<Highlight>> render_highlights(
    const RsaResult& result, const CandidateSet& cands,
    const SubmissionGroup& group, std::vector<std::string>* warnings) {
  std::vector<std::vector<Highlight>> out(group.size());
  for (std::size_t s = 0; s < cands.size(); ++s) {
    const Candidate& c = cands[s];
    if (!c.is_extractive()) {
      warn(warnings, "candidate " + c.id + " has no text span; not highlighted");
      continue;
    }
    double pos = scale_position(result.uniqueness[s], group.size());
    for (const SourceSpan& span : c.sources) {
      out[span.doc_index].push_back(
          {span.start, span.end, s, result.uniqueness[s], scale_color(pos), scale_bucket(pos)});
    }
  }
  for (auto& doc_highlights : out) {
    std::sort(doc_highlights.begin(), doc_highlights.end(),
              [](const Highlight& a, const Highlight& b) { return a.start < b.start; });
  }
  return out;
}

SummaryBundle compose_bundle(const RsaResult& result, const CandidateSet& cands,
                             const SubmissionGroup& group,
                             const ComposerConfig& config) {
  config.validate();
  SummaryBundle bundle;
  bundle.submission_id = group.submission_id;
  bundle.variant = config.variant;
  bundle.per_doc = compose_per_doc(result, cands, group, config.per_doc_n, &bundle.warnings);
  bundle.mds_speaker = compose_mds(result, cands, MdsVariant::kSpeaker, config.n_common,
                                   config.n_unique, &bundle.warnings);
  bundle.mds_unique = compose_mds(result, cands, MdsVariant::kUnique, config.n_common,
                                  config.n_unique, nullptr);
  bundle.highlights = render_highlights(result, cands, group, &bundle.warnings);
  return bundle;
}

std::string render_html(const SummaryBundle& bundle, const CandidateSet& cands,
                        const SubmissionGroup& group) {
  std::ostringstream os;
  const std::string title = html_escape(bundle.submission_id);
  os << "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n"
     << "<title>" << title << "</title>\n"
     << "<style>body{font-family:sans-serif;max-width:60em;margin:2em auto;"
        "line-height:1.5}section{border-bottom:1px solid #ccc;padding:0.5em 0}"
        ".doc{white-space:pre-wrap}.legend span{padding:0 0.5em}</style>\n"
     << "</head>\n<body>\n<h1>" << title << "</h1>\n<p class=\"legend\">";
  for (int b = 0; b < kColorBuckets; ++b) {
    double pos = (b + 0.5) / kColorBuckets;
    os << "<span style=\"background-color:" << scale_color(pos).hex() << "\">"
       << (b == 0 ? "common" : b == kColorBuckets - 1 ? "unique" : "&nbsp;")
       << "</span>";
  }
  os << "</p>\n";

  for (const Document& doc : group.documents) {
    os << "<section id=\"doc-" << html_escape(doc.id) << "\">\n<h2>"
       << html_escape(doc.id) << "</h2>\n<div class=\"doc\">";
    std::size_t cursor = 0;
    for (const Highlight& h : bundle.highlights[doc.index]) {
      os << html_escape(std::string_view(doc.text).substr(cursor, h.start - cursor));
      os << "<span class=\"hl\" data-cand=\"" << html_escape(cands[h.candidate].id)
         << "\" data-score=\"" << format_score(h.score) << "\" data-bucket=\""
         << h.bucket << "\" style=\"background-color:" << h.color.hex() << "\">"
         << html_escape(std::string_view(doc.text).substr(h.start, h.end - h.start))
         << "</span>";
      cursor = h.end;
    }
    os << html_escape(std::string_view(doc.text).substr(cursor)) << "</div>\n</section>\n";
  }

  os << "<section id=\"summaries\">\n<h2>Summaries</h2>\n<dl>\n";
  for (const PerDocSummary& s : bundle.per_doc) {
    os << "<dt>" << html_escape(s.doc_id) << "</dt><dd>" << html_escape(s.text) << "</dd>\n";
  }
  os << "<dt>consensus (" << to_string(bundle.variant) << ")</dt><dd>"
     << html_escape(bundle.mds().text) << "</dd>\n</dl>\n</section>\n</body>\n</html>\n";
  return os.str();
}

std::string render_ansi(const SummaryBundle& bundle, const SubmissionGroup& group) {
  std::ostringstream os;
  for (const Document& doc : group.documents) {
    os << "\x1b[1m" << doc.id << "\x1b[0m\n";
    std::size_t cursor = 0;
    for (const Highlight& h : bundle.highlights[doc.index]) {
      os << std::string_view(doc.text).substr(cursor, h.start - cursor);
      os << "\x1b[30;48;2;" << int(h.color.r) << ';' << int(h.color.g) << ';'
         << int(h.color.b) << 'm'
         << std::string_view(doc.text).substr(h.start, h.end - h.start) << "\x1b[0m";
      cursor = h.end;
    }
    os << std::string_view(doc.text).substr(cursor) << "\n\n";
  }
  return os.str();
}

}  // namespace glimpse
