#include "glimpse/segmenter.h"

#include <unicode/uchar.h>

#include <algorithm>
#include <unordered_map>

#include "glimpse/error.h"
#include "glimpse/text.h"

namespace glimpse {
namespace {

using Span = std::pair<std::size_t, std::size_t>;

bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

bool is_space_byte(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v';
}

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

bool is_closer(char32_t cp) {
  switch (cp) {
    case U'"': case U'\'': case U')': case U']': case U'”': case U'’':
      return true;
    default:
      return false;
  }
}

// Length of a line-leading marker run (quote arrows, bullets, numbering and
// the whitespace around them), or 0 when the line starts with plain text.
std::size_t marker_length(std::string_view line) {
  std::size_t i = 0;
  bool marker = false;
  while (true) {
    while (i < line.size() && is_space_byte(line[i])) ++i;
    if (i < line.size() && line[i] == '>') {
      ++i;
      marker = true;
      continue;
    }
    if (i + 1 < line.size() &&
        (line[i] == '*' || line[i] == '-' || line[i] == '+') &&
        is_space_byte(line[i + 1])) {
      i += 2;
      marker = true;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && is_ascii_digit(line[j])) ++j;
    if (j > i && j + 1 < line.size() && (line[j] == '.' || line[j] == ')') &&
        is_space_byte(line[j + 1])) {
      i = j + 2;
      marker = true;
      continue;
    }
    break;
  }
  return marker ? i : 0;
}

// Byte ranges of text that may hold sentences. Blank lines and marker lines
// start a new region; other lines continue the previous one.
std::vector<Span> content_regions(std::string_view text) {
  std::vector<Span> regions;
  bool open = false;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t nl = text.find('\n', line_start);
    std::size_t line_end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view line = text.substr(line_start, line_end - line_start);
    std::size_t skip = marker_length(line);
    bool blank = text::trim(line).empty();
    if (blank || skip > 0) open = false;
    if (!blank && text::trim(line.substr(skip)).size() > 0) {
      if (open) {
        regions.back().second = line_end;
      } else {
        regions.emplace_back(line_start + skip, line_end);
        open = true;
      }
    }
    if (nl == std::string_view::npos) break;
    line_start = nl + 1;
  }
  return regions;
}

bool iequals_ascii(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    char x = a[i], y = b[i];
    if (x >= 'A' && x <= 'Z') x = static_cast<char>(x - 'A' + 'a');
    if (y >= 'A' && y <= 'Z') y = static_cast<char>(y - 'A' + 'a');
    if (x != y) return false;
  }
  return true;
}

bool alnum_before(std::string_view s, std::size_t pos) {
  if (pos == 0) return false;
  std::size_t start = pos - 1;
  while (start > 0 && (static_cast<unsigned char>(s[start]) & 0xC0) == 0x80) {
    --start;
  }
  std::size_t p = start;
  return text::is_alnum(text::next_code_point(s, p));
}

// True if the period at `dot` closes an abbreviation or a personal initial
// rather than a sentence. `region` ends at the region end; `next` is the
// offset of the following token.
bool protected_period(std::string_view region, std::size_t dot,
                      std::size_t next,
                      const std::vector<std::string>& abbreviations) {
  std::size_t end = dot + 1;
  for (const std::string& abbr : abbreviations) {
    if (abbr.size() > end) continue;
    std::size_t start = end - abbr.size();
    if (iequals_ascii(region.substr(start, abbr.size()), abbr) &&
        !alnum_before(region, start)) {
      return true;
    }
  }
  // Initial: "J. Smith" but not "A. B. C.".
  if (dot >= 1 && region[dot - 1] >= 'A' && region[dot - 1] <= 'Z' &&
      !alnum_before(region, dot - 1) && next + 1 < region.size()) {
    std::size_t p = next;
    char32_t first = text::next_code_point(region, p);
    char32_t second = text::next_code_point(region, p);
    return u_isupper(static_cast<UChar32>(first)) &&
           u_islower(static_cast<UChar32>(second));
  }
  return false;
}

Span trimmed(std::string_view text, std::size_t begin, std::size_t end) {
  std::string_view piece = text::trim(text.substr(begin, end - begin));
  if (piece.empty()) return {begin, begin};
  std::size_t offset = static_cast<std::size_t>(piece.data() - text.data());
  return {offset, offset + piece.size()};
}

void split_region(std::string_view text, Span region,
                  const std::vector<std::string>& abbreviations,
                  std::vector<Span>& out) {
  std::string_view body = text.substr(region.first, region.second - region.first);
  std::size_t sentence_start = 0;
  std::size_t pos = 0;
  auto emit = [&](std::size_t end) {
    Span s = trimmed(text, region.first + sentence_start, region.first + end);
    if (s.second > s.first) out.push_back(s);
  };
  while (pos < body.size()) {
    if (!is_terminal(body[pos])) {
      ++pos;
      continue;
    }
    std::size_t first_terminal = pos;
    std::size_t run_end = pos;
    while (run_end < body.size() && is_terminal(body[run_end])) ++run_end;
    while (run_end < body.size()) {
      std::size_t p = run_end;
      if (!is_closer(text::next_code_point(body, p))) break;
      run_end = p;
    }
    std::size_t next = run_end;
    bool at_end = next >= body.size();
    if (!at_end) {
      std::size_t p = next;
      if (!text::is_space(text::next_code_point(body, p))) {
        pos = run_end;
        continue;
      }
      while (next < body.size()) {
        std::size_t q = next;
        if (!text::is_space(text::next_code_point(body, q))) break;
        next = q;
      }
    }
    bool single_period = run_end - first_terminal == 1 && body[first_terminal] == '.';
    if (!at_end && single_period &&
        protected_period(body, first_terminal, next, abbreviations)) {
      pos = run_end;
      continue;
    }
    emit(run_end);
    sentence_start = run_end;
    pos = run_end;
  }
  emit(body.size());
}

}  // namespace

bool Candidate::has_source(std::size_t doc_index) const {
  return std::any_of(sources.begin(), sources.end(), [&](const SourceSpan& s) {
    return s.doc_index == doc_index;
  });
}

bool Candidate::is_extractive() const {
  return std::none_of(sources.begin(), sources.end(),
                      [](const SourceSpan& s) { return s.synthetic; });
}

std::vector<std::string> CandidateSet::ids() const {
  std::vector<std::string> out;
  out.reserve(candidates.size());
  for (const Candidate& c : candidates) out.push_back(c.id);
  return out;
}

std::vector<std::size_t> CandidateSet::lengths() const {
  std::vector<std::size_t> out;
  out.reserve(candidates.size());
  for (const Candidate& c : candidates) out.push_back(c.length_chars);
  return out;
}

std::vector<std::string> SegmenterConfig::default_abbreviations() {
  return {"e.g.", "i.e.", "et al.", "Fig.", "Figs.", "Eq.", "Eqs.", "Sec.",
          "Tab.", "cf.",  "vs.",    "Dr.",  "Mr.",   "Mrs.", "Ms.",  "No.",
          "approx.", "resp."};
}

std::vector<Span> split_sentences(std::string_view text,
                                  const std::vector<std::string>& abbreviations) {
  std::vector<Span> out;
  for (Span region : content_regions(text)) {
    split_region(text, region, abbreviations, out);
  }
  return out;
}

namespace {

// Merges occurrences into candidates keyed by dedup key, keeping first-seen
// order.
class CandidateMerger {
 public:
  void add(std::string display, SourceSpan span) {
    std::string key = text::dedup_key(display);
    if (key.empty()) key = display;
    if (key.empty()) return;
    auto [it, inserted] = index_.try_emplace(key, set_.candidates.size());
    if (inserted) {
      Candidate c;
      c.id = "c" + std::to_string(set_.candidates.size());
      c.length_chars = text::length_chars(display);
      c.text = std::move(display);
      c.key = std::move(key);
      set_.candidates.push_back(std::move(c));
    }
    set_.candidates[it->second].sources.push_back(span);
  }

  CandidateSet& set() { return set_; }

 private:
  CandidateSet set_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace

CandidateSet extract_candidates(const SubmissionGroup& group,
                                const SegmenterConfig& config) {
  CandidateMerger merger;
  for (const Document& doc : group.documents) {
    std::size_t kept = 0;
    for (auto [start, end] : split_sentences(doc.text, config.abbreviations)) {
      std::string display = text::collapse_whitespace(
          std::string_view(doc.text).substr(start, end - start));
      std::size_t len = text::length_chars(display);
      if (len < config.min_chars || len > config.max_chars) continue;
      merger.add(std::move(display), SourceSpan{doc.index, start, end, false});
      ++kept;
    }
    if (kept == 0) {
      merger.set().warnings.push_back("document '" + doc.id +
                                      "' yielded no candidates");
    }
  }
  return std::move(merger.set());
}

CandidateSet import_candidates(const SubmissionGroup& group,
                               const std::vector<ImportedCandidate>& records) {
  CandidateMerger merger;
  for (const ImportedCandidate& rec : records) {
    std::optional<std::size_t> doc = group.find(rec.doc_id);
    if (!doc) {
      throw DataError("imported candidate references unknown document '" +
                      rec.doc_id + "' in submission '" + group.submission_id +
                      "'");
    }
    std::string display = text::collapse_whitespace(text::nfc(rec.text));
    if (display.empty()) {
      throw DataError("imported candidate for '" + rec.doc_id + "' is empty");
    }
    merger.add(std::move(display),
               SourceSpan{*doc, 0, group.documents[*doc].text.size(), true});
  }
  return std::move(merger.set());
}

}  // namespace glimpse
