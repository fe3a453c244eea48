#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "glimpse/error.h"
#include "glimpse/segmenter.h"
#include "glimpse/text.h"
#include "support.h"

using namespace glimpse;
using glimpse::testing::make_group;

namespace {

std::vector<std::string> texts_of(const CandidateSet& c) {
  std::vector<std::string> out;
  for (const auto& cand : c.candidates) out.push_back(cand.text);
  return out;
}

std::string random_document(std::mt19937_64& rng) {
  static const std::vector<std::string> kWords = {
      "the", "model", "results", "are", "Fig.", "e.g.", "clear", "weak", "baseline",
      "et al.", "we", "J.", "Smith", "data", "3.5", "method", "Eq."};
  static const std::vector<std::string> kEnds = {".", "!", "?", "?!", "...", ".\"", ".)"};
  static const std::vector<std::string> kBreaks = {" ", " ", "  ", "\n", "\n\n", "\n> ",
                                                   "\n* ", "\n1. ", "\n- "};
  std::uniform_int_distribution<std::size_t> words(1, 9), pick(0, 1000);
  std::string doc;
  int sentences = 1 + static_cast<int>(pick(rng) % 6);
  for (int s = 0; s < sentences; ++s) {
    std::string sentence;
    for (std::size_t i = 0, n = words(rng); i < n; ++i) {
      if (!sentence.empty()) sentence += ' ';
      sentence += kWords[pick(rng) % kWords.size()];
    }
    sentence[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(sentence[0])));
    sentence += kEnds[pick(rng) % kEnds.size()];
    doc += sentence + kBreaks[pick(rng) % kBreaks.size()];
  }
  return doc;
}

}  // namespace

TEST_CASE("shared sentence across documents becomes one candidate") {
  auto g = make_group({"This paper is well-written. However, the theoretical part lacks clarification.",
                       "This paper is well-written. I believe it should be accepted."});
  auto c = extract_candidates(g, SegmenterConfig{});
  REQUIRE(c.size() == 3);
  CHECK(c[0].text == "This paper is well-written.");
  REQUIRE(c[0].sources.size() == 2);
  CHECK(c[0].sources[0].doc_index == 0);
  CHECK(c[0].sources[1].doc_index == 1);
  CHECK(c[1].text == "However, the theoretical part lacks clarification.");
  CHECK(c[2].text == "I believe it should be accepted.");
  CHECK(c.ids() == std::vector<std::string>{"c0", "c1", "c2"});
}

TEST_CASE("single letters split into sentences in span order") {
  SegmenterConfig cfg;
  cfg.min_chars = 1;
  auto c = extract_candidates(make_group({"A. B. C."}), cfg);
  CHECK(texts_of(c) == std::vector<std::string>{"A.", "B.", "C."});
  CHECK(c[0].sources[0].start < c[1].sources[0].start);
}

TEST_CASE("length filters") {
  SegmenterConfig cfg;
  cfg.min_chars = 10;
  auto c = extract_candidates(make_group({"Ok. This one is long enough."}), cfg);
  CHECK(texts_of(c) == std::vector<std::string>{"This one is long enough."});

  cfg.min_chars = 1;
  cfg.max_chars = 6;
  c = extract_candidates(make_group({"Short. Much too long for it."}), cfg);
  CHECK(texts_of(c) == std::vector<std::string>{"Short."});
}

TEST_CASE("document without candidates is a warning") {
  auto c = extract_candidates(make_group({"Here are some comments.", "Tiny."}), SegmenterConfig{});
  CHECK(c.size() == 1);
  REQUIRE(c.warnings.size() == 1);
  CHECK(c.warnings[0].find("d1") != std::string::npos);
}

TEST_CASE("abbreviations and initials do not end sentences") {
  SegmenterConfig cfg;
  cfg.min_chars = 1;
  auto texts = texts_of(extract_candidates(
      make_group({"Results improve, e.g. on CIFAR. Compare Smith et al. in Fig. 3 closely. "
                  "Work by J. Smith helps. Done."}),
      cfg));
  CHECK(texts == std::vector<std::string>{"Results improve, e.g. on CIFAR.",
                                          "Compare Smith et al. in Fig. 3 closely.",
                                          "Work by J. Smith helps.", "Done."});
}

TEST_CASE("quote and list markers are stripped") {
  SegmenterConfig cfg;
  cfg.min_chars = 1;
  std::string doc = "> Quoted claim from the paper\n* First bullet point\n2. Numbered point here.\n"
                    "Plain text that\ncontinues on a new line.";
  auto c = extract_candidates(make_group({doc}), cfg);
  CHECK(texts_of(c) == std::vector<std::string>{"Quoted claim from the paper", "First bullet point",
                                                "Numbered point here.",
                                                "Plain text that continues on a new line."});
  for (const auto& cand : c.candidates) {
    const auto& s = cand.sources[0];
    std::string span = doc.substr(s.start, s.end - s.start);
    CHECK(span.find('>') == std::string::npos);
    CHECK(span.front() != '*');
  }
}

TEST_CASE("imported candidates") {
  auto g = make_group({"First document.", "Second document."});
  SUBCASE("one per document") {
    auto c = import_candidates(g, {{"d0", "Summary one."}, {"d1", "Summary two."}});
    REQUIRE(c.size() == 2);
    CHECK(c[0].sources.size() == 1);
    CHECK(c[0].sources[0].synthetic);
    CHECK(c[1].sources[0].doc_index == 1);
    CHECK_FALSE(c[0].is_extractive());
  }
  SUBCASE("identical texts merge") {
    auto c = import_candidates(g, {{"d0", "Same summary."}, {"d1", "Same  summary."}});
    REQUIRE(c.size() == 1);
    CHECK(c[0].sources.size() == 2);
  }
  SUBCASE("unknown document") {
    try {
      import_candidates(g, {{"x9", "Anything."}});
      FAIL("expected an error");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find("x9") != std::string::npos);
    }
  }
}

TEST_CASE("property: segmentation invariants on random documents") {
  std::mt19937_64 rng(11);
  SegmenterConfig cfg;
  cfg.min_chars = 1;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> docs = {random_document(rng), random_document(rng),
                                     random_document(rng)};
    auto g = make_group(docs);
    auto c = extract_candidates(g, cfg);

    // deterministic
    auto again = extract_candidates(g, cfg);
    REQUIRE(texts_of(again) == texts_of(c));

    std::set<std::string> keys;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> spans(docs.size());
    std::pair<std::size_t, std::size_t> prev_first{0, 0};
    for (const auto& cand : c.candidates) {
      CHECK(keys.insert(cand.key).second);
      CHECK(cand.length_chars == text::length_chars(cand.text));
      REQUIRE_FALSE(cand.sources.empty());
      std::pair<std::size_t, std::size_t> first{cand.sources[0].doc_index, cand.sources[0].start};
      CHECK(prev_first <= first);
      prev_first = first;
      for (const auto& s : cand.sources) {
        const std::string& doc = g.documents[s.doc_index].text;
        CHECK(text::dedup_key(doc.substr(s.start, s.end - s.start)) == cand.key);
        spans[s.doc_index].emplace_back(s.start, s.end);
      }
    }
    for (auto& list : spans) {
      std::sort(list.begin(), list.end());
      for (std::size_t i = 1; i < list.size(); ++i) CHECK(list[i - 1].second <= list[i].first);
    }

    // duplicating a document doubles the sources and keeps the texts
    auto doubled = make_group({docs[0], docs[1], docs[2], docs[1]});
    auto cd = extract_candidates(doubled, cfg);
    REQUIRE(texts_of(cd) == texts_of(c));
    for (std::size_t i = 0; i < c.size(); ++i) {
      std::size_t from_d1 = std::count_if(c[i].sources.begin(), c[i].sources.end(),
                                          [](const SourceSpan& s) { return s.doc_index == 1; });
      CHECK(cd[i].sources.size() == c[i].sources.size() + from_d1);
    }
  }
}
