#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "glimpse/error.h"
#include "glimpse/likelihood.h"
#include "glimpse/text.h"
#include "support.h"

using namespace glimpse;
using glimpse::testing::make_group;
using glimpse::testing::TempDir;

namespace {

CandidateSet imported(const SubmissionGroup& g, const std::vector<std::string>& texts) {
  std::vector<ImportedCandidate> recs;
  for (const auto& t : texts) recs.push_back({g.documents[0].id, t});
  return import_candidates(g, recs);
}

// Brute-force TF-IDF cosine written from the definition, independent of
// TfidfModel: raw counts, idf = ln((1+N)/(1+df)) + 1 over documents.
double oracle_tfidf_entry(const std::vector<std::vector<std::string>>& docs,
                          const std::vector<std::string>& doc,
                          const std::vector<std::string>& cand, double floor_logprob) {
  std::set<std::string> terms(doc.begin(), doc.end());
  terms.insert(cand.begin(), cand.end());
  double n = static_cast<double>(docs.size());
  double dotp = 0, nd = 0, nc = 0;
  for (const auto& t : terms) {
    double df = 0;
    for (const auto& d : docs) df += std::count(d.begin(), d.end(), t) > 0 ? 1 : 0;
    double idf = std::log((1 + n) / (1 + df)) + 1;
    double wd = static_cast<double>(std::count(doc.begin(), doc.end(), t)) * idf;
    double wc = static_cast<double>(std::count(cand.begin(), cand.end(), t)) * idf;
    dotp += wd * wc;
    nd += wd * wd;
    nc += wc * wc;
  }
  double cos = (nd == 0 || nc == 0) ? 0.0 : dotp / std::sqrt(nd * nc);
  return std::max(std::log(std::exp(floor_logprob) + std::clamp(cos, 0.0, 1.0)), floor_logprob);
}

}  // namespace

TEST_CASE("unigram: add-one smoothing by hand") {
  auto g = make_group({"a a b"});
  ScorerConfig cfg;
  cfg.smoothing_alpha = 1.0;
  auto m = score_unigram(g, imported(g, {"a"}), cfg);
  // P(a) = (2 + 1) / (3 + 2) = 0.6
  CHECK(m.values(0, 0) == doctest::Approx(-0.5108256237659907).epsilon(1e-14));
}

TEST_CASE("unigram: identical documents give identical rows") {
  auto g = make_group({"the cat sat", "the cat sat", "dogs bark loudly"});
  auto m = score_unigram(g, imported(g, {"zebra crossing", "the cat"}), ScorerConfig{});
  for (std::size_t s = 0; s < 2; ++s) CHECK(m.values(0, s) == m.values(1, s));
}

TEST_CASE("unigram: temperature scales entries") {
  auto g = make_group({"alpha beta gamma", "beta delta"});
  auto cands = imported(g, {"alpha beta", "delta"});
  ScorerConfig one, two;
  two.temperature = 2.0;
  auto a = score_unigram(g, cands, one);
  auto b = score_unigram(g, cands, two);
  for (std::size_t d = 0; d < 2; ++d)
    for (std::size_t s = 0; s < 2; ++s) CHECK(b.values(d, s) == doctest::Approx(a.values(d, s) / 2));
}

TEST_CASE("unigram: tokenless candidate is floored with a warning") {
  auto g = make_group({"some words here"});
  auto m = score_unigram(g, imported(g, {"!!!"}), ScorerConfig{});
  CHECK(m.values(0, 0) == -18.0);
  CHECK(m.warnings.size() == 1);
}

TEST_CASE("unigram: document permutation permutes rows; duplicate document adds equal row") {
  std::vector<std::string> docs = {"the model is strong", "weak baselines everywhere",
                                   "the data is noisy and weak"};
  auto g = make_group(docs);
  auto cands = imported(g, {"the model is weak", "noisy data", "strong baselines"});
  auto m = score_unigram(g, cands, ScorerConfig{});

  auto gp = make_group({docs[2], docs[0], docs[1]});
  auto cp = imported(gp, {"the model is weak", "noisy data", "strong baselines"});
  auto mp = score_unigram(gp, cp, ScorerConfig{});
  std::size_t perm[] = {2, 0, 1};
  for (std::size_t d = 0; d < 3; ++d)
    for (std::size_t s = 0; s < 3; ++s) CHECK(mp.values(d, s) == doctest::Approx(m.values(perm[d], s)));

  // Same vocabulary, one more document: the copy's row equals the original's.
  auto gd = make_group({docs[0], docs[1], docs[2], docs[0]});
  auto md = score_unigram(gd, imported(gd, {"the model is weak", "noisy data", "strong baselines"}),
                          ScorerConfig{});
  for (std::size_t s = 0; s < 3; ++s) CHECK(md.values(3, s) == md.values(0, s));
}

TEST_CASE("tfidf: self-similarity and orthogonality") {
  auto g = make_group({"graph neural networks", "protein folding"});
  auto m = score_tfidf(g, imported(g, {"graph neural networks", "quantum chemistry"}), ScorerConfig{});
  CHECK(m.values(0, 0) == doctest::Approx(std::log(1.0 + std::exp(-18.0))).epsilon(1e-12));
  CHECK(m.values(1, 0) == -18.0);
  CHECK(m.values(0, 1) == -18.0);
}

TEST_CASE("tfidf: hand-computable weights") {
  // Frozen from an independent Python computation of the same definition.
  auto g = make_group({"apple banana", "apple cherry"});
  auto m = score_tfidf(g, imported(g, {"banana", "apple apple cherry"}), ScorerConfig{});
  CHECK(m.values(0, 0) == doctest::Approx(-0.2048095387957304).epsilon(1e-12));
  CHECK(m.values(0, 1) == doctest::Approx(-0.7458504754212852).epsilon(1e-12));
  CHECK(m.values(1, 0) == -18.0);
  CHECK(m.values(1, 1) == doctest::Approx(-0.05888936251341778).epsilon(1e-12));
}

TEST_CASE("tfidf: matches brute-force oracle on random groups") {
  std::mt19937_64 rng(5);
  const std::vector<std::string> words = {"alpha", "beta", "gamma", "delta", "eps", "zeta", "eta"};
  std::uniform_int_distribution<std::size_t> w(0, words.size() - 1), len(1, 6), ndocs(1, 4);
  auto sentence = [&] {
    std::string s;
    for (std::size_t i = 0, n = len(rng); i < n; ++i) s += words[w(rng)] + " ";
    return s;
  };
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> docs;
    for (std::size_t i = 0, n = ndocs(rng); i < n; ++i) docs.push_back(sentence());
    auto g = make_group(docs);
    auto cands = imported(g, {sentence(), sentence(), sentence()});
    auto m = score_tfidf(g, cands, ScorerConfig{});
    std::vector<std::vector<std::string>> doc_tokens;
    for (const auto& d : docs) doc_tokens.push_back(text::tokenize(d));
    for (std::size_t d = 0; d < docs.size(); ++d) {
      for (std::size_t s = 0; s < cands.size(); ++s) {
        double want = oracle_tfidf_entry(doc_tokens, doc_tokens[d], text::tokenize(cands[s].text), -18.0);
        CHECK(std::abs(m.values(d, s) - want) <= 1e-12);
      }
    }
  }
}

TEST_CASE("external: rows and columns reordered to group order") {
  auto g = make_group({"one doc", "two doc"});
  auto cands = imported(g, {"first", "second"});
  TempDir tmp;
  TruthMatrix ext;
  ext.doc_ids = {"d1", "d0"};
  ext.cand_ids = {"c1", "c0"};
  ext.values = Matrix(2, 2);
  ext.values(0, 0) = -0.11;  // d1, c1
  ext.values(0, 1) = -0.10;  // d1, c0
  ext.values(1, 0) = -0.01;  // d0, c1
  ext.values(1, 1) = -1.203972804325936;  // d0, c0
  save_matrix(ext, tmp.path() / "m.tsv");
  auto m = score_external(tmp.path() / "m.tsv", g, cands);
  CHECK(m.doc_ids == std::vector<std::string>{"d0", "d1"});
  CHECK(m.cand_ids == std::vector<std::string>{"c0", "c1"});
  CHECK(m.values(0, 0) == -1.203972804325936);
  CHECK(m.values(0, 1) == -0.01);
  CHECK(m.values(1, 0) == -0.10);
  CHECK(m.values(1, 1) == -0.11);
}

TEST_CASE("external: missing candidate column is named") {
  auto g = make_group({"one doc"});
  auto cands = imported(g, {"first", "second"});
  std::istringstream in("#doc_id\tc0\nd0\t-1\n");
  try {
    align_matrix(read_matrix_tsv(in, "mem"), g, cands);
    FAIL("expected an error");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("c1") != std::string::npos);
  }
}

TEST_CASE("scorer config bounds") {
  ScorerConfig cfg;
  cfg.smoothing_alpha = 0;
  CHECK_THROWS(cfg.validate());
  cfg = {};
  cfg.temperature = -1;
  CHECK_THROWS(cfg.validate());
}
