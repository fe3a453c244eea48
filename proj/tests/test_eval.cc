#include <cmath>
#include <fstream>
#include <random>

#include "doctest.h"
#include "glimpse/config.h"
#include "glimpse/error.h"
#include "glimpse/eval.h"
#include "glimpse/pipeline.h"
#include "support.h"

using namespace glimpse;
using glimpse::testing::make_group;
using glimpse::testing::synthetic_group;
using glimpse::testing::TempDir;

namespace {

std::string random_tokens(std::mt19937_64& rng, std::size_t n) {
  static const char* kWords[] = {"a", "b", "c", "d", "e", "f", "g"};
  std::uniform_int_distribution<int> w(0, 6);
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out += std::string(i ? " " : "") + kWords[w(rng)];
  return out;
}

}  // namespace

TEST_CASE("a document's own text identifies it") {
  auto g = make_group({"The method is novel and the results are strong.",
                       "Experiments are missing several baselines.",
                       "Writing needs polishing before publication."});
  std::vector<std::string> summaries;
  for (const auto& d : g.documents) summaries.push_back(d.text);
  CHECK(discriminativeness(summaries, g, {}) == 1.0);
}

TEST_CASE("identical reviews cannot be told apart") {
  auto g = make_group({"Same words in both reviews.", "Same words in both reviews."});
  std::vector<std::string> summaries = {"Same words in both reviews.", "Same words in both reviews."};
  CHECK(discriminativeness(summaries, g, {}) == 0.0);
  CHECK(identification_hits(summaries, g, {}) == std::vector<bool>{false, false});
}

TEST_CASE("a single document is always identified") {
  auto g = make_group({"Only one review in this group."});
  CHECK(discriminativeness({"anything at all"}, g, {}) == 1.0);
}

TEST_CASE("summary count must match documents") {
  auto g = make_group({"one review", "two review"});
  CHECK_THROWS_AS(discriminativeness({"x"}, g, {}), DataError);
}

TEST_CASE("random baseline averages one over N") {
  std::mt19937_64 rng(99);
  double total = 0.0;
  int trials = 0;
  for (int i = 0; i < 250; ++i) {
    auto sg = synthetic_group(rng, 4, "s" + std::to_string(i));
    auto a = analyze(sg.group, RunConfig{}, ImportedBySubmission{});
    for (int r = 0; r < 4; ++r) {
      total += discriminativeness(random_per_doc(a.candidates, 4, rng), a.group, {});
      ++trials;
    }
  }
  CHECK(trials >= 1000);
  CHECK(std::abs(total / trials - 0.25) <= 0.05);
}

TEST_CASE("random summaries are reproducible from the seed") {
  std::mt19937_64 a(7), b(7);
  auto sg = synthetic_group(a, 3, "s");
  std::mt19937_64 g1(7), g2(7);
  auto an = analyze(sg.group, RunConfig{}, ImportedBySubmission{});
  CHECK(random_per_doc(an.candidates, 3, g1) == random_per_doc(an.candidates, 3, g2));
  CHECK(random_consensus(an.candidates, 4, g1) == random_consensus(an.candidates, 4, g2));
  CHECK_THROWS_AS(random_per_doc(CandidateSet{}, 2, g1), DataError);
}

TEST_CASE("rouge hand cases") {
  CHECK(rouge("the cat sat", "the cat ran", RougeVariant::kR1).f1 ==
        doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(rouge("the cat sat", "the cat ran", RougeVariant::kR2).f1 ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rouge("the cat sat on the mat", "the cat sat on the mat", RougeVariant::kRL).f1 == 1.0);
  CHECK(rouge("the cat sat", "the cat sat", RougeVariant::kR2).f1 == 1.0);
  CHECK(rouge("alpha beta", "gamma delta", RougeVariant::kR1).f1 == 0.0);
  CHECK(rouge("alpha beta", "gamma delta", RougeVariant::kRL).f1 == 0.0);

  // Clipped counts: "the the the" vs "the cat": overlap 1.
  auto p = rouge("the the the", "the cat", RougeVariant::kR1);
  CHECK(p.precision == doctest::Approx(1.0 / 3));
  CHECK(p.recall == doctest::Approx(0.5));

  // LCS of "a b c d" and "a c b d" is 3.
  CHECK(rouge("a b c d", "a c b d", RougeVariant::kRL).f1 == doctest::Approx(0.75));

  std::vector<std::string> warnings;
  auto empty = rouge("!!!", "the cat", RougeVariant::kR1, &warnings);
  CHECK(empty.f1 == 0.0);
  CHECK(warnings.size() == 1);
}

TEST_CASE("property: rouge precision and recall swap with arguments") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> len(1, 12);
  for (int i = 0; i < 100; ++i) {
    std::string a = random_tokens(rng, len(rng)), b = random_tokens(rng, len(rng));
    for (auto v : {RougeVariant::kR1, RougeVariant::kR2, RougeVariant::kRL}) {
      auto ab = rouge(a, b, v), ba = rouge(b, a, v);
      CHECK(ab.precision == ba.recall);
      CHECK(ab.recall == ba.precision);
      CHECK(ab.f1 == doctest::Approx(ba.f1));
      CHECK(ab.f1 >= 0.0);
      CHECK(ab.f1 <= 1.0);
    }
  }
}

TEST_CASE("evaluation without a gold summary has no rouge") {
  auto a = analyze(demo_group(), RunConfig{}, ImportedBySubmission{});
  auto bundle = compose_bundle(a.rsa, a.candidates, a.group, ComposerConfig{});
  auto e = evaluate(bundle, a.group, EvalOptions{});
  CHECK_FALSE(e.rouge1.has_value());
  CHECK(e.discriminativeness == 1.0);
  auto report = aggregate({e});
  CHECK_FALSE(report.rouge.has_value());
  CHECK(report_csv(report).find("rouge") == std::string::npos);

  auto g = a.group;
  g.gold_summary = "This paper is well-written. It should be accepted.";
  auto with_gold = evaluate(bundle, g, EvalOptions{});
  REQUIRE(with_gold.rouge1.has_value());
  CHECK(with_gold.rouge1->recall > 0.5);
  CHECK(aggregate({with_gold}).rouge->count("rougeL_f1") == 1);
}

TEST_CASE("aggregate means and sample deviation") {
  SubmissionEval a, b;
  a.discriminativeness = 1.0;
  b.discriminativeness = 0.5;
  auto r = aggregate({a, b});
  CHECK(r.discriminativeness.mean == 0.75);
  CHECK(r.discriminativeness.stddev == doctest::Approx(std::sqrt(0.125)));
  CHECK(summarize_values({0.4}).stddev == 0.0);
}

TEST_CASE("discriminativeness per character") {
  auto g = make_group({"The method is novel and the results are strong.",
                       "Experiments are missing several baselines."});
  std::vector<std::string> own = {g.documents[0].text, g.documents[1].text};
  auto e = evaluate_summaries(own, std::nullopt, g, {});
  CHECK(e.discriminativeness == 1.0);
  CHECK(e.mean_summary_chars == doctest::Approx((47.0 + 42.0) / 2));
  CHECK(e.disc_per_char == doctest::Approx(1.0 / 44.5));

  std::vector<std::string> padded = own;
  for (auto& s : padded) s += " " + std::string(200, 'x');
  auto p = evaluate_summaries(padded, std::nullopt, g, {});
  CHECK(p.discriminativeness == 1.0);
  CHECK(p.disc_per_char < e.disc_per_char / 2);
}

TEST_CASE("external vectors") {
  auto g = make_group({"first", "second"});
  SimilarityOptions opts;
  opts.kind = SimilarityKind::kExternalVectors;
  CHECK_THROWS_AS(discriminativeness({"a", "b"}, g, opts), ConfigError);

  TempDir dir;
  auto path = dir.path() / "vectors.tsv";
  std::ofstream(path) << "s1/d0\t1\t0\n"
                         "s1/d1\t0\t1\n"
                         "s1/d0#summary\t0.9\t0.1\n"
                         "s1/d1#summary\t0.8\t0.2\n";
  VectorTable table = load_vectors(path);
  opts.vectors = &table;
  CHECK(identification_hits({"a", "b"}, g, opts) == std::vector<bool>{true, false});

  std::ofstream(path) << "s1/d0\t1\t0\ns1/d1\t0\n";
  CHECK_THROWS_AS(load_vectors(path), ParseError);
  std::ofstream(path) << "s1/d0\t1\tzz\n";
  CHECK_THROWS_AS(load_vectors(path), ParseError);
}

TEST_CASE("similarity names") {
  CHECK(parse_similarity_kind("tfidf_cosine") == SimilarityKind::kTfidfCosine);
  CHECK(parse_similarity_kind("external_vectors") == SimilarityKind::kExternalVectors);
  CHECK_THROWS_AS(parse_similarity_kind("bert"), ConfigError);
}
