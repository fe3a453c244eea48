#ifndef GLIMPSE_TESTS_SUPPORT_H_
#define GLIMPSE_TESTS_SUPPORT_H_

// Test-only helpers: fixtures, a synthetic corpus generator and the naive
// linear-space RSA recursion used as an oracle for the log-space engine.

#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "glimpse/corpus_io.h"
#include "glimpse/matrix.h"

namespace glimpse::testing {

inline SubmissionGroup make_group(const std::vector<std::string>& texts,
                                  const std::string& submission_id = "s1") {
  SubmissionGroup g;
  g.submission_id = submission_id;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    g.documents.push_back(Document{"d" + std::to_string(i), submission_id, texts[i], i});
  }
  return g;
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("glimpse_test_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

struct NaiveRsa {
  Matrix listener;
  Matrix speaker;
};

// Linear-space recursion straight from the definitions:
//   L0(d|s) = M(d,s) / sum_d' M(d',s)
//   S_t(s|d) ∝ (L_{t-1}(d|s) * exp(-cost * len_s))^lambda
//   L_t(d|s) = S_t(s|d) / sum_d' S_t(s|d')
inline NaiveRsa naive_rsa(const Matrix& log_values, std::size_t rounds, double lambda = 1.0,
                          double cost = 0.0, std::vector<std::size_t> lengths = {}) {
  const std::size_t n = log_values.rows(), k = log_values.cols();
  if (lengths.empty()) lengths.assign(k, 0);
  Matrix lin(n, k);
  for (std::size_t d = 0; d < n; ++d)
    for (std::size_t s = 0; s < k; ++s) lin(d, s) = std::exp(log_values(d, s));
  auto normalize_columns = [&](Matrix m) {
    for (std::size_t s = 0; s < k; ++s) {
      double sum = 0;
      for (std::size_t d = 0; d < n; ++d) sum += m(d, s);
      for (std::size_t d = 0; d < n; ++d) m(d, s) /= sum;
    }
    return m;
  };
  auto speaker_of = [&](const Matrix& l) {
    Matrix sp(n, k);
    for (std::size_t d = 0; d < n; ++d) {
      double sum = 0;
      for (std::size_t s = 0; s < k; ++s) {
        sp(d, s) = std::pow(l(d, s) * std::exp(-cost * double(lengths[s])), lambda);
        sum += sp(d, s);
      }
      for (std::size_t s = 0; s < k; ++s) sp(d, s) /= sum;
    }
    return sp;
  };
  NaiveRsa out;
  out.listener = normalize_columns(lin);
  out.speaker = speaker_of(out.listener);
  for (std::size_t t = 1; t <= rounds; ++t) {
    if (t > 1) out.speaker = speaker_of(out.listener);
    out.listener = normalize_columns(out.speaker);
  }
  return out;
}

inline Matrix random_log_matrix(std::mt19937_64& rng, std::size_t n, std::size_t k, double lo,
                                double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(n, k);
  for (std::size_t d = 0; d < n; ++d)
    for (std::size_t s = 0; s < k; ++s) m(d, s) = u(rng);
  return m;
}

// Groups of `num_docs` reviews that all contain the same five template
// sentences, plus one planted sentence per review built from nonsense words
// no other review uses. Sentence order within a review is shuffled.
struct SyntheticGroup {
  SubmissionGroup group;
  std::vector<std::string> planted;  // per document
};

inline std::string pseudo_word(std::mt19937_64& rng) {
  static const char* kSyllables[] = {"ka", "zo", "mi", "tu", "re", "vo", "ni", "qua",
                                     "sel", "dor", "pim", "gax", "lu", "fen", "bri", "yo"};
  std::uniform_int_distribution<int> syl(0, 15), len(2, 4);
  std::string w;
  for (int i = 0, n = len(rng); i < n; ++i) w += kSyllables[syl(rng)];
  return w;
}

inline SyntheticGroup synthetic_group(std::mt19937_64& rng, std::size_t num_docs,
                                      const std::string& submission_id) {
  static const std::vector<std::string> kTemplates = {
      "The paper studies an important problem in representation learning.",
      "The experiments are conducted on several standard benchmarks.",
      "The writing is clear and the paper is easy to follow.",
      "The related work section covers the main prior approaches.",
      "The proposed method is compared against strong baselines.",
      "The authors provide code for reproducing their results.",
      "The theoretical analysis supports the empirical findings.",
      "The ablation study isolates the contribution of each component.",
      "The figures illustrate the main idea of the approach.",
      "The limitations of the method are discussed at the end.",
  };
  std::vector<std::size_t> order(kTemplates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::string> shared;
  for (std::size_t i = 0; i < 5; ++i) shared.push_back(kTemplates[order[i]]);

  // Planted sentences get pairwise different word counts so that no two
  // reviews have the same TF-IDF norm.
  std::vector<std::size_t> word_counts(num_docs);
  for (std::size_t d = 0; d < num_docs; ++d) word_counts[d] = 3 + d;
  std::shuffle(word_counts.begin(), word_counts.end(), rng);

  SyntheticGroup out;
  std::vector<std::string> texts;
  for (std::size_t d = 0; d < num_docs; ++d) {
    std::string planted = "Reviewer notes that";
    for (std::size_t w = 0; w < word_counts[d]; ++w) planted += " " + pseudo_word(rng);
    planted += ".";
    std::vector<std::string> sentences = shared;
    std::shuffle(sentences.begin(), sentences.end(), rng);
    std::uniform_int_distribution<std::size_t> at(0, sentences.size());
    sentences.insert(sentences.begin() + static_cast<std::ptrdiff_t>(at(rng)), planted);
    std::string body;
    for (const auto& s : sentences) body += (body.empty() ? "" : " ") + s;
    texts.push_back(body);
    out.planted.push_back(planted);
  }
  out.group = make_group(texts, submission_id);
  return out;
}

}  // namespace glimpse::testing

#endif  // GLIMPSE_TESTS_SUPPORT_H_
