#ifndef GLIMPSE_RSA_H_
#define GLIMPSE_RSA_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "glimpse/matrix.h"
#include "glimpse/segmenter.h"
#include "glimpse/truth_matrix.h"

namespace glimpse {

struct RsaConfig {
  // Speaker/listener rounds after the literal listener. 0 = literal only.
  std::size_t iterations = 2;
  // Exponent on the utility inside the speaker softmax.
  double rationality_lambda = 1.0;
  // Utility penalty per candidate character.
  double cost_per_char = 0.0;
  bool keep_trace = false;

  void validate() const;
};

// Snapshot of one round. Round 0 holds the literal listener and no speaker.
struct RsaRound {
  std::size_t round = 0;
  Matrix speaker;
  Matrix listener;
};

// All grids are N x K (documents x candidates). listener(d, s) = L_T(d | s),
// each column a distribution over documents; speaker(d, s) = S_T(s | d), each
// row a distribution over candidates.
struct RsaResult {
  std::vector<std::string> doc_ids;
  std::vector<std::string> cand_ids;
  Matrix listener;
  Matrix speaker;
  std::vector<double> uniqueness;          // per candidate, nats
  std::vector<std::size_t> speaker_argmax; // per document
  std::vector<RsaRound> trace;             // filled when keep_trace
  RsaConfig config;
  std::vector<std::string> warnings;

  std::size_t num_docs() const { return doc_ids.size(); }
  std::size_t num_candidates() const { return cand_ids.size(); }
};

// Log-value that stands in for ln 0 when probabilities are read back in.
inline constexpr double kLogZeroGuard = -745.0;

// L_0(d | s): softmax over documents of each log-likelihood column.
Matrix literal_listener(const Matrix& log_likelihood);
Matrix literal_listener(const TruthMatrix& matrix);

// S_t(s | d) = softmax_s(lambda * (ln L_{t-1}(d | s) - cost_per_char * len(s))).
Matrix step_speaker(const Matrix& listener, std::span<const std::size_t> lengths,
                    const RsaConfig& cfg);

// L_t(d | s) = S_t(s | d) / sum_d' S_t(s | d'). An all-zero column becomes
// uniform and appends a warning.
Matrix step_listener(const Matrix& speaker,
                     std::vector<std::string>* warnings = nullptr);

// KL(column || uniform) in nats, with 0 ln 0 = 0. In [0, ln N].
double uniqueness_score(std::span<const double> column);

// Index of the largest value; ties go to the lowest index.
std::size_t argmax(std::span<const double> values);

// Literal listener followed by `iterations` speaker/listener rounds, computed
// in log space. With zero rounds, the speaker is the one that answers the
// literal listener.
RsaResult run_rsa(const TruthMatrix& matrix, std::span<const std::size_t> lengths,
                  const RsaConfig& cfg);
RsaResult run_rsa(const TruthMatrix& matrix, const CandidateSet& cands,
                  const RsaConfig& cfg);

// Argmax of the final speaker row for `doc_index`. With restrict_to_own only
// candidates sourced from that document compete; throws DataError when it
// has none.
std::size_t speaker_select(const RsaResult& result, const CandidateSet& cands,
                           std::size_t doc_index, bool restrict_to_own);

}  // namespace glimpse

#endif  // GLIMPSE_RSA_H_
