#include "glimpse/rsa.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "glimpse/error.h"

namespace glimpse {
namespace {

double safe_log(double p) {
  return p > 0.0 ? std::max(std::log(p), kLogZeroGuard) : kLogZeroGuard;
}

// In-place log-softmax of the strided sequence x[0], x[stride], ...
void log_normalize(double* x, std::size_t n, std::size_t stride) {
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) peak = std::max(peak, x[i * stride]);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += std::exp(x[i * stride] - peak);
  double lse = peak + std::log(sum);
  for (std::size_t i = 0; i < n; ++i) x[i * stride] -= lse;
}

void log_normalize_columns(Matrix& m) {
  if (m.rows() == 0) return;
  for (std::size_t c = 0; c < m.cols(); ++c) log_normalize(&m(0, c), m.rows(), m.cols());
}

void log_normalize_rows(Matrix& m) {
  if (m.cols() == 0) return;
  for (std::size_t r = 0; r < m.rows(); ++r) log_normalize(&m(r, 0), m.cols(), 1);
}

Matrix exp_of(const Matrix& log_m) {
  Matrix out(log_m.rows(), log_m.cols());
  for (std::size_t r = 0; r < log_m.rows(); ++r) {
    for (std::size_t c = 0; c < log_m.cols(); ++c) out(r, c) = std::exp(log_m(r, c));
  }
  return out;
}

// Speaker log-probabilities answering the listener given in log space.
Matrix log_speaker(const Matrix& log_listener, std::span<const std::size_t> lengths,
                   const RsaConfig& cfg) {
  Matrix out(log_listener.rows(), log_listener.cols());
  for (std::size_t d = 0; d < out.rows(); ++d) {
    for (std::size_t s = 0; s < out.cols(); ++s) {
      double utility = log_listener(d, s) -
                       cfg.cost_per_char * static_cast<double>(lengths[s]);
      out(d, s) = cfg.rationality_lambda * utility;
    }
  }
  log_normalize_rows(out);
  return out;
}

}  // namespace

void RsaConfig::validate() const {
  if (!(rationality_lambda > 0.0) || !std::isfinite(rationality_lambda)) {
    throw ConfigError("rsa.rationality_lambda must be a positive number");
  }
  if (!(cost_per_char >= 0.0) || !std::isfinite(cost_per_char)) {
    throw ConfigError("rsa.cost_per_char must be >= 0");
  }
}

Matrix literal_listener(const Matrix& log_likelihood) {
  Matrix out = log_likelihood;
  log_normalize_columns(out);
  return exp_of(out);
}

Matrix literal_listener(const TruthMatrix& matrix) {
  validate(matrix);
  return literal_listener(matrix.values);
}

Matrix step_speaker(const Matrix& listener, std::span<const std::size_t> lengths,
                    const RsaConfig& cfg) {
  cfg.validate();
  if (lengths.size() != listener.cols()) {
    throw DataError("candidate lengths do not match listener columns");
  }
  Matrix log_l(listener.rows(), listener.cols());
  for (std::size_t d = 0; d < listener.rows(); ++d) {
    for (std::size_t s = 0; s < listener.cols(); ++s) log_l(d, s) = safe_log(listener(d, s));
  }
  return exp_of(log_speaker(log_l, lengths, cfg));
}

Matrix step_listener(const Matrix& speaker, std::vector<std::string>* warnings) {
  Matrix out(speaker.rows(), speaker.cols());
  for (std::size_t s = 0; s < speaker.cols(); ++s) {
    double sum = 0.0;
    for (std::size_t d = 0; d < speaker.rows(); ++d) sum += speaker(d, s);
    if (!(sum > 0.0)) {
      if (warnings) {
        warnings->push_back("listener column " + std::to_string(s) +
                            " had zero speaker mass; set to uniform");
      }
      for (std::size_t d = 0; d < speaker.rows(); ++d) {
        out(d, s) = 1.0 / static_cast<double>(speaker.rows());
      }
      continue;
    }
    for (std::size_t d = 0; d < speaker.rows(); ++d) out(d, s) = speaker(d, s) / sum;
  }
  return out;
}

double uniqueness_score(std::span<const double> column) {
  if (column.empty()) return 0.0;
  if (std::adjacent_find(column.begin(), column.end(), std::not_equal_to<>()) ==
      column.end()) {
    return 0.0;
  }
  const double log_n = std::log(static_cast<double>(column.size()));
  double kl = 0.0;
  for (double p : column) {
    if (p > 0.0) kl += p * (log_n + std::log(p));
  }
  return std::clamp(kl, 0.0, log_n);
}

std::size_t argmax(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

RsaResult run_rsa(const TruthMatrix& matrix, std::span<const std::size_t> lengths,
                  const RsaConfig& cfg) {
  cfg.validate();
  validate(matrix);
  if (matrix.num_docs() == 0 || matrix.num_candidates() == 0) {
    throw DataError("RSA needs at least one document and one candidate");
  }
  if (lengths.size() != matrix.num_candidates()) {
    throw DataError("candidate lengths do not match truth matrix columns");
  }

  RsaResult result;
  result.doc_ids = matrix.doc_ids;
  result.cand_ids = matrix.cand_ids;
  result.config = cfg;

  Matrix log_l = matrix.values;
  log_normalize_columns(log_l);
  if (cfg.keep_trace) result.trace.push_back({0, Matrix(), exp_of(log_l)});

  Matrix log_s = log_speaker(log_l, lengths, cfg);
  for (std::size_t t = 1; t <= cfg.iterations; ++t) {
    if (t > 1) log_s = log_speaker(log_l, lengths, cfg);
    log_l = log_s;
    log_normalize_columns(log_l);
    if (cfg.keep_trace) result.trace.push_back({t, exp_of(log_s), exp_of(log_l)});
  }

  result.listener = exp_of(log_l);
  result.speaker = exp_of(log_s);
  for (std::size_t s = 0; s < result.num_candidates(); ++s) {
    result.uniqueness.push_back(uniqueness_score(result.listener.column(s)));
  }
  for (std::size_t d = 0; d < result.num_docs(); ++d) {
    result.speaker_argmax.push_back(argmax(result.speaker.row(d)));
  }
  return result;
}

RsaResult run_rsa(const TruthMatrix& matrix, const CandidateSet& cands,
                  const RsaConfig& cfg) {
  std::vector<std::size_t> lengths = cands.lengths();
  return run_rsa(matrix, lengths, cfg);
}

std::size_t speaker_select(const RsaResult& result, const CandidateSet& cands,
                           std::size_t doc_index, bool restrict_to_own) {
  if (doc_index >= result.num_docs()) {
    throw DataError("document index " + std::to_string(doc_index) + " out of range");
  }
  auto row = result.speaker.row(doc_index);
  if (!restrict_to_own) return argmax(row);
  std::size_t best = row.size();
  for (std::size_t s = 0; s < row.size(); ++s) {
    if (!cands[s].has_source(doc_index)) continue;
    if (best == row.size() || row[s] > row[best]) best = s;
  }
  if (best == row.size()) {
    throw DataError("document '" + result.doc_ids[doc_index] +
                    "' has no candidates of its own");
  }
  return best;
}

}  // namespace glimpse
