#include "glimpse/likelihood.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "glimpse/error.h"
#include "glimpse/text.h"
#include "glimpse/tfidf.h"

namespace glimpse {
namespace {

TruthMatrix empty_matrix(const SubmissionGroup& group, const CandidateSet& cands) {
  if (group.documents.empty()) throw DataError("cannot score an empty group");
  if (cands.size() == 0) {
    throw DataError("no candidates for submission '" + group.submission_id + "'");
  }
  TruthMatrix m;
  for (const Document& d : group.documents) m.doc_ids.push_back(d.id);
  m.cand_ids = cands.ids();
  m.values = Matrix(m.doc_ids.size(), m.cand_ids.size());
  return m;
}

double finish_entry(double raw, const ScorerConfig& cfg) {
  return std::max(raw / cfg.temperature, cfg.floor_logprob);
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += "'" + s + "'";
  }
  return out;
}

}  // namespace

ScorerKind parse_scorer_kind(std::string_view name) {
  if (name == "unigram_lm") return ScorerKind::kUnigramLm;
  if (name == "tfidf_cosine") return ScorerKind::kTfidfCosine;
  if (name == "external") return ScorerKind::kExternal;
  throw ConfigError("unknown scorer kind '" + std::string(name) + "'");
}

std::string_view to_string(ScorerKind kind) {
  switch (kind) {
    case ScorerKind::kUnigramLm: return "unigram_lm";
    case ScorerKind::kTfidfCosine: return "tfidf_cosine";
    case ScorerKind::kExternal: return "external";
  }
  return "unknown";
}

void ScorerConfig::validate() const {
  if (!(smoothing_alpha > 0.0)) throw ConfigError("scorer.smoothing_alpha must be > 0");
  if (!(temperature > 0.0)) throw ConfigError("scorer.temperature must be > 0");
  if (!std::isfinite(floor_logprob)) throw ConfigError("scorer.floor_logprob must be finite");
}

TruthMatrix score_unigram(const SubmissionGroup& group, const CandidateSet& cands,
                          const ScorerConfig& cfg) {
  cfg.validate();
  TruthMatrix m = empty_matrix(group, cands);

  std::vector<std::vector<std::string>> cand_tokens;
  std::set<std::string> vocab;
  for (const Candidate& c : cands.candidates) {
    cand_tokens.push_back(text::tokenize(c.text));
    vocab.insert(cand_tokens.back().begin(), cand_tokens.back().end());
  }
  std::vector<std::unordered_map<std::string, double>> counts;
  std::vector<double> totals;
  for (const Document& d : group.documents) {
    auto tokens = text::tokenize(d.text);
    auto& table = counts.emplace_back();
    for (const auto& t : tokens) table[t] += 1.0;
    totals.push_back(static_cast<double>(tokens.size()));
    vocab.insert(tokens.begin(), tokens.end());
  }
  const double alpha = cfg.smoothing_alpha;
  const double vocab_mass = alpha * static_cast<double>(vocab.size());

  for (std::size_t s = 0; s < cands.size(); ++s) {
    const auto& tokens = cand_tokens[s];
    if (tokens.empty()) {
      m.warnings.push_back("candidate " + cands[s].id +
                           " has no tokens; column set to floor_logprob");
      for (std::size_t d = 0; d < m.num_docs(); ++d) m.values(d, s) = cfg.floor_logprob;
      continue;
    }
    for (std::size_t d = 0; d < m.num_docs(); ++d) {
      double denom = totals[d] + vocab_mass;
      double sum = 0.0;
      for (const auto& t : tokens) {
        auto it = counts[d].find(t);
        double count = it == counts[d].end() ? 0.0 : it->second;
        sum += std::log((count + alpha) / denom);
      }
      m.values(d, s) = finish_entry(sum / static_cast<double>(tokens.size()), cfg);
    }
  }
  return m;
}

TruthMatrix score_tfidf(const SubmissionGroup& group, const CandidateSet& cands,
                        const ScorerConfig& cfg) {
  cfg.validate();
  TruthMatrix m = empty_matrix(group, cands);
  std::vector<std::vector<std::string>> doc_tokens;
  for (const Document& d : group.documents) doc_tokens.push_back(text::tokenize(d.text));
  TfidfModel model(doc_tokens);
  std::vector<SparseVector> doc_vectors;
  for (const auto& t : doc_tokens) doc_vectors.push_back(model.vectorize(t));

  const double eps = std::exp(cfg.floor_logprob);
  for (std::size_t s = 0; s < cands.size(); ++s) {
    SparseVector v = model.vectorize(text::tokenize(cands[s].text));
    for (std::size_t d = 0; d < m.num_docs(); ++d) {
      double cos = std::clamp(cosine(doc_vectors[d], v), 0.0, 1.0);
      m.values(d, s) = finish_entry(std::log(eps + cos), cfg);
    }
  }
  return m;
}

TruthMatrix align_matrix(TruthMatrix m, const SubmissionGroup& group,
                         const CandidateSet& cands) {
  validate(m);
  auto index_of = [](const std::vector<std::string>& ids) {
    std::unordered_map<std::string, std::size_t> out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (!out.emplace(ids[i], i).second) {
        throw DataError("duplicate id '" + ids[i] + "' in truth matrix");
      }
    }
    return out;
  };
  auto rows = index_of(m.doc_ids);
  auto cols = index_of(m.cand_ids);

  std::vector<std::string> want_docs, want_cands = cands.ids();
  for (const Document& d : group.documents) want_docs.push_back(d.id);

  std::vector<std::string> missing, extra;
  auto diff = [&](const std::vector<std::string>& want,
                  const std::unordered_map<std::string, std::size_t>& have,
                  const std::vector<std::string>& have_order, const char* what) {
    std::set<std::string> want_set(want.begin(), want.end());
    for (const auto& id : want) {
      if (!have.count(id)) missing.push_back(std::string(what) + " " + id);
    }
    for (const auto& id : have_order) {
      if (!want_set.count(id)) extra.push_back(std::string(what) + " " + id);
    }
  };
  diff(want_docs, rows, m.doc_ids, "document");
  diff(want_cands, cols, m.cand_ids, "candidate");
  if (!missing.empty() || !extra.empty()) {
    std::string msg = "truth matrix ids do not match submission '" +
                      group.submission_id + "'";
    if (!missing.empty()) msg += "; missing: " + join(missing);
    if (!extra.empty()) msg += "; unexpected: " + join(extra);
    throw DataError(msg);
  }

  TruthMatrix out;
  out.doc_ids = std::move(want_docs);
  out.cand_ids = std::move(want_cands);
  out.values = Matrix(out.doc_ids.size(), out.cand_ids.size());
  for (std::size_t d = 0; d < out.doc_ids.size(); ++d) {
    std::size_t src_row = rows.at(out.doc_ids[d]);
    for (std::size_t s = 0; s < out.cand_ids.size(); ++s) {
      out.values(d, s) = m.values(src_row, cols.at(out.cand_ids[s]));
    }
  }
  out.warnings = std::move(m.warnings);
  return out;
}

TruthMatrix score_external(const std::filesystem::path& path,
                           const SubmissionGroup& group, const CandidateSet& cands) {
  return align_matrix(load_matrix(path), group, cands);
}

TruthMatrix score(const SubmissionGroup& group, const CandidateSet& cands,
                  const ScorerConfig& cfg, const std::filesystem::path& external_path) {
  switch (cfg.kind) {
    case ScorerKind::kUnigramLm: return score_unigram(group, cands, cfg);
    case ScorerKind::kTfidfCosine: return score_tfidf(group, cands, cfg);
    case ScorerKind::kExternal:
      if (external_path.empty()) {
        throw ConfigError("external scorer requires a matrix path");
      }
      return score_external(external_path, group, cands);
  }
  throw ConfigError("unknown scorer kind");
}

}  // namespace glimpse
