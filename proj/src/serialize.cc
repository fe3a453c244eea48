#include "glimpse/serialize.h"

#include "glimpse/error.h"

namespace glimpse {
namespace {

Json rows_of(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    out.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return out;
}

Json columns_of(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m.column(c));
  return out;
}

Matrix from_rows(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) throw DataError("RSA JSON: bad row count");
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (j[r].size() != cols) throw DataError("RSA JSON: bad row length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

Matrix from_columns(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != cols) throw DataError("RSA JSON: bad column count");
  Matrix m(rows, cols);
  for (std::size_t c = 0; c < cols; ++c) {
    if (j[c].size() != rows) throw DataError("RSA JSON: bad column length");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = j[c][r].get<double>();
  }
  return m;
}

std::vector<std::string> ids_of(const CandidateSet& cands,
                                const std::vector<std::size_t>& indices) {
  std::vector<std::string> out;
  for (std::size_t i : indices) out.push_back(cands[i].id);
  return out;
}

Json prf_json(const Prf& p) {
  return Json{{"precision", p.precision}, {"recall", p.recall}, {"f1", p.f1}};
}

Json stat_json(const Stat& s) { return Json{{"mean", s.mean}, {"stddev", s.stddev}}; }

}  // namespace

Json to_json(const RsaResult& result) {
  Json j;
  j["doc_ids"] = result.doc_ids;
  j["cand_ids"] = result.cand_ids;
  j["speaker"] = rows_of(result.speaker);
  j["listener"] = columns_of(result.listener);
  j["uniqueness"] = result.uniqueness;
  j["speaker_argmax"] = result.speaker_argmax;
  j["config_echo"] = Json{{"iterations", result.config.iterations},
                         {"rationality_lambda", result.config.rationality_lambda},
                         {"cost_per_char", result.config.cost_per_char}};
  j["warnings"] = result.warnings;
  if (!result.trace.empty()) {
    Json trace = Json::array();
    for (const RsaRound& r : result.trace) {
      trace.push_back(Json{{"round", r.round},
                           {"speaker", rows_of(r.speaker)},
                           {"listener", columns_of(r.listener)}});
    }
    j["trace"] = std::move(trace);
  }
  return j;
}

RsaResult rsa_result_from_json(const Json& j) {
  try {
    RsaResult r;
    r.doc_ids = j.at("doc_ids").get<std::vector<std::string>>();
    r.cand_ids = j.at("cand_ids").get<std::vector<std::string>>();
    const std::size_t n = r.doc_ids.size(), k = r.cand_ids.size();
    r.speaker = from_rows(j.at("speaker"), n, k);
    r.listener = from_columns(j.at("listener"), n, k);
    r.uniqueness = j.at("uniqueness").get<std::vector<double>>();
    r.speaker_argmax = j.at("speaker_argmax").get<std::vector<std::size_t>>();
    if (r.uniqueness.size() != k || r.speaker_argmax.size() != n) {
      throw DataError("RSA JSON: score vectors have the wrong length");
    }
    const Json& cfg = j.at("config_echo");
    r.config.iterations = cfg.at("iterations").get<std::size_t>();
    r.config.rationality_lambda = cfg.at("rationality_lambda").get<double>();
    r.config.cost_per_char = cfg.at("cost_per_char").get<double>();
    if (j.contains("warnings")) r.warnings = j["warnings"].get<std::vector<std::string>>();
    return r;
  } catch (const Json::exception& e) {
    throw DataError(std::string("RSA JSON: ") + e.what());
  }
}

Json to_json(const CandidateSet& cands) {
  Json out = Json::array();
  for (const Candidate& c : cands.candidates) {
    Json sources = Json::array();
    for (const SourceSpan& s : c.sources) {
      sources.push_back(Json{{"doc_index", s.doc_index},
                             {"start", s.start},
                             {"end", s.end},
                             {"synthetic", s.synthetic}});
    }
    out.push_back(Json{{"id", c.id},
                       {"text", c.text},
                       {"length_chars", c.length_chars},
                       {"sources", std::move(sources)}});
  }
  return out;
}

Json to_json(const MdsSummary& mds, const CandidateSet& cands) {
  return Json{{"variant", to_string(mds.variant)},
              {"text", mds.text},
              {"candidate_ids", ids_of(cands, mds.candidates())},
              {"common_ids", ids_of(cands, mds.common)},
              {"unique_ids", ids_of(cands, mds.unique)}};
}

Json to_json(const SummaryBundle& bundle, const CandidateSet& cands,
             const SubmissionGroup& group) {
  Json j;
  j["submission_id"] = bundle.submission_id;
  Json per_doc = Json::array();
  for (const PerDocSummary& s : bundle.per_doc) {
    per_doc.push_back(Json{{"doc_id", s.doc_id},
                           {"candidate_ids", ids_of(cands, s.candidates)},
                           {"text", s.text}});
  }
  j["per_doc"] = std::move(per_doc);
  j["mds"] = to_json(bundle.mds(), cands);
  j["mds_speaker"] = to_json(bundle.mds_speaker, cands);
  j["mds_unique"] = to_json(bundle.mds_unique, cands);
  Json highlights = Json::array();
  for (std::size_t d = 0; d < bundle.highlights.size(); ++d) {
    Json spans = Json::array();
    for (const Highlight& h : bundle.highlights[d]) {
      spans.push_back(Json{{"start", h.start},
                           {"end", h.end},
                           {"candidate_id", cands[h.candidate].id},
                           {"score", h.score},
                           {"color", h.color.hex()},
                           {"bucket", h.bucket}});
    }
    highlights.push_back(Json{{"doc_id", group.documents[d].id}, {"spans", std::move(spans)}});
  }
  j["highlights"] = std::move(highlights);
  j["candidates"] = to_json(cands);
  j["warnings"] = bundle.warnings;
  return j;
}

Json to_json(const EvalReport& report) {
  Json per = Json::array();
  for (const SubmissionEval& e : report.per_submission) {
    Json row{{"submission_id", e.submission_id},
             {"method", e.method},
             {"discriminativeness", e.discriminativeness},
             {"mean_summary_chars", e.mean_summary_chars},
             {"disc_per_char", e.disc_per_char}};
    if (e.rouge1) row["rouge1"] = prf_json(*e.rouge1);
    if (e.rouge2) row["rouge2"] = prf_json(*e.rouge2);
    if (e.rougeL) row["rougeL"] = prf_json(*e.rougeL);
    row["warnings"] = e.warnings;
    per.push_back(std::move(row));
  }
  Json agg{{"count", report.per_submission.size()},
           {"discriminativeness", stat_json(report.discriminativeness)},
           {"disc_per_char", stat_json(report.disc_per_char)}};
  if (report.rouge) {
    Json r;
    for (const auto& [k, s] : *report.rouge) r[k] = stat_json(s);
    agg["rouge"] = std::move(r);
  }
  return Json{{"per_submission", std::move(per)}, {"aggregate", std::move(agg)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace glimpse
