#include "glimpse/eval.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "glimpse/error.h"
#include "glimpse/text.h"
#include "glimpse/tfidf.h"

namespace glimpse {
namespace {

using NgramCounts = std::map<std::string, double>;

NgramCounts ngrams(const std::vector<std::string>& tokens, std::size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (std::size_t j = 1; j < n; ++j) key += '\x1f' + tokens[i + j];
    counts[key] += 1.0;
  }
  return counts;
}

double ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

Prf make_prf(double overlap, double cand_total, double ref_total) {
  Prf p;
  p.precision = ratio(overlap, cand_total);
  p.recall = ratio(overlap, ref_total);
  double sum = p.precision + p.recall;
  p.f1 = sum > 0.0 ? 2.0 * p.precision * p.recall / sum : 0.0;
  return p;
}

std::size_t lcs_length(const std::vector<std::string>& a,
                       const std::vector<std::string>& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double dense_cosine(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw DataError("embedding dimensions differ");
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  if (aa == 0.0 || bb == 0.0) return 0.0;
  return ab / std::sqrt(aa * bb);
}

const std::vector<double>& lookup(const VectorTable& table, const std::string& id) {
  auto it = table.find(id);
  if (it == table.end()) throw DataError("no vector for text id '" + id + "'");
  return it->second;
}

// Similarity of every summary (rows) to every document (columns).
std::vector<std::vector<double>> similarities(const std::vector<std::string>& summaries,
                                              const SubmissionGroup& group,
                                              const SimilarityOptions& options) {
  std::vector<std::vector<double>> sims(summaries.size());
  if (options.kind == SimilarityKind::kExternalVectors) {
    if (options.vectors == nullptr) {
      throw ConfigError("external_vectors similarity needs a vectors file");
    }
    for (std::size_t i = 0; i < summaries.size(); ++i) {
      const auto& sv = lookup(*options.vectors, summary_vector_id(group.documents[i]));
      for (const Document& d : group.documents) {
        sims[i].push_back(dense_cosine(sv, lookup(*options.vectors, document_vector_id(d))));
      }
    }
    return sims;
  }
  std::vector<std::vector<std::string>> doc_tokens;
  for (const Document& d : group.documents) doc_tokens.push_back(text::tokenize(d.text));
  TfidfModel model(doc_tokens);
  std::vector<SparseVector> doc_vectors;
  for (const auto& t : doc_tokens) doc_vectors.push_back(model.vectorize(t));
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    SparseVector sv = model.vectorize(text::tokenize(summaries[i]));
    for (const auto& dv : doc_vectors) sims[i].push_back(cosine(sv, dv));
  }
  return sims;
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

SimilarityKind parse_similarity_kind(std::string_view name) {
  if (name == "tfidf_cosine") return SimilarityKind::kTfidfCosine;
  if (name == "external_vectors") return SimilarityKind::kExternalVectors;
  throw ConfigError("unknown similarity '" + std::string(name) + "'");
}

std::string_view to_string(SimilarityKind kind) {
  return kind == SimilarityKind::kTfidfCosine ? "tfidf_cosine" : "external_vectors";
}

VectorTable load_vectors(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read vectors file " + path.string());
  VectorTable table;
  std::string line;
  std::size_t lineno = 0;
  std::size_t dim = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream cells(line);
    std::string id, cell;
    std::getline(cells, id, '\t');
    std::vector<double> v;
    while (std::getline(cells, cell, '\t')) {
      double x = 0.0;
      auto res = std::from_chars(cell.data(), cell.data() + cell.size(), x);
      if (cell.empty() || res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
        throw ParseError(path.string(), lineno, v.size() + 2,
                         "non-numeric cell '" + cell + "'");
      }
      v.push_back(x);
    }
    if (v.empty()) throw ParseError(path.string(), lineno, 0, "vector has no components");
    if (dim == 0) dim = v.size();
    if (v.size() != dim) {
      throw ParseError(path.string(), lineno, 0, "vector dimension " +
                                                     std::to_string(v.size()) +
                                                     " != " + std::to_string(dim));
    }
    if (!table.emplace(id, std::move(v)).second) {
      throw ParseError(path.string(), lineno, 1, "duplicate text id '" + id + "'");
    }
  }
  return table;
}

std::string document_vector_id(const Document& doc) {
  return doc.submission_id + "/" + doc.id;
}

std::string summary_vector_id(const Document& doc) {
  return document_vector_id(doc) + "#summary";
}

std::vector<bool> identification_hits(const std::vector<std::string>& summaries,
                                      const SubmissionGroup& group,
                                      const SimilarityOptions& options) {
  if (summaries.size() != group.size()) {
    throw DataError("expected one summary per document in '" + group.submission_id + "'");
  }
  auto sims = similarities(summaries, group, options);
  std::vector<bool> hits;
  for (std::size_t i = 0; i < sims.size(); ++i) {
    const auto& row = sims[i];
    double own = row[i];
    bool hit = true;
    for (std::size_t d = 0; d < row.size() && hit; ++d) {
      if (d == i) continue;
      double tolerance = 1e-12 * std::max(1.0, std::abs(own));
      if (row[d] >= own - tolerance) hit = false;
    }
    hits.push_back(hit);
  }
  return hits;
}

double discriminativeness(const std::vector<std::string>& summaries,
                          const SubmissionGroup& group,
                          const SimilarityOptions& options) {
  auto hits = identification_hits(summaries, group, options);
  if (hits.empty()) return 0.0;
  double n = static_cast<double>(std::count(hits.begin(), hits.end(), true));
  return n / static_cast<double>(hits.size());
}

Prf rouge(std::string_view candidate, std::string_view reference, RougeVariant variant,
          std::vector<std::string>* warnings) {
  auto cand = text::tokenize(candidate);
  auto ref = text::tokenize(reference);
  if (cand.empty() || ref.empty()) {
    if (warnings) warnings->push_back("ROUGE on text without tokens");
    return {};
  }
  if (variant == RougeVariant::kRL) {
    return make_prf(static_cast<double>(lcs_length(cand, ref)),
                    static_cast<double>(cand.size()), static_cast<double>(ref.size()));
  }
  std::size_t n = variant == RougeVariant::kR1 ? 1 : 2;
  NgramCounts c = ngrams(cand, n), r = ngrams(ref, n);
  double overlap = 0.0, c_total = 0.0, r_total = 0.0;
  for (const auto& [g, count] : c) {
    c_total += count;
    auto it = r.find(g);
    if (it != r.end()) overlap += std::min(count, it->second);
  }
  for (const auto& [g, count] : r) r_total += count;
  return make_prf(overlap, c_total, r_total);
}

Stat summarize_values(const std::vector<double>& values) {
  Stat s;
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

SubmissionEval evaluate_summaries(const std::vector<std::string>& per_doc,
                                  const std::optional<std::string>& consensus,
                                  const SubmissionGroup& group,
                                  const SimilarityOptions& similarity) {
  SubmissionEval e;
  e.submission_id = group.submission_id;
  e.method = "glimpse";
  e.discriminativeness = discriminativeness(per_doc, group, similarity);
  double chars = 0.0;
  for (const auto& s : per_doc) chars += static_cast<double>(text::length_chars(s));
  e.mean_summary_chars = per_doc.empty() ? 0.0 : chars / static_cast<double>(per_doc.size());
  e.disc_per_char =
      e.mean_summary_chars > 0.0 ? e.discriminativeness / e.mean_summary_chars : 0.0;
  if (group.gold_summary && consensus) {
    e.rouge1 = rouge(*consensus, *group.gold_summary, RougeVariant::kR1, &e.warnings);
    e.rouge2 = rouge(*consensus, *group.gold_summary, RougeVariant::kR2, &e.warnings);
    e.rougeL = rouge(*consensus, *group.gold_summary, RougeVariant::kRL, &e.warnings);
  }
  return e;
}

SubmissionEval evaluate(const SummaryBundle& bundle, const SubmissionGroup& group,
                        const EvalOptions& options) {
  std::vector<std::string> per_doc;
  for (const auto& s : bundle.per_doc) per_doc.push_back(s.text);
  const MdsSummary& mds = options.rouge_variant == MdsVariant::kSpeaker
                              ? bundle.mds_speaker
                              : bundle.mds_unique;
  return evaluate_summaries(per_doc, mds.text, group, options.similarity);
}

EvalReport aggregate(std::vector<SubmissionEval> per_submission) {
  EvalReport report;
  report.per_submission = std::move(per_submission);
  std::vector<double> disc, dpc;
  std::map<std::string, std::vector<double>> rouge_values;
  for (const SubmissionEval& e : report.per_submission) {
    disc.push_back(e.discriminativeness);
    dpc.push_back(e.disc_per_char);
    auto add = [&](const char* name, const std::optional<Prf>& p) {
      if (!p) return;
      std::string base(name);
      rouge_values[base + "_p"].push_back(p->precision);
      rouge_values[base + "_r"].push_back(p->recall);
      rouge_values[base + "_f1"].push_back(p->f1);
    };
    add("rouge1", e.rouge1);
    add("rouge2", e.rouge2);
    add("rougeL", e.rougeL);
  }
  report.discriminativeness = summarize_values(disc);
  report.disc_per_char = summarize_values(dpc);
  if (!rouge_values.empty()) {
    report.rouge.emplace();
    for (const auto& [k, v] : rouge_values) (*report.rouge)[k] = summarize_values(v);
  }
  return report;
}

std::vector<std::string> random_per_doc(const CandidateSet& cands, std::size_t num_docs,
                                        std::mt19937_64& rng) {
  if (cands.size() == 0) throw DataError("random baseline needs candidates");
  std::uniform_int_distribution<std::size_t> pick(0, cands.size() - 1);
  std::vector<std::string> out;
  for (std::size_t d = 0; d < num_docs; ++d) out.push_back(cands[pick(rng)].text);
  return out;
}

std::string random_consensus(const CandidateSet& cands, std::size_t count,
                             std::mt19937_64& rng) {
  std::vector<std::size_t> order(cands.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(std::min(count, order.size()));
  std::sort(order.begin(), order.end());
  std::string out;
  for (std::size_t i : order) {
    if (!out.empty()) out += ' ';
    out += cands[i].text;
  }
  return out;
}

std::string report_csv(const EvalReport& report) {
  static const char* kRougeColumns[] = {"rouge1", "rouge2", "rougeL"};
  std::ostringstream os;
  os << "submission_id,method,discriminativeness,mean_summary_chars,disc_per_char";
  if (report.rouge) {
    for (const char* r : kRougeColumns) os << ',' << r << "_p," << r << "_r," << r << "_f1";
  }
  os << '\n';
  for (const SubmissionEval& e : report.per_submission) {
    std::string id = e.submission_id;
    if (id.find_first_of(",\"\n") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : id) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
      id = quoted + "\"";
    }
    os << id << ',' << e.method << ',' << format_number(e.discriminativeness) << ','
       << format_number(e.mean_summary_chars) << ',' << format_number(e.disc_per_char);
    if (report.rouge) {
      for (const auto* p : {&e.rouge1, &e.rouge2, &e.rougeL}) {
        if (*p) {
          os << ',' << format_number((*p)->precision) << ',' << format_number((*p)->recall)
             << ',' << format_number((*p)->f1);
        } else {
          os << ",,,";
        }
      }
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace glimpse
