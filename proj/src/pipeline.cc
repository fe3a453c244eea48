#include "glimpse/pipeline.h"

#include <atomic>
#include <exception>
#include <fstream>
#include <set>
#include <thread>

#include "glimpse/error.h"
#include "glimpse/likelihood.h"
#include "glimpse/serialize.h"
#include "glimpse/text.h"

namespace glimpse {
namespace fs = std::filesystem;

namespace {

// Runs fn(i) for i in [0, n) on up to `jobs` threads; results keep index
// order and the first failure (by index) is rethrown.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, std::size_t jobs, Fn fn) {
  std::vector<std::optional<T>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::size_t threads = std::min(std::max<std::size_t>(jobs, 1), std::max<std::size_t>(n, 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<SubmissionGroup> load_groups(const RunConfig& config) {
  config.validate();
  auto groups = load_corpus(config.input_path, config.input_format);
  if (groups.empty()) throw DataError("no documents in " + config.input_path.string());
  return groups;
}

ImportedBySubmission load_imports(const RunConfig& config) {
  if (config.candidates_path.empty()) return {};
  return load_imported_candidates(config.candidates_path);
}

void check_stems(const std::vector<SubmissionGroup>& groups) {
  std::set<std::string> seen;
  for (const auto& g : groups) {
    if (!seen.insert(file_stem(g.submission_id)).second) {
      throw DataError("submission ids collide after file-name sanitizing: '" +
                      g.submission_id + "'");
    }
  }
}

std::optional<RsaResult> read_cached_rsa(const fs::path& path) {
  std::error_code ec;
  if (!fs::exists(path, ec)) return std::nullopt;
  try {
    return rsa_result_from_json(Json::parse(read_file(path)));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

bool cache_matches(const RsaResult& cached, const Analysis& a, const RsaConfig& cfg) {
  std::vector<std::string> doc_ids;
  for (const auto& d : a.group.documents) doc_ids.push_back(d.id);
  return cached.doc_ids == doc_ids && cached.cand_ids == a.candidates.ids() &&
         cached.config.iterations == cfg.iterations &&
         cached.config.rationality_lambda == cfg.rationality_lambda &&
         cached.config.cost_per_char == cfg.cost_per_char && !cfg.keep_trace;
}

}  // namespace

ImportedBySubmission load_imported_candidates(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  ImportedBySubmission out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    try {
      auto rec = Json::parse(line);
      out[rec.at("submission_id").get<std::string>()].push_back(
          {rec.at("doc_id").get<std::string>(), rec.at("text").get<std::string>()});
    } catch (const Json::exception& e) {
      throw ParseError(path.string(), lineno, 0, e.what());
    }
  }
  return out;
}

std::string file_stem(const std::string& submission_id) {
  std::string out;
  for (char c : submission_id) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '.' || c == '_' || c == '-';
    out += ok ? c : '_';
  }
  if (out.empty() || out == "." || out == "..") out = "_" + out;
  return out;
}

Analysis analyze(const SubmissionGroup& group, const RunConfig& config,
                 const ImportedBySubmission& imported,
                 const std::optional<RsaResult>& cached_rsa) {
  Analysis a;
  a.group = group;
  if (auto it = imported.find(group.submission_id); it != imported.end()) {
    a.candidates = import_candidates(group, it->second);
  } else {
    a.candidates = extract_candidates(group, config.segmenter);
  }
  if (a.candidates.size() == 0) {
    throw DataError("submission '" + group.submission_id + "' has no candidates");
  }
  fs::path external;
  if (config.scorer.kind == ScorerKind::kExternal) {
    external = config.external_dir / (file_stem(group.submission_id) + ".matrix.tsv");
  }
  a.matrix = score(group, a.candidates, config.scorer, external);
  if (cached_rsa && cache_matches(*cached_rsa, a, config.rsa)) {
    a.rsa = *cached_rsa;
    a.rsa_from_cache = true;
  } else {
    a.rsa = run_rsa(a.matrix, a.candidates, config.rsa);
  }
  return a;
}

std::vector<fs::path> cmd_score(const RunConfig& config) {
  auto groups = load_groups(config);
  check_stems(groups);
  auto imported = load_imports(config);
  auto analyses = parallel_map<Analysis>(groups.size(), config.jobs, [&](std::size_t i) {
    return analyze(groups[i], config, imported);
  });
  fs::create_directories(config.output_dir);
  std::vector<fs::path> written;
  for (const Analysis& a : analyses) {
    std::string stem = file_stem(a.group.submission_id);
    fs::path matrix_path = config.output_dir / (stem + ".matrix.tsv");
    fs::path rsa_path = config.output_dir / (stem + ".rsa.json");
    save_matrix(a.matrix, matrix_path);
    write_file_atomic(rsa_path, dump(to_json(a.rsa)));
    written.push_back(matrix_path);
    written.push_back(rsa_path);
  }
  return written;
}

std::vector<fs::path> cmd_summarize(const RunConfig& config) {
  auto groups = load_groups(config);
  check_stems(groups);
  auto imported = load_imports(config);
  struct Output {
    std::string stem;
    std::string json;
    std::string html;
  };
  auto outputs = parallel_map<Output>(groups.size(), config.jobs, [&](std::size_t i) {
    std::string stem = file_stem(groups[i].submission_id);
    auto cached = read_cached_rsa(config.output_dir / (stem + ".rsa.json"));
    Analysis a = analyze(groups[i], config, imported, cached);
    SummaryBundle bundle = compose_bundle(a.rsa, a.candidates, a.group, config.composer);
    return Output{stem, dump(to_json(bundle, a.candidates, a.group)),
                  render_html(bundle, a.candidates, a.group)};
  });
  fs::create_directories(config.output_dir);
  std::vector<fs::path> written;
  for (const Output& o : outputs) {
    fs::path json_path = config.output_dir / (o.stem + ".summary.json");
    fs::path html_path = config.output_dir / (o.stem + ".highlights.html");
    write_file_atomic(json_path, o.json);
    write_file_atomic(html_path, o.html);
    written.push_back(json_path);
    written.push_back(html_path);
  }
  return written;
}

EvalReport cmd_eval(const RunConfig& config) {
  auto groups = load_groups(config);
  check_stems(groups);
  auto imported = load_imports(config);
  std::optional<VectorTable> vectors;
  if (config.similarity == SimilarityKind::kExternalVectors) {
    vectors = load_vectors(config.vectors_path);
  }
  EvalOptions options;
  options.similarity.kind = config.similarity;
  options.similarity.vectors = vectors ? &*vectors : nullptr;
  options.rouge_variant = config.composer.variant;

  auto evals = parallel_map<SubmissionEval>(groups.size(), config.jobs, [&](std::size_t i) {
    const SubmissionGroup& g = groups[i];
    if (config.random_baseline) {
      CandidateSet cands;
      if (auto it = imported.find(g.submission_id); it != imported.end()) {
        cands = import_candidates(g, it->second);
      } else {
        cands = extract_candidates(g, config.segmenter);
      }
      if (cands.size() == 0) {
        throw DataError("submission '" + g.submission_id + "' has no candidates");
      }
      std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                        static_cast<std::uint32_t>(config.seed >> 32),
                        static_cast<std::uint32_t>(i)};
      std::mt19937_64 rng(seq);
      auto per_doc = random_per_doc(cands, g.size(), rng);
      auto consensus =
          random_consensus(cands, config.composer.n_common + config.composer.n_unique, rng);
      SubmissionEval e = evaluate_summaries(per_doc, consensus, g, options.similarity);
      e.method = "random";
      return e;
    }
    std::string stem = file_stem(g.submission_id);
    auto cached = read_cached_rsa(config.output_dir / (stem + ".rsa.json"));
    Analysis a = analyze(g, config, imported, cached);
    SummaryBundle bundle = compose_bundle(a.rsa, a.candidates, a.group, config.composer);
    return evaluate(bundle, g, options);
  });
  EvalReport report = aggregate(std::move(evals));
  fs::create_directories(config.output_dir);
  write_file_atomic(config.output_dir / "eval_report.json", dump(to_json(report)));
  write_file_atomic(config.output_dir / "eval_report.csv", report_csv(report));
  return report;
}

SubmissionGroup demo_group() {
  SubmissionGroup g;
  g.submission_id = "demo";
  const char* texts[] = {
      "This paper is well-written. However, the theoretical part lacks clarification.",
      "This paper is well-written. I believe it should be accepted."};
  for (std::size_t i = 0; i < 2; ++i) {
    g.documents.push_back(Document{"review" + std::to_string(i + 1), "demo", texts[i], i});
  }
  return g;
}

}  // namespace glimpse
