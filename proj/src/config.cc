#include "glimpse/config.h"

#include <charconv>
#include <sstream>

#include "glimpse/error.h"
#include "glimpse/text.h"

namespace glimpse {
namespace {

std::string key_error(std::string_view key, std::string_view value, const char* want) {
  return "config key '" + std::string(key) + "': expected " + want + ", got '" +
         std::string(value) + "'";
}

double to_double(std::string_view key, std::string_view value) {
  double v = 0.0;
  auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (value.empty() || res.ec != std::errc() || res.ptr != value.data() + value.size()) {
    throw ConfigError(key_error(key, value, "a number"));
  }
  return v;
}

std::uint64_t to_unsigned(std::string_view key, std::string_view value) {
  std::uint64_t v = 0;
  auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (value.empty() || res.ec != std::errc() || res.ptr != value.data() + value.size()) {
    throw ConfigError(key_error(key, value, "a non-negative integer"));
  }
  return v;
}

bool to_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ConfigError(key_error(key, value, "a boolean"));
}

std::vector<std::string> to_list(std::string_view value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    std::size_t comma = value.find(',', start);
    std::size_t end = comma == std::string_view::npos ? value.size() : comma;
    std::string_view item = text::trim(value.substr(start, end - start));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename Fn>
auto wrap(std::string_view key, Fn fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    throw ConfigError("config key '" + std::string(key) + "': " + e.what());
  }
}

}  // namespace

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> kKeys = {
      "input.path",          "input.format",          "input.candidates",
      "output.dir",          "jobs",                  "segmenter.min_chars",
      "segmenter.max_chars", "segmenter.abbreviations", "scorer.kind",
      "scorer.smoothing_alpha", "scorer.floor_logprob", "scorer.temperature",
      "scorer.external_dir", "rsa.iterations",        "rsa.rationality_lambda",
      "rsa.cost_per_char",   "rsa.trace",             "composer.n_common",
      "composer.n_unique",   "composer.per_doc_n",    "composer.variant",
      "eval.similarity",     "eval.vectors",          "eval.random_baseline",
      "eval.seed"};
  return kKeys;
}

void RunConfig::set(std::string_view key, std::string_view raw) {
  std::string_view value = text::trim(raw);
  if (key == "input.path") input_path = std::string(value);
  else if (key == "input.format") input_format = wrap(key, [&] { return parse_corpus_format(value); });
  else if (key == "input.candidates") candidates_path = std::string(value);
  else if (key == "output.dir") output_dir = std::string(value);
  else if (key == "jobs") jobs = to_unsigned(key, value);
  else if (key == "segmenter.min_chars") segmenter.min_chars = to_unsigned(key, value);
  else if (key == "segmenter.max_chars") segmenter.max_chars = to_unsigned(key, value);
  else if (key == "segmenter.abbreviations") segmenter.abbreviations = to_list(value);
  else if (key == "scorer.kind") scorer.kind = wrap(key, [&] { return parse_scorer_kind(value); });
  else if (key == "scorer.smoothing_alpha") scorer.smoothing_alpha = to_double(key, value);
  else if (key == "scorer.floor_logprob") scorer.floor_logprob = to_double(key, value);
  else if (key == "scorer.temperature") scorer.temperature = to_double(key, value);
  else if (key == "scorer.external_dir") external_dir = std::string(value);
  else if (key == "rsa.iterations") rsa.iterations = to_unsigned(key, value);
  else if (key == "rsa.rationality_lambda") rsa.rationality_lambda = to_double(key, value);
  else if (key == "rsa.cost_per_char") rsa.cost_per_char = to_double(key, value);
  else if (key == "rsa.trace") rsa.keep_trace = to_bool(key, value);
  else if (key == "composer.n_common") composer.n_common = to_unsigned(key, value);
  else if (key == "composer.n_unique") composer.n_unique = to_unsigned(key, value);
  else if (key == "composer.per_doc_n") composer.per_doc_n = to_unsigned(key, value);
  else if (key == "composer.variant") composer.variant = wrap(key, [&] { return parse_mds_variant(value); });
  else if (key == "eval.similarity") similarity = wrap(key, [&] { return parse_similarity_kind(value); });
  else if (key == "eval.vectors") vectors_path = std::string(value);
  else if (key == "eval.random_baseline") random_baseline = to_bool(key, value);
  else if (key == "eval.seed") seed = to_unsigned(key, value);
  else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void RunConfig::validate() const {
  if (input_path.empty()) throw ConfigError("input.path is required");
  if (!std::filesystem::exists(input_path)) {
    throw DataError("input path does not exist: " + input_path.string());
  }
  if (!candidates_path.empty() && !std::filesystem::exists(candidates_path)) {
    throw DataError("input.candidates does not exist: " + candidates_path.string());
  }
  if (jobs == 0) throw ConfigError("jobs must be >= 1");
  if (segmenter.min_chars > segmenter.max_chars) {
    throw ConfigError("segmenter.min_chars exceeds segmenter.max_chars");
  }
  scorer.validate();
  if (scorer.kind == ScorerKind::kExternal && external_dir.empty()) {
    throw ConfigError("scorer.kind = external needs scorer.external_dir");
  }
  rsa.validate();
  composer.validate();
  if (similarity == SimilarityKind::kExternalVectors && vectors_path.empty()) {
    throw ConfigError("eval.similarity = external_vectors needs eval.vectors");
  }
}

std::map<std::string, std::string> parse_key_values(std::string_view contents,
                                                    const std::string& source) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(contents)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = text::trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::size_t eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(source, lineno, 0, "expected 'key = value'");
    }
    std::string_view key = text::trim(body.substr(0, eq));
    if (key.empty()) throw ParseError(source, lineno, 1, "empty key");
    out[std::string(key)] = std::string(text::trim(body.substr(eq + 1)));
  }
  return out;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  RunConfig cfg;
  std::string contents;
  try {
    contents = read_file(path);
  } catch (const DataError&) {
    throw ConfigError("cannot read config file " + path.string());
  }
  std::map<std::string, std::string> values;
  try {
    values = parse_key_values(contents, path.string());
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  }
  for (const auto& [k, v] : values) cfg.set(k, v);
  // Relative paths in a config file resolve against the file's directory.
  auto base = path.parent_path();
  auto rebase = [&](std::filesystem::path& p) {
    if (!p.empty() && p.is_relative()) p = base / p;
  };
  if (values.count("input.path")) rebase(cfg.input_path);
  if (values.count("input.candidates")) rebase(cfg.candidates_path);
  if (values.count("output.dir")) rebase(cfg.output_dir);
  if (values.count("scorer.external_dir")) rebase(cfg.external_dir);
  if (values.count("eval.vectors")) rebase(cfg.vectors_path);
  return cfg;
}

}  // namespace glimpse
