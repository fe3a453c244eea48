#include "glimpse/corpus_io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "glimpse/error.h"
#include "glimpse/text.h"
#include "json.hpp"

namespace glimpse {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string location(const std::string& source, std::size_t line,
                     std::size_t column) {
  std::ostringstream os;
  os << source;
  if (line > 0) os << ":" << line;
  if (column > 0) os << ":" << column;
  return os.str();
}

std::string required_string(const json& rec, const char* field,
                            const std::string& source, std::size_t line) {
  auto it = rec.find(field);
  if (it == rec.end()) {
    throw ParseError(source, line, 0,
                     std::string("missing field '") + field + "'");
  }
  if (!it->is_string()) {
    throw ParseError(source, line, 0,
                     std::string("field '") + field + "' is not a string");
  }
  return it->get<std::string>();
}

// Accumulates documents into groups while enforcing the corpus invariants.
class GroupBuilder {
 public:
  void add(std::string submission_id, std::string id, std::string text,
           const std::string& where_source, std::size_t where_line) {
    std::string normalized = text::nfc(text);
    if (text::trim(normalized).empty()) {
      throw ParseError(where_source, where_line, 0, "empty text for document '" +
                                                        id + "'");
    }
    SubmissionGroup& group = group_for(submission_id);
    auto& seen = ids_[submission_id];
    if (!seen.insert(id).second) {
      throw ParseError(where_source, where_line, 0,
                       "duplicate document id '" + id + "' in submission '" +
                           submission_id + "'");
    }
    Document doc;
    doc.id = std::move(id);
    doc.submission_id = std::move(submission_id);
    doc.text = std::move(normalized);
    doc.index = group.documents.size();
    group.documents.push_back(std::move(doc));
  }

  void set_gold(const std::string& submission_id, const std::string& gold,
                const std::string& where_source, std::size_t where_line) {
    SubmissionGroup& group = group_for(submission_id);
    std::string normalized = text::nfc(gold);
    if (group.gold_summary && *group.gold_summary != normalized) {
      throw ParseError(where_source, where_line, 0,
                       "conflicting gold_summary for submission '" +
                           submission_id + "'");
    }
    group.gold_summary = std::move(normalized);
  }

  std::vector<SubmissionGroup> finish() && {
    // A gold summary alone does not make a group.
    std::erase_if(groups_, [](const SubmissionGroup& g) {
      return g.documents.empty();
    });
    return std::move(groups_);
  }

 private:
  SubmissionGroup& group_for(const std::string& submission_id) {
    auto [it, inserted] = positions_.try_emplace(submission_id, groups_.size());
    if (inserted) {
      groups_.push_back(SubmissionGroup{submission_id, {}, std::nullopt});
    }
    return groups_[it->second];
  }

  std::vector<SubmissionGroup> groups_;
  std::unordered_map<std::string, std::size_t> positions_;
  std::unordered_map<std::string, std::unordered_set<std::string>> ids_;
};

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return cells;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line,
                       std::size_t column, const std::string& what)
    : DataError(location(source, line, column) + ": " + what),
      line_(line),
      column_(column) {}

std::optional<std::size_t> SubmissionGroup::find(std::string_view doc_id) const {
  for (const Document& d : documents) {
    if (d.id == doc_id) return d.index;
  }
  return std::nullopt;
}

CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "json_lines" || name == "jsonl") return CorpusFormat::kJsonLines;
  if (name == "directory" || name == "directory_of_text_files") {
    return CorpusFormat::kDirectory;
  }
  throw ConfigError("unknown corpus format '" + std::string(name) + "'");
}

std::vector<SubmissionGroup> parse_corpus_jsonl(std::istream& in,
                                                const std::string& source) {
  GroupBuilder builder;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(source, lineno, 0, std::string("invalid JSON: ") + e.what());
    }
    if (!rec.is_object()) throw ParseError(source, lineno, 0, "record is not an object");
    std::string id = required_string(rec, "id", source, lineno);
    std::string sub = required_string(rec, "submission_id", source, lineno);
    std::string body = required_string(rec, "text", source, lineno);
    if (auto gold = rec.find("gold_summary");
        gold != rec.end() && !gold->is_null()) {
      if (!gold->is_string()) {
        throw ParseError(source, lineno, 0, "field 'gold_summary' is not a string");
      }
      builder.set_gold(sub, gold->get<std::string>(), source, lineno);
    }
    builder.add(std::move(sub), std::move(id), std::move(body), source, lineno);
  }
  return std::move(builder).finish();
}

std::vector<SubmissionGroup> load_corpus(const fs::path& path,
                                         CorpusFormat format) {
  std::error_code ec;
  if (!fs::exists(path, ec)) {
    throw DataError("input path does not exist: " + path.string());
  }
  if (format == CorpusFormat::kJsonLines) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path.string());
    return parse_corpus_jsonl(in, path.string());
  }

  if (!fs::is_directory(path)) {
    throw DataError("not a directory: " + path.string());
  }
  std::vector<fs::path> subdirs;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (entry.is_directory()) subdirs.push_back(entry.path());
  }
  std::sort(subdirs.begin(), subdirs.end());
  GroupBuilder builder;
  for (const fs::path& dir : subdirs) {
    std::string sub = dir.filename().string();
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const fs::path& file : files) {
      if (file.filename() == "gold_summary.txt") {
        builder.set_gold(sub, read_file(file), file.string(), 0);
      } else {
        builder.add(sub, file.stem().string(), read_file(file), file.string(), 0);
      }
    }
  }
  return std::move(builder).finish();
}

void validate(const TruthMatrix& m) {
  if (m.values.rows() != m.doc_ids.size() ||
      m.values.cols() != m.cand_ids.size()) {
    throw DataError("truth matrix shape does not match its id lists");
  }
  for (std::size_t r = 0; r < m.values.rows(); ++r) {
    for (std::size_t c = 0; c < m.values.cols(); ++c) {
      if (!std::isfinite(m.values(r, c))) {
        throw DataError("non-finite truth matrix entry at (" + m.doc_ids[r] +
                        ", " + m.cand_ids[c] + ")");
      }
    }
  }
}

void write_matrix_tsv(const TruthMatrix& m, std::ostream& out) {
  validate(m);
  out << "#doc_id";
  for (const auto& id : m.cand_ids) out << '\t' << id;
  out << '\n';
  for (std::size_t r = 0; r < m.doc_ids.size(); ++r) {
    out << m.doc_ids[r];
    for (double v : m.values.row(r)) out << '\t' << format_double(v);
    out << '\n';
  }
}

TruthMatrix read_matrix_tsv(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(source, 1, 0, "empty matrix file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header = split_tabs(line);
  if (header.front() != "#doc_id") {
    throw ParseError(source, 1, 1, "unknown header, expected '#doc_id'");
  }
  TruthMatrix m;
  m.cand_ids.assign(header.begin() + 1, header.end());
  const std::size_t k = m.cand_ids.size();

  std::vector<double> values;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells = split_tabs(line);
    if (cells.size() != k + 1) {
      throw ParseError(source, lineno, 0,
                       "row has " + std::to_string(cells.size() - 1) +
                           " values, header declares " + std::to_string(k));
    }
    m.doc_ids.push_back(cells[0]);
    for (std::size_t c = 1; c <= k; ++c) {
      const std::string& cell = cells[c];
      double v = 0.0;
      auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || res.ec != std::errc() ||
          res.ptr != cell.data() + cell.size() || !std::isfinite(v)) {
        throw ParseError(source, lineno, c + 1,
                         "non-numeric cell '" + cell + "'");
      }
      values.push_back(v);
    }
  }
  m.values = Matrix(m.doc_ids.size(), k);
  for (std::size_t r = 0; r < m.doc_ids.size(); ++r) {
    std::copy_n(values.begin() + static_cast<std::ptrdiff_t>(r * k), k,
                m.values.row(r).begin());
  }
  return m;
}

void save_matrix(const TruthMatrix& m, const fs::path& path) {
  std::ostringstream os;
  write_matrix_tsv(m, os);
  write_file_atomic(path, os.str());
}

TruthMatrix load_matrix(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  return read_matrix_tsv(in, path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file_atomic(const fs::path& path, std::string_view contents) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw DataError("short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw DataError("cannot rename onto " + path.string());
  }
}

}  // namespace glimpse
