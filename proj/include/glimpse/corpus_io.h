#ifndef GLIMPSE_CORPUS_IO_H_
#define GLIMPSE_CORPUS_IO_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "glimpse/truth_matrix.h"

namespace glimpse {

struct Document {
  std::string id;
  std::string submission_id;
  std::string text;  // NFC-normalized
  std::size_t index = 0;  // position within its submission group
};

// The documents of one submission (e.g. its peer reviews) plus an optional
// gold summary used only for evaluation.
struct SubmissionGroup {
  std::string submission_id;
  std::vector<Document> documents;
  std::optional<std::string> gold_summary;

  std::size_t size() const { return documents.size(); }
  // Index of the document with this id, or nullopt.
  std::optional<std::size_t> find(std::string_view doc_id) const;
};

enum class CorpusFormat { kJsonLines, kDirectory };

CorpusFormat parse_corpus_format(std::string_view name);

// Loads documents grouped by submission_id, groups and documents in order of
// first appearance.
//
// json_lines: one record per line with string fields id, submission_id, text
// and an optional gold_summary. Blank lines are skipped.
//
// directory: each subdirectory of `path` is a submission; each regular file
// inside is one document whose id is the file stem, ordered by file name. A
// file named `gold_summary.txt` holds the gold summary instead.
std::vector<SubmissionGroup> load_corpus(const std::filesystem::path& path,
                                         CorpusFormat format);

// json_lines parsing from a stream; `source` labels error messages.
std::vector<SubmissionGroup> parse_corpus_jsonl(std::istream& in,
                                                const std::string& source);

// TruthMatrix TSV:
//   #doc_id<TAB>cand_1<TAB>...<TAB>cand_K
//   doc_1<TAB>v_11<TAB>...<TAB>v_1K
// Values are written with 17 significant digits, so load(save(m)) == m.
void write_matrix_tsv(const TruthMatrix& m, std::ostream& out);
TruthMatrix read_matrix_tsv(std::istream& in, const std::string& source);
void save_matrix(const TruthMatrix& m, const std::filesystem::path& path);
TruthMatrix load_matrix(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view contents);

}  // namespace glimpse

#endif  // GLIMPSE_CORPUS_IO_H_
