#ifndef GLIMPSE_TEXT_H_
#define GLIMPSE_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// UTF-8 text helpers shared by the segmenter, the scorers and the evaluator.
namespace glimpse::text {

// Unicode NFC normalization. Invalid byte sequences become U+FFFD.
std::string nfc(std::string_view s);

// Per-code-point simple lowercase mapping.
std::string lowercase(std::string_view s);

// Strips leading and trailing Unicode whitespace.
std::string_view trim(std::string_view s);

// Replaces every whitespace run with a single ASCII space and trims.
std::string collapse_whitespace(std::string_view s);

// Number of code points.
std::size_t length_chars(std::string_view s);

// Lowercased alphanumeric runs; everything else separates tokens.
std::vector<std::string> tokenize(std::string_view s);

// Dedup key for candidates: NFC, lowercase, collapsed whitespace, terminal
// punctuation stripped.
std::string dedup_key(std::string_view s);

bool is_space(char32_t cp);
bool is_alnum(char32_t cp);

// Decodes the code point starting at byte offset `pos` and advances `pos`.
char32_t next_code_point(std::string_view s, std::size_t& pos);

}  // namespace glimpse::text

#endif  // GLIMPSE_TEXT_H_
