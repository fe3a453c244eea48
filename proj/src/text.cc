#include "glimpse/text.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <stdexcept>

namespace glimpse::text {
namespace {

void append_utf8(std::string& out, char32_t cp) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool error = false;
  U8_APPEND(buf, len, U8_MAX_LENGTH, static_cast<UChar32>(cp), error);
  if (error) return;
  out.append(buf, static_cast<std::size_t>(len));
}

bool is_terminal_punct(char32_t cp) {
  switch (cp) {
    case U'.': case U'!': case U'?': case U',': case U';': case U':':
    case U'…':
      return true;
    default:
      return false;
  }
}

}  // namespace

char32_t next_code_point(std::string_view s, std::size_t& pos) {
  UChar32 cp = 0;
  int32_t i = static_cast<int32_t>(pos);
  U8_NEXT(reinterpret_cast<const uint8_t*>(s.data()), i,
          static_cast<int32_t>(s.size()), cp);
  pos = static_cast<std::size_t>(i);
  return cp < 0 ? U'�' : static_cast<char32_t>(cp);
}

bool is_space(char32_t cp) { return u_isUWhiteSpace(static_cast<UChar32>(cp)); }

bool is_alnum(char32_t cp) { return u_isalnum(static_cast<UChar32>(cp)); }

std::string nfc(std::string_view s) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFC normalizer unavailable");
  icu::UnicodeString src = icu::UnicodeString::fromUTF8(
      icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
  icu::UnicodeString dst = norm->normalize(src, status);
  if (U_FAILURE(status)) throw std::runtime_error("NFC normalization failed");
  std::string out;
  dst.toUTF8String(out);
  return out;
}

std::string lowercase(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t pos = 0; pos < s.size();) {
    char32_t cp = next_code_point(s, pos);
    append_utf8(out, static_cast<char32_t>(u_tolower(static_cast<UChar32>(cp))));
  }
  return out;
}

std::string_view trim(std::string_view s) {
  std::size_t begin = 0;
  while (begin < s.size()) {
    std::size_t next = begin;
    if (!is_space(next_code_point(s, next))) break;
    begin = next;
  }
  std::size_t end = begin;
  for (std::size_t pos = begin; pos < s.size();) {
    char32_t cp = next_code_point(s, pos);
    if (!is_space(cp)) end = pos;
  }
  return s.substr(begin, end - begin);
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (std::size_t pos = 0; pos < s.size();) {
    std::size_t start = pos;
    char32_t cp = next_code_point(s, pos);
    if (is_space(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.append(s.substr(start, pos - start));
  }
  return out;
}

std::size_t length_chars(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::vector<std::string> tokenize(std::string_view s) {
  std::vector<std::string> tokens;
  std::string current;
  for (std::size_t pos = 0; pos < s.size();) {
    char32_t cp = next_code_point(s, pos);
    if (is_alnum(cp)) {
      append_utf8(current,
                  static_cast<char32_t>(u_tolower(static_cast<UChar32>(cp))));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::string dedup_key(std::string_view s) {
  std::string key = collapse_whitespace(lowercase(nfc(s)));
  // Drop the trailing run of terminal punctuation (and any space inside it).
  std::size_t keep = 0;
  for (std::size_t pos = 0; pos < key.size();) {
    char32_t cp = next_code_point(key, pos);
    if (!is_terminal_punct(cp) && !is_space(cp)) keep = pos;
  }
  key.resize(keep);
  return key;
}

}  // namespace glimpse::text
