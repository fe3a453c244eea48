#ifndef GLIMPSE_ERROR_H_
#define GLIMPSE_ERROR_H_

#include <stdexcept>
#include <string>

namespace glimpse {

// Bad input data: malformed corpus records, matrix files, id mismatches.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parse failure with a location. line/column are 1-based; 0 means unknown.
class ParseError : public DataError {
 public:
  ParseError(const std::string& source, std::size_t line, std::size_t column,
             const std::string& what);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Invalid configuration or command-line usage.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace glimpse

#endif  // GLIMPSE_ERROR_H_
