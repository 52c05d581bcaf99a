#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace eohom {

/// One `key = value` assignment of a configuration file.
struct KeyValueEntry {
  std::string key;
  std::string value;
  int line = 0;
  int value_column = 0;
};

/// Line-oriented `key = value` text with `#` comments.
///
///   file  := { line }
///   line  := [ key '=' value ] [ '#' comment ] newline
///   key   := [A-Za-z_][A-Za-z0-9_]*
///   value := non-empty text up to '#' or end of line, surrounding blanks trimmed
///
/// A key may appear at most once. Errors are ParseError with line/column.
class KeyValueFile {
 public:
  static KeyValueFile parse(std::string_view text, std::string source = "<input>");
  static KeyValueFile read(const std::string& path);

  const std::vector<KeyValueEntry>& entries() const { return entries_; }
  const std::string& source() const { return source_; }

  double as_double(const KeyValueEntry& e) const;
  int as_int(const KeyValueEntry& e) const;
  bool as_bool(const KeyValueEntry& e) const;
  std::vector<double> as_double_list(const KeyValueEntry& e) const;
  std::vector<int> as_int_list(const KeyValueEntry& e) const;

 private:
  std::string source_;
  std::vector<KeyValueEntry> entries_;
};

}  // namespace eohom
