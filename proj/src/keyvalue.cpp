#include "eohom/keyvalue.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "eohom/units.hpp"

namespace eohom {

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string_view trim(std::string_view s, int* leading = nullptr) {
  int lead = 0;
  while (!s.empty() && is_blank(s.front())) {
    s.remove_prefix(1);
    ++lead;
  }
  while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
  if (leading) *leading = lead;
  return s;
}

// Splits on ',' keeping the column of each piece.
std::vector<std::pair<std::string_view, int>> split_list(std::string_view s, int column) {
  std::vector<std::pair<std::string_view, int>> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    const std::string_view piece = s.substr(start, comma == std::string_view::npos ? s.npos : comma - start);
    int lead = 0;
    const auto t = trim(piece, &lead);
    out.emplace_back(t, column + static_cast<int>(start) + lead);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_real(std::string_view s, const std::string& source, int line, int column) {
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw ParseError(source, line, column, "expected a real number, got '" + std::string(s) + "'");
  return v;
}

int parse_integer(std::string_view s, const std::string& source, int line, int column) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(source, line, column, "expected an integer, got '" + std::string(s) + "'");
  return v;
}

}  // namespace

KeyValueFile KeyValueFile::parse(std::string_view text, std::string source) {
  KeyValueFile file;
  file.source_ = std::move(source);
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    ++line_no;
    pos = eol + 1;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    int lead = 0;
    const auto body = trim(line, &lead);
    if (body.empty()) {
      if (eol == text.size()) break;
      continue;
    }

    const auto eq = body.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(file.source_, line_no, lead + 1, "expected 'key = value'");
    const auto key = trim(body.substr(0, eq));
    if (key.empty())
      throw ParseError(file.source_, line_no, lead + 1, "missing key before '='");
    if (!(std::isalpha(static_cast<unsigned char>(key.front())) || key.front() == '_'))
      throw ParseError(file.source_, line_no, lead + 1, "invalid key '" + std::string(key) + "'");
    for (std::size_t i = 0; i < key.size(); ++i) {
      const char c = key[i];
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
        throw ParseError(file.source_, line_no, lead + 1 + static_cast<int>(i),
                         "invalid character in key '" + std::string(key) + "'");
    }
    int value_lead = 0;
    const auto value = trim(body.substr(eq + 1), &value_lead);
    const int value_column = lead + static_cast<int>(eq) + 2 + value_lead;
    if (value.empty())
      throw ParseError(file.source_, line_no, value_column, "missing value for '" + std::string(key) + "'");
    if (!seen.insert(std::string(key)).second)
      throw ParseError(file.source_, line_no, lead + 1, "duplicate key '" + std::string(key) + "'");

    file.entries_.push_back({std::string(key), std::string(value), line_no, value_column});
    if (eol == text.size()) break;
  }
  return file;
}

KeyValueFile KeyValueFile::read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

double KeyValueFile::as_double(const KeyValueEntry& e) const {
  return parse_real(e.value, source_, e.line, e.value_column);
}

int KeyValueFile::as_int(const KeyValueEntry& e) const {
  return parse_integer(e.value, source_, e.line, e.value_column);
}

bool KeyValueFile::as_bool(const KeyValueEntry& e) const {
  if (e.value == "true" || e.value == "on" || e.value == "1") return true;
  if (e.value == "false" || e.value == "off" || e.value == "0") return false;
  throw ParseError(source_, e.line, e.value_column, "expected on/off, got '" + e.value + "'");
}

std::vector<double> KeyValueFile::as_double_list(const KeyValueEntry& e) const {
  std::vector<double> out;
  for (const auto& [piece, col] : split_list(e.value, e.value_column))
    out.push_back(parse_real(piece, source_, e.line, col));
  return out;
}

std::vector<int> KeyValueFile::as_int_list(const KeyValueEntry& e) const {
  std::vector<int> out;
  if (e.value == "none") return out;
  for (const auto& [piece, col] : split_list(e.value, e.value_column))
    out.push_back(parse_integer(piece, source_, e.line, col));
  return out;
}

}  // namespace eohom
