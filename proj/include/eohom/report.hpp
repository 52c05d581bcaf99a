#pragma once

#include <optional>
#include <string>
#include <vector>

namespace eohom {

/// %.9g
std::string format_number(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Column-aligned plain-text rendering of a table.
std::string aligned_table(const CsvTable& table);

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool markers = false;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  std::vector<double> h_lines;
  std::vector<double> v_lines;
  std::optional<double> y_min, y_max;
};

/// Fixed 720x440 viewport, linear axes, one polyline per series.
std::string render_svg(const Plot& plot);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace eohom
