#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace grushin {

/// Bad or missing configuration (exit code 2 at the CLI).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Filesystem failures (exit code 3 at the CLI).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat key=value configuration. Lines starting with # and blank lines are
/// ignored; later assignments (including flag overrides) win.
class Config {
 public:
  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::vector<double> get_double_list(const std::string& key,
                                      const std::vector<double>& fallback) const;

  /// FNV-1a over the sorted key=value pairs; stable across runs and
  /// insertion orders.
  std::uint64_t hash() const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_full(double v);
/// Display precision, 6 significant digits.
std::string format_display(double v);

/// CSV table with a header row and a trailing # key=value metadata block.
/// Writes LF line endings and flushes in one pass, so identical content is
/// byte-identical on disk.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void add_row(std::vector<std::string> cells);
  void add_metadata(const std::string& key, const std::string& value);

  std::string to_string() const;
  void write(const std::string& path) const;

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  const std::vector<std::pair<std::string, std::string>>& metadata() const { return metadata_; }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

struct SvgSeries {
  std::string label;
  std::vector<double> x, y;
};

/// Self-contained line chart: axes, tick labels at the extremes, one
/// polyline per series. No external tooling involved.
void write_svg_lines(const std::string& path, const std::string& title,
                     const std::vector<SvgSeries>& series);

}  // namespace grushin
