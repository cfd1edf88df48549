#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace fracwave::harness {

/// 17 significant digits, "%.17g".
std::string format_double(double v);

std::uint64_t fnv1a64(std::string_view bytes);

/// Appends "# checksum fnv1a64=<16 hex digits>\n" computed over text.
std::string with_checksum(std::string text);

/// CSV table; the header carries units, e.g. "t [time]".
class CsvTable {
 public:
  using Cell = std::variant<double, long long, std::string>;

  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<Cell> row);
  std::size_t rows() const { return rows_.size(); }
  /// Header, rows and the checksum line, LF line endings.
  std::string render() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

/// Per-diagnostic CSV files plus summary.txt (key=value).
class ReportBundle {
 public:
  void add_csv(const std::string& name, const CsvTable& table);
  void set(const std::string& key, double value);
  void set(const std::string& key, long long value);
  void set(const std::string& key, bool value);
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, const char* value) { set(key, std::string(value)); }
  void set(const std::string& key, int value) { set(key, static_cast<long long>(value)); }
  void set(const std::string& key, std::size_t value) { set(key, static_cast<long long>(value)); }

  /// Copies files and summary keys of another bundle, prefixing file names.
  void merge(const ReportBundle& other, const std::string& prefix = "");

  /// Drops CSV files whose stem is not listed; an empty list keeps all.
  void keep_files(const std::vector<std::string>& stems);

  const std::map<std::string, std::string>& files() const { return files_; }
  const std::vector<std::pair<std::string, std::string>>& summary() const { return summary_; }
  std::string summary_text() const;

  /// All files (and summary.txt) concatenated in name order, for comparisons.
  std::string serialize() const;

  /// Writes every file and summary.txt under dir (created if missing).
  void write(const std::string& dir) const;

 private:
  std::map<std::string, std::string> files_;
  std::vector<std::pair<std::string, std::string>> summary_;
};

}  // namespace fracwave::harness
