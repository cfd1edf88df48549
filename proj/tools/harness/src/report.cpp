#include "fracwave_harness/report.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace fracwave::harness {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string with_checksum(std::string text) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "# checksum fnv1a64=%016" PRIx64 "\n", fnv1a64(text));
  return text + buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw std::invalid_argument("CsvTable: header must not be empty");
}

void CsvTable::add_row(std::vector<Cell> row) {
  if (row.size() != header_.size()) throw std::invalid_argument("CsvTable: row width does not match header");
  rows_.push_back(std::move(row));
}

std::string CsvTable::render() const {
  std::string out;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) out += ',';
    out += header_[i];
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (const auto* d = std::get_if<double>(&row[i])) {
        out += format_double(*d);
      } else if (const auto* n = std::get_if<long long>(&row[i])) {
        out += std::to_string(*n);
      } else {
        out += std::get<std::string>(row[i]);
      }
    }
    out += '\n';
  }
  return with_checksum(out);
}

void ReportBundle::add_csv(const std::string& name, const CsvTable& table) { files_[name] = table.render(); }

void ReportBundle::set(const std::string& key, double value) { set(key, format_double(value)); }
void ReportBundle::set(const std::string& key, long long value) { set(key, std::to_string(value)); }
void ReportBundle::set(const std::string& key, bool value) { set(key, std::string(value ? "true" : "false")); }

void ReportBundle::set(const std::string& key, const std::string& value) {
  for (auto& kv : summary_) {
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  }
  summary_.emplace_back(key, value);
}

void ReportBundle::merge(const ReportBundle& other, const std::string& prefix) {
  for (const auto& [name, text] : other.files_) files_[prefix + name] = text;
  for (const auto& [k, v] : other.summary_) set(k, v);
}

void ReportBundle::keep_files(const std::vector<std::string>& stems) {
  if (stems.empty()) return;
  for (auto it = files_.begin(); it != files_.end();) {
    const auto stem = it->first.substr(0, it->first.rfind('.'));
    if (std::find(stems.begin(), stems.end(), stem) == stems.end()) {
      it = files_.erase(it);
    } else {
      ++it;
    }
  }
}

std::string ReportBundle::summary_text() const {
  std::string out;
  for (const auto& [k, v] : summary_) out += k + "=" + v + "\n";
  return with_checksum(out);
}

std::string ReportBundle::serialize() const {
  std::string out;
  for (const auto& [name, text] : files_) out += "== " + name + "\n" + text;
  out += "== summary.txt\n" + summary_text();
  return out;
}

void ReportBundle::write(const std::string& dir) const {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto put = [&](const std::string& name, const std::string& text) {
    std::ofstream out(fs::path(dir) / name, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + (fs::path(dir) / name).string());
    out << text;
  };
  for (const auto& [name, text] : files_) put(name, text);
  put("summary.txt", summary_text());
}

}  // namespace fracwave::harness
