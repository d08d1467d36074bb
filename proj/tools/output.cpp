#include "output.hpp"

#include "mht/version.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

namespace mht::cli {

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  std::string s(buf);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string exact(double x) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, result.ptr);
}

std::string hex64(std::uint64_t x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::vector<std::string> Provenance::lines() const {
  std::vector<std::string> out;
  out.push_back("tool: " + std::string(kToolVersion));
  out.push_back("command: " + command);
  if (has_params) {
    out.push_back("params: M=" + exact(params.allee_threshold) + " S=" +
                  exact(params.predator_growth) + " Q=" + exact(params.predation) +
                  " C=" + exact(params.alt_food));
  }
  for (const auto& [key, value] : extra) out.push_back(key + ": " + value);
  out.push_back("config_hash: " + hex64(config_hash));
  out.push_back("seed: " + std::to_string(seed));
  return out;
}

std::string Provenance::block(std::string_view marker) const {
  std::string s;
  for (const auto& line : lines()) {
    s += marker;
    s += ' ';
    s += line;
    s += '\n';
  }
  return s;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw WriteError("cannot open " + path.string() + " for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw WriteError("failed writing " + path.string());
}

Csv::Csv(const Provenance& prov, std::vector<std::string> columns)
    : text_(prov.block("#")), columns_(columns.size()) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) text_ += ',';
    text_ += columns[i];
  }
  text_ += '\n';
}

void Csv::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw std::logic_error("CSV row has the wrong number of cells");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) text_ += ',';
    text_ += cells[i];
  }
  text_ += '\n';
  ++rows_;
}

}  // namespace mht::cli
