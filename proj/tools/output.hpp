#pragma once

#include "mht/model.hpp"

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mht::cli {

/// Fixed-point rendering with `digits` decimals; "-0" is normalised to "0".
std::string fixed(double x, int digits = 6);
/// Shortest representation that reads back to the same double.
std::string exact(double x);
std::string hex64(std::uint64_t x);

/// Provenance lines shared by every artifact, without comment markers.
struct Provenance {
  std::string command;
  Params params{};
  bool has_params = true;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> extra;  ///< key, value

  std::vector<std::string> lines() const;
  /// Lines prefixed with `marker` and a space, newline-terminated.
  std::string block(std::string_view marker) const;
};

/// Thrown when an artifact cannot be written.
class WriteError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Writes the whole file in one call; creates parent directories.
void write_file(const std::filesystem::path& path, const std::string& contents);

/// Minimal CSV assembly: header comment block, column row, data rows.
class Csv {
public:
  Csv(const Provenance& prov, std::vector<std::string> columns);
  void row(const std::vector<std::string>& cells);
  std::size_t rows() const { return rows_; }
  const std::string& str() const { return text_; }

private:
  std::string text_;
  std::size_t columns_ = 0;
  std::size_t rows_ = 0;
};

}  // namespace mht::cli
