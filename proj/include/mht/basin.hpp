#pragma once

#include "mht/manifolds.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace mht {

/// Label byte of cells whose omega-limit was not decided.
inline constexpr std::uint8_t kUndecided = 0;

struct BasinAttractor {
  std::uint8_t id = kUndecided;
  AttractorLabel label;
  State location = State::Zero();  ///< equilibrium, or the anchor a cycle surrounds

  bool operator==(const BasinAttractor&) const = default;
};

struct BasinConfig {
  Box bounds{};
  IntegratorConfig integrator{};
  unsigned threads = 0;  ///< 0 picks the hardware concurrency
};

/// Row-major grid of labels over `bounds`: cell (i, j) is column i along u and
/// row j along v, stored at j * resolution + i, and sampled at its center.
struct BasinRaster {
  Params params{};
  Box bounds{};
  int resolution = 0;
  std::uint64_t config_hash = 0;
  std::vector<BasinAttractor> attractors;  ///< ids 1..n, in id order
  std::vector<std::uint8_t> labels;

  double cell_width() const { return bounds.width() / resolution; }
  double cell_height() const { return bounds.height() / resolution; }
  State cell_center(int i, int j) const;
  std::uint8_t at(int i, int j) const {
    return labels[static_cast<std::size_t>(j) * static_cast<std::size_t>(resolution) +
                  static_cast<std::size_t>(i)];
  }
  /// Table entry for id, or nullptr (Undecided or unknown).
  const BasinAttractor* attractor(std::uint8_t id) const;
  /// id of the entry with this label, or kUndecided.
  std::uint8_t id_of(const AttractorLabel& label) const;
  double undecided_fraction() const;

  bool operator==(const BasinRaster&) const = default;
};

/// Stable digest of everything that determines a raster.
std::uint64_t config_hash(const Params& p, const Box& bounds, int resolution,
                          const IntegratorConfig& cfg, const Tolerances& tol = {});

/// Classifies every cell center with classify_omega_limit. Deterministic:
/// the thread count does not affect the result.
BasinRaster compute_basins(const Params& p, int resolution, const BasinConfig& cfg = {},
                           const Tolerances& tol = {});

/// Share of cells per label id (Undecided included as id 0); only ids that
/// occur are present and the values sum to one.
std::map<std::uint8_t, double> basin_fractions(const BasinRaster& r);

/// Share of cells whose omega-limit is the given label.
double basin_fraction(const BasinRaster& r, const AttractorLabel& label);

/// Largest distance from the center of a boundary cell (one whose label
/// differs from a 4-neighbour) to the separatrix polyline. Throws
/// std::invalid_argument when the raster holds fewer than two labels.
double boundary_vs_separatrix(const BasinRaster& r, const Separatrix& sep);

class RasterFormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint32_t kRasterVersion = 1;

/// Binary layout documented in docs/raster_format.md.
void write_raster(std::ostream& out, const BasinRaster& r);
BasinRaster read_raster(std::istream& in);
void write_raster(const std::filesystem::path& path, const BasinRaster& r);
BasinRaster read_raster(const std::filesystem::path& path);

}  // namespace mht
