#pragma once

#include "mht/bifurcation.hpp"
#include "mht/flow.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mht::cli {

enum ExitCode : int {
  kOk = 0,
  kParameterError = 2,
  kRenderFailure = 3,
  kQualityFailure = 4,
};

/// Raised for inconsistent or missing command-line input (exit code 2).
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct SweepAxis {
  char name = 'M';  ///< one of M, S, Q, C
  double min = 0.0;
  double max = 0.0;
  int count = 0;
};

/// "NAME=min:max:count", e.g. "M=-0.01:0.04:2".
SweepAxis parse_axis(const std::string& spec);
/// "a:b" with a < b.
Window parse_window(const std::string& spec);

struct RunConfig {
  std::string command;

  // Nondimensional input.
  std::optional<double> M, S, Q, C;
  // Dimensional input.
  std::optional<double> r, s, q, n, K, m, c;

  IntegratorConfig integrator{};
  Tolerances tolerances{};
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string format = "text";

  // portrait
  Box window{};
  int orbits = 8;
  double orbit_horizon = 2000.0;
  // bifurcation
  Window M_window{-0.06, 0.03};
  Window S_window{0.0, 0.2};
  int locus_points = 41;
  int region_grid = 40;
  // basin
  int resolution = 200;
  double max_undecided = 0.2;
  // sweep
  std::vector<std::string> axes;
  int sweep_resolution = 40;
};

/// Resolves the parameter vector from either input mode. Throws UsageError or
/// ParameterError. Sets `dimensional` when the dimensional flags were used.
Params resolve_params(const RunConfig& cfg, bool* dimensional = nullptr);

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_portrait(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bifurcation(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_basin(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace mht::cli
