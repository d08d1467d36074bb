#pragma once

#include "mht/manifolds.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mht {

/// Values of M in (-1, 1) where Delta = 0 for fixed (Q, C). The quadratic in
/// M has roots 1 + Q -/+ 2 sqrt(Q(1+C)); only the smaller can lie in range.
std::vector<double> saddle_node_M(double Q, double C);

struct BtPoint {
  double M;
  double S;
};

/// (M*, S2(M*)), or nullopt when there is no fold in range or S2 <= 0.
std::optional<BtPoint> bt_point(double Q, double C);

struct LocusSample {
  double M;
  double S;
};

/// Trace-zero curve S1(M) of P2. Points where S1 is undefined or not
/// positive are omitted; at the fold the value is S2.
std::vector<LocusSample> hopf_locus(double Q, double C, const std::vector<double>& M_grid,
                                    const Tolerances& tol = {});

struct HomoclinicConfig {
  double gap_tol = 1e-6;          ///< bisection stops once |gap| is below this
  double first_offset = 1e-4;     ///< first probe is S1 (1 - first_offset)
  int max_scan = 40;              ///< geometric steps away from S1
  int max_bisections = 60;
  ManifoldConfig manifold{};
  unsigned threads = 0;           ///< 0 picks the hardware concurrency
};

/// One grid point of the homoclinic locus. Exactly one of `S` and `failure`
/// is set.
struct HomoclinicPoint {
  double M = 0.0;
  std::optional<double> S;
  double gap = 0.0;                 ///< gap at S (when found)
  std::optional<double> hopf;       ///< S1 at this M, if defined
  std::optional<std::string> failure;
};

/// Scan-then-bisect on homoclinic_gap at every grid value of M. The scan
/// starts just below S1 and moves down, or up when the gap is already
/// positive there (near the BT point the homoclinic value exceeds S1).
std::vector<HomoclinicPoint> homoclinic_locus(double Q, double C,
                                              const std::vector<double>& M_grid,
                                              const HomoclinicConfig& cfg = {},
                                              const Tolerances& tol = {});

/// Single grid point of homoclinic_locus.
HomoclinicPoint homoclinic_point(double M, double Q, double C, const HomoclinicConfig& cfg = {},
                                 const Tolerances& tol = {});

enum class RegionLabel { NoInterior, Repeller, Cycle, Bistable, SingleAttractor, NearLocus };

std::string_view to_string(RegionLabel label);

struct RegionConfig {
  double guard_band = 1e-4;  ///< NearLocus within this distance of H (in S) or SN (in M)
  IntegratorConfig integrator{};
};

RegionLabel region_classify(const Params& p, const RegionConfig& cfg = {},
                            const Tolerances& tol = {});

/// Raised when the fold's zero eigenvalue is missing or not simple.
class DegenerateFold : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct SotomayorResult {
  double M;                ///< the fold value M*
  double t1;               ///< W . dF/dQ
  double t2;               ///< W . D^2F(U, U)
  double kernel_residual;  ///< |J U| before normalisation checks
  Vector2 right;           ///< U
  Vector2 left;            ///< W
};

/// Transversality scalars at the interior double root of p, by central
/// finite differences (step `h`) on the full vector field. Throws
/// DegenerateFold when p has no double root with a simple zero eigenvalue.
SotomayorResult sotomayor_check(const Params& p, double h = 1e-5, const Tolerances& tol = {});

/// Same, at M = M*(Q, C).
SotomayorResult sotomayor_check(double Q, double C, double S, double h = 1e-5);

struct Window {
  double min;
  double max;
};

struct RegionSample {
  double M;
  double S;
  RegionLabel label;
};

struct DiagramConfig {
  int locus_points = 41;   ///< M samples for the H and HOM loci
  int region_grid = 0;     ///< region cells per axis; 0 skips the region grid
  HomoclinicConfig homoclinic{};
  RegionConfig region{};
  unsigned threads = 0;
};

/// Loci of one (Q, C) slice over an (M, S) window.
struct BifurcationDiagram {
  double Q = 0.0;
  double C = 0.0;
  Window M_window{};
  Window S_window{};
  std::vector<double> saddle_node;            ///< M* values inside the window
  std::optional<BtPoint> bt;
  std::vector<LocusSample> hopf;              ///< inside the window, M ascending
  std::vector<HomoclinicPoint> homoclinic;    ///< M ascending, failures kept
  std::vector<RegionSample> regions;          ///< row-major, S outer, M inner
};

BifurcationDiagram bifurcation_diagram(double Q, double C, Window M_window, Window S_window,
                                       const DiagramConfig& cfg = {},
                                       const Tolerances& tol = {});

/// n evenly spaced values from lo to hi inclusive (n = 1 gives lo).
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace mht
