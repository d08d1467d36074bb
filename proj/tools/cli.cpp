#include "cli.hpp"

#include "commands.hpp"
#include "output.hpp"

#include <CLI11.hpp>

#include <ostream>

namespace mht::cli {

namespace {

void add_shared_options(CLI::App& app, RunConfig& cfg) {
  const auto group = "Parameters (nondimensional)";
  app.add_option("-M,--allee", cfg.M, "Allee threshold M in (-1, 1)")->group(group);
  app.add_option("-S,--predator-growth", cfg.S, "predator intrinsic growth S > 0")->group(group);
  app.add_option("-Q,--predation", cfg.Q, "predation strength Q > 0")->group(group);
  app.add_option("-C,--alt-food", cfg.C, "alternative food C > 0")->group(group);

  const auto dim = "Parameters (dimensional)";
  app.add_option("-r,--prey-rate", cfg.r, "prey intrinsic growth rate r")->group(dim);
  app.add_option("-s,--predator-rate", cfg.s, "predator intrinsic growth rate s")->group(dim);
  app.add_option("-q,--capture-rate", cfg.q, "maximum predation rate q")->group(dim);
  app.add_option("-n,--prey-quality", cfg.n, "prey quality n")->group(dim);
  app.add_option("-K,--capacity", cfg.K, "carrying capacity K")->group(dim);
  app.add_option("-m,--allee-dim", cfg.m, "Allee threshold m, |m| < K (default 0)")->group(dim);
  app.add_option("-c,--alt-food-dim", cfg.c, "alternative food c")->group(dim);

  app.set_config("--config", "", "read options from a key=value file (flags take precedence)");
  app.add_option("-o,--out-dir", cfg.out_dir, "output directory")
      ->envname("MHT_OUTPUT_DIR")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for randomised probe sets")->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads (0 = all cores)")
      ->capture_default_str();
  app.add_option("--format", cfg.format, "report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  const auto integ = "Integrator";
  app.add_option("--rel-tol", cfg.integrator.rel_tol, "relative tolerance")
      ->group(integ)
      ->capture_default_str();
  app.add_option("--abs-tol", cfg.integrator.abs_tol, "absolute tolerance")
      ->group(integ)
      ->capture_default_str();
  app.add_option("--horizon", cfg.integrator.horizon, "maximum integration time tau_max")
      ->group(integ)
      ->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Phase-plane, bifurcation and basin analysis of the May-Holling-Tanner "
               "predator-prey model with Allee effect and alternative food",
               "mht"};
  app.require_subcommand(1);
  app.fallthrough();
  add_shared_options(app, cfg);

  auto* classify = app.add_subcommand("classify", "equilibria, stability, thresholds and region");

  auto* portrait = app.add_subcommand("portrait", "phase portrait (SVG + CSV)");
  std::string u_window = "0:1";
  std::string v_window = "0:1";
  portrait->add_option("--u-window", u_window, "prey axis range a:b")->capture_default_str();
  portrait->add_option("--v-window", v_window, "predator axis range a:b")->capture_default_str();
  portrait->add_option("--orbits", cfg.orbits, "number of sample trajectories")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  portrait->add_option("--tau", cfg.orbit_horizon, "integration time per sample trajectory")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* bifurcation = app.add_subcommand("bifurcation", "SN, H, HOM loci and region map");
  std::string m_window = "-0.06:0.03";
  std::string s_window = "0:0.2";
  bifurcation->add_option("--m-window", m_window, "M range a:b")->capture_default_str();
  bifurcation->add_option("--s-window", s_window, "S range a:b")->capture_default_str();
  bifurcation->add_option("--locus-points", cfg.locus_points, "M samples for H and HOM")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bifurcation->add_option("--grid", cfg.region_grid, "region cells per axis (0 disables)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  auto* basin = app.add_subcommand("basin", "basin-of-attraction raster, SVG and fractions");
  basin->add_option("--resolution", cfg.resolution, "cells per axis")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  basin->add_option("--max-undecided", cfg.max_undecided,
                    "largest tolerated Undecided fraction before exit code 4")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "region label and interior basin fraction on a grid");
  sweep->add_option("--axis", cfg.axes, "NAME=min:max:count with NAME in M,S,Q,C (one or two)")
      ->required()
      ->expected(1, 2);
  sweep->add_option("--resolution", cfg.sweep_resolution, "basin cells per axis per grid point")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParameterError;
  }

  try {
    cfg.integrator.validate();
    if (portrait->parsed()) {
      const Window u = parse_window(u_window);
      const Window v = parse_window(v_window);
      cfg.window = Box{u.min, u.max, v.min, v.max};
    }
    if (bifurcation->parsed()) {
      cfg.M_window = parse_window(m_window);
      cfg.S_window = parse_window(s_window);
    }
    if (classify->parsed()) {
      cfg.command = "classify";
      return cmd_classify(cfg, out, err);
    }
    if (portrait->parsed()) {
      cfg.command = "portrait";
      return cmd_portrait(cfg, out, err);
    }
    if (bifurcation->parsed()) {
      cfg.command = "bifurcation";
      return cmd_bifurcation(cfg, out, err);
    }
    if (basin->parsed()) {
      cfg.command = "basin";
      return cmd_basin(cfg, out, err);
    }
    cfg.command = "sweep";
    return cmd_sweep(cfg, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kParameterError;
  } catch (const ParameterError& e) {
    err << "error: invalid parameters: " << e.what() << "\n";
    return kParameterError;
  } catch (const WriteError& e) {
    err << "error: " << e.what() << "\n";
    return kRenderFailure;
  }
}

}  // namespace mht::cli
