#include "commands.hpp"

#include "output.hpp"
#include "svg.hpp"

#include "mht/basin.hpp"
#include "mht/hash.hpp"
#include "mht/parallel.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <map>
#include <ostream>
#include <random>

namespace mht::cli {

namespace {

double parse_number(std::string_view text, std::string_view what) {
  double x = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, x);
  if (ec != std::errc() || ptr != end || !std::isfinite(x)) {
    throw UsageError("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  }
  return x;
}

int parse_count(std::string_view text) {
  int n = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, n);
  if (ec != std::errc() || ptr != end || n < 0) {
    throw UsageError("axis count must be a non-negative integer, got '" + std::string(text) + "'");
  }
  return n;
}

}  // namespace

Window parse_window(const std::string& spec) {
  const auto colon = spec.find(':', 1);
  if (colon == std::string::npos) throw UsageError("window '" + spec + "' is not of the form a:b");
  const Window w{parse_number(std::string_view(spec).substr(0, colon), "window start"),
                 parse_number(std::string_view(spec).substr(colon + 1), "window end")};
  if (!(w.min < w.max)) throw UsageError("window '" + spec + "' must have a < b");
  return w;
}

SweepAxis parse_axis(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq != 1 || std::string_view("MSQC").find(spec[0]) == std::string_view::npos) {
    throw UsageError("axis '" + spec + "' must start with M=, S=, Q= or C=");
  }
  const std::string_view rest = std::string_view(spec).substr(2);
  const auto first = rest.find(':', 1);
  const auto second = first == std::string_view::npos ? first : rest.find(':', first + 2);
  if (second == std::string_view::npos) {
    throw UsageError("axis '" + spec + "' is not of the form NAME=min:max:count");
  }
  SweepAxis a;
  a.name = spec[0];
  a.min = parse_number(rest.substr(0, first), "axis minimum");
  a.max = parse_number(rest.substr(first + 1, second - first - 1), "axis maximum");
  a.count = parse_count(rest.substr(second + 1));
  if (a.max < a.min) throw UsageError("axis '" + spec + "' has max < min");
  return a;
}

namespace {

bool any_dimensional(const RunConfig& cfg) {
  return cfg.r || cfg.s || cfg.q || cfg.n || cfg.K || cfg.m || cfg.c;
}

void set_component(Params& p, char name, double value) {
  switch (name) {
    case 'M': p.allee_threshold = value; break;
    case 'S': p.predator_growth = value; break;
    case 'Q': p.predation = value; break;
    case 'C': p.alt_food = value; break;
    default: throw UsageError(std::string("unknown parameter ") + name);
  }
}

/// Parameters with only the names in `required` demanded from the user;
/// others default to M = 0, S = 1 and are validated by the caller.
Params resolve(const RunConfig& cfg, std::string_view required, bool* dimensional) {
  if (dimensional) *dimensional = false;
  if (any_dimensional(cfg)) {
    if (cfg.M || cfg.S || cfg.Q || cfg.C) {
      throw UsageError("use either -M/-S/-Q/-C or the dimensional flags, not both");
    }
    std::string missing;
    if (!cfg.r) missing += " -r";
    if (!cfg.s) missing += " -s";
    if (!cfg.q) missing += " -q";
    if (!cfg.n) missing += " -n";
    if (!cfg.K) missing += " -K";
    if (!cfg.c) missing += " -c";
    if (!missing.empty()) throw UsageError("dimensional input needs" + missing);
    if (dimensional) *dimensional = true;
    return nondimensionalize(DimensionalParams{*cfg.r, *cfg.s, *cfg.q, *cfg.n, *cfg.K,
                                               cfg.m.value_or(0.0), *cfg.c});
  }
  std::string missing;
  const std::pair<char, const std::optional<double>*> fields[] = {
      {'M', &cfg.M}, {'S', &cfg.S}, {'Q', &cfg.Q}, {'C', &cfg.C}};
  Params p{0.0, 1.0, 1.0, 1.0};
  for (const auto& [name, value] : fields) {
    if (*value) {
      set_component(p, name, **value);
    } else if (required.find(name) != std::string_view::npos) {
      missing += std::string(" -") + name;
    }
  }
  if (!missing.empty()) throw UsageError("missing parameter(s):" + missing);
  return p;
}

std::string params_text(const Params& p) {
  return "M=" + exact(p.allee_threshold) + " S=" + exact(p.predator_growth) +
         " Q=" + exact(p.predation) + " C=" + exact(p.alt_food);
}

Fnv1a base_hash(const RunConfig& cfg, const Params& p) {
  Fnv1a h;
  h.add(std::string_view(cfg.command));
  h.add(p.allee_threshold).add(p.predator_growth).add(p.predation).add(p.alt_food);
  const auto& ic = cfg.integrator;
  h.add(ic.rel_tol).add(ic.abs_tol).add(ic.max_step).add(ic.horizon);
  h.add(ic.rho_eq).add(ic.rho_cyc).add(ic.escape_bound);
  h.add(cfg.tolerances.eps_case).add(cfg.tolerances.eps_class);
  h.add(cfg.seed);
  return h;
}

Provenance provenance(const RunConfig& cfg, const Params& p, std::uint64_t hash, bool dimensional) {
  Provenance prov;
  prov.command = cfg.command;
  prov.params = p;
  prov.config_hash = hash;
  prov.seed = cfg.seed;
  if (dimensional) {
    prov.extra.emplace_back("input", "dimensional r=" + exact(*cfg.r) + " s=" + exact(*cfg.s) +
                                         " q=" + exact(*cfg.q) + " n=" + exact(*cfg.n) +
                                         " K=" + exact(*cfg.K) + " m=" + exact(cfg.m.value_or(0)) +
                                         " c=" + exact(*cfg.c));
  }
  return prov;
}

std::string display_name(EquilibriumKind kind, CaseLabel label) {
  switch (kind) {
    case EquilibriumKind::Origin: return "(0,0)";
    case EquilibriumKind::PreyK: return "(1,0)";
    case EquilibriumKind::PreyM: return "(M,0)";
    case EquilibriumKind::PredatorOnly: return "(0,C)";
    case EquilibriumKind::InteriorLow: return "P1";
    case EquilibriumKind::InteriorHigh:
      if (label == CaseLabel::W2c) return "P3";
      if (label == CaseLabel::W2d) return "P4";
      return "P2";
    case EquilibriumKind::InteriorDouble: return "(E,E+C)";
  }
  return "?";
}

std::string type_text(const Classification& c) {
  std::string s(to_string(c.type));
  if (c.type == StabilityType::Attractor || c.type == StabilityType::Repeller) {
    s += c.focus ? " focus" : " node";
  }
  return s;
}

std::filesystem::path artifact(const RunConfig& cfg, std::string_view name) {
  return cfg.out_dir / std::string(name);
}

void write_and_report(const std::filesystem::path& path, const std::string& contents,
                      std::ostream& out) {
  write_file(path, contents);
  out << "wrote " << path.string() << "\n";
}

RegionConfig region_config(const RunConfig& cfg) {
  RegionConfig rc;
  rc.integrator = cfg.integrator;
  return rc;
}

ManifoldConfig manifold_config(const RunConfig& cfg) {
  ManifoldConfig mc;
  mc.integrator = cfg.integrator;
  return mc;
}

struct Glyph {
  std::string fill;
  bool square = false;
};

Glyph glyph_for(StabilityType type) {
  switch (type) {
    case StabilityType::Attractor: return {"#000000", false};
    case StabilityType::Repeller: return {"#ffffff", false};
    case StabilityType::Saddle: return {"#ffffff", true};
    case StabilityType::SaddleNodeAttractor:
    case StabilityType::SaddleNodeRepeller: return {"#808080", true};
    case StabilityType::CuspBT:
    case StabilityType::NonHyperbolic: return {"#e69138", false};
  }
  return {"#e69138", false};
}

/// Splits the graph of v = f(u) into pieces that stay inside the window.
std::vector<std::vector<State>> curve_in_window(const Box& w, double (*f)(const Params&, double),
                                                const Params& p, int samples = 400) {
  std::vector<std::vector<State>> pieces(1);
  for (int i = 0; i <= samples; ++i) {
    const double u = w.u_min + w.width() * i / samples;
    const State s(u, f(p, u));
    if (w.contains(s)) {
      pieces.back().push_back(s);
    } else if (!pieces.back().empty()) {
      pieces.emplace_back();
    }
  }
  std::erase_if(pieces, [](const auto& piece) { return piece.size() < 2; });
  return pieces;
}

double prey_nullcline(const Params& p, double u) {
  return (1.0 - u) * (u - p.allee_threshold) / p.predation;
}

double predator_nullcline(const Params& p, double u) { return u + p.alt_food; }

/// Runs of points inside the window, for drawing.
std::vector<std::vector<State>> clip_runs(const std::vector<State>& points, const Box& w) {
  std::vector<std::vector<State>> runs(1);
  for (const auto& s : points) {
    if (w.contains(s)) {
      runs.back().push_back(s);
    } else if (!runs.back().empty()) {
      runs.emplace_back();
    }
  }
  std::erase_if(runs, [](const auto& run) { return run.size() < 2; });
  return runs;
}

}  // namespace

Params resolve_params(const RunConfig& cfg, bool* dimensional) {
  return resolve(cfg, "MSQC", dimensional);
}

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  bool dimensional = false;
  const Params p = resolve_params(cfg, &dimensional);
  validate(p);
  const Tolerances& tol = cfg.tolerances;
  const auto prov = provenance(cfg, p, base_hash(cfg, p).value(), dimensional);

  const CaseLabel label = case_label(p, tol);
  const RegionLabel region = region_classify(p, region_config(cfg), tol);
  const bool extinction = is_global_extinction(p, tol);
  const std::pair<std::string, std::optional<double>> thresholds[] = {
      {"S1", hopf_threshold(p, tol)},
      {"S2", fold_threshold(p, tol)},
      {"S3", collided_threshold(p, tol)},
      {"S4", tangent_threshold(p, tol)},
  };

  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["provenance"] = prov.lines();
    j["params"] = {{"M", p.allee_threshold},
                   {"S", p.predator_growth},
                   {"Q", p.predation},
                   {"C", p.alt_food}};
    j["case"] = std::string(to_string(label));
    j["region"] = std::string(to_string(region));
    j["global_extinction"] = extinction;
    auto& eqs = j["equilibria"] = nlohmann::ordered_json::array();
    for (const auto& e : all_equilibria(p, tol)) {
      nlohmann::ordered_json item;
      item["name"] = display_name(e.kind, label);
      item["kind"] = std::string(to_string(e.kind));
      item["u"] = e.location.x();
      item["v"] = e.location.y();
      item["in_domain"] = e.in_domain;
      item["multiplicity"] = e.multiplicity;
      if (e.in_domain) {
        const auto c = classify(p, e, tol);
        item["type"] = std::string(to_string(c.type));
        item["focus"] = c.focus;
        item["det"] = c.det;
        item["trace"] = c.trace;
      }
      eqs.push_back(item);
    }
    auto& th = j["thresholds"] = nlohmann::ordered_json::object();
    for (const auto& [name, value] : thresholds) {
      th[name] = value ? nlohmann::ordered_json(*value) : nlohmann::ordered_json(nullptr);
    }
    out << j.dump(2) << "\n";
    return kOk;
  }

  out << prov.block("#");
  if (dimensional) out << "derived: " << params_text(p) << "\n";
  out << "case: " << to_string(label) << "\n";
  out << "region: " << to_string(region) << "\n";
  for (const auto& e : all_equilibria(p, tol)) {
    out << "equilibrium: " << display_name(e.kind, label) << " u=" << fixed(e.location.x(), 8)
        << " v=" << fixed(e.location.y(), 8);
    if (!e.in_domain) {
      out << " outside-domain\n";
      continue;
    }
    const auto c = classify(p, e, tol);
    out << " type=" << type_text(c) << " det=" << fixed(c.det, 10)
        << " trace=" << fixed(c.trace, 10);
    if (e.multiplicity > 1) out << " multiplicity=" << e.multiplicity;
    out << "\n";
  }
  for (const auto& [name, value] : thresholds) {
    out << "threshold: " << name << "=" << (value ? fixed(*value, 10) : "undefined") << "\n";
  }
  if (extinction) out << "note: (0,C) globally asymptotically stable\n";
  return kOk;
}

int cmd_portrait(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  bool dimensional = false;
  const Params p = resolve_params(cfg, &dimensional);
  const Tolerances& tol = cfg.tolerances;
  const FlowModel model(p, cfg.integrator, tol);
  IntegratorConfig orbit_cfg = cfg.integrator;
  orbit_cfg.horizon = cfg.orbit_horizon;
  const FlowModel orbit_model(p, orbit_cfg, tol);
  const Box& w = cfg.window;

  Fnv1a h = base_hash(cfg, p);
  h.add(w.u_min).add(w.u_max).add(w.v_min).add(w.v_max);
  h.add(static_cast<std::uint64_t>(cfg.orbits)).add(cfg.orbit_horizon);
  const auto prov = provenance(cfg, p, h.value(), dimensional);

  struct Curve {
    std::string kind;
    std::vector<State> points;
  };
  std::vector<Curve> curves;
  for (auto& piece : curve_in_window(w, prey_nullcline, p)) {
    curves.push_back({"prey_nullcline", std::move(piece)});
  }
  if (w.u_min <= 0.0 && w.u_max >= 0.0) {
    curves.push_back({"prey_nullcline", {State(0.0, w.v_min), State(0.0, w.v_max)}});
  }
  for (auto& piece : curve_in_window(w, predator_nullcline, p)) {
    curves.push_back({"predator_nullcline", std::move(piece)});
  }
  if (w.v_min <= 0.0 && w.v_max >= 0.0) {
    curves.push_back({"predator_nullcline", {State(w.u_min, 0.0), State(w.u_max, 0.0)}});
  }
  const auto interior = interior_equilibria(p, tol);
  if (interior.size() == 2) {
    curves.push_back({"separatrix", separatrix(p, manifold_config(cfg), tol, w).points});
  }
  if (const auto seed = model.default_cycle_seed()) {
    if (auto cycle = model.find_limit_cycle(*seed)) {
      curves.push_back({"cycle", std::move(cycle->polyline)});
    }
  }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> du(std::max(w.u_min, 0.0), w.u_max);
  std::uniform_real_distribution<double> dv(std::max(w.v_min, 0.0), w.v_max);
  std::vector<State> starts;
  for (int k = 0; k < cfg.orbits; ++k) {
    const double u = du(rng);
    starts.emplace_back(u, dv(rng));
  }
  std::vector<Trajectory> orbits(starts.size());
  parallel_for(
      starts.size(), [&](std::size_t k) { orbits[k] = orbit_model.integrate(starts[k]); },
      cfg.threads);
  for (const auto& t : orbits) {
    Curve c{"orbit", {}};
    for (const auto& sample : t.samples) c.points.push_back(sample.state);
    curves.push_back(std::move(c));
  }

  Csv csv(prov, {"polyline", "kind", "index", "u", "v"});
  for (std::size_t id = 0; id < curves.size(); ++id) {
    for (std::size_t i = 0; i < curves[id].points.size(); ++i) {
      const auto& s = curves[id].points[i];
      csv.row({std::to_string(id), curves[id].kind, std::to_string(i), exact(s.x()), exact(s.y())});
    }
  }
  Csv eq_csv(prov, {"name", "u", "v", "type"});
  const CaseLabel label = case_label(p, tol);
  for (std::size_t k = 0; k < model.equilibria().size(); ++k) {
    const auto& e = model.equilibria()[k];
    eq_csv.row({display_name(e.kind, label), exact(e.location.x()), exact(e.location.y()),
                std::string(to_string(model.classifications()[k].type))});
  }
  write_and_report(artifact(cfg, "portrait.csv"), csv.str(), out);
  write_and_report(artifact(cfg, "portrait_equilibria.csv"), eq_csv.str(), out);

  try {
    SvgCanvas svg(w);
    for (const auto& line : prov.lines()) svg.comment(line);
    svg.axes("u (prey)", "v (predator)");
    const std::map<std::string, Stroke> styles = {
        {"orbit", {"#999999", 0.8, ""}},
        {"prey_nullcline", {"#1f4fd1", 1.5, ""}},
        {"predator_nullcline", {"#d11f1f", 1.5, ""}},
        {"separatrix", {"#000000", 2.0, "6,3"}},
        {"cycle", {"#2a9d3a", 2.0, ""}},
    };
    for (const char* kind : {"orbit", "prey_nullcline", "predator_nullcline", "separatrix",
                             "cycle"}) {
      for (const auto& c : curves) {
        if (c.kind != kind) continue;
        for (const auto& run : clip_runs(c.points, w)) svg.polyline(run, styles.at(kind));
      }
    }
    for (std::size_t k = 0; k < model.equilibria().size(); ++k) {
      const auto& e = model.equilibria()[k];
      if (!w.contains(e.location)) continue;
      const auto type = model.classifications()[k].type;
      const Glyph g = glyph_for(type);
      const std::string title = display_name(e.kind, label) + " " + std::string(to_string(type));
      if (g.square) {
        svg.square(e.location, 4.5, g.fill, {"#000000", 1.2, ""}, title);
      } else {
        svg.circle(e.location, 5.0, g.fill, {"#000000", 1.2, ""}, title);
      }
    }
    write_and_report(artifact(cfg, "portrait.svg"), svg.str(), out);
  } catch (const std::exception& e) {
    err << "error: rendering portrait.svg failed: " << e.what() << "\n";
    return kRenderFailure;
  }
  return kOk;
}

int cmd_bifurcation(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  bool dimensional = false;
  Params p = resolve(cfg, "QC", &dimensional);
  validate(Params{0.0, 1.0, p.predation, p.alt_food});
  const Tolerances& tol = cfg.tolerances;

  DiagramConfig dc;
  dc.locus_points = cfg.locus_points;
  dc.region_grid = cfg.region_grid;
  dc.homoclinic.manifold = manifold_config(cfg);
  dc.region = region_config(cfg);
  dc.threads = cfg.threads;
  const auto d =
      bifurcation_diagram(p.predation, p.alt_food, cfg.M_window, cfg.S_window, dc, tol);

  Fnv1a h = base_hash(cfg, Params{0.0, 0.0, p.predation, p.alt_food});
  h.add(cfg.M_window.min).add(cfg.M_window.max).add(cfg.S_window.min).add(cfg.S_window.max);
  h.add(static_cast<std::uint64_t>(cfg.locus_points)).add(static_cast<std::uint64_t>(cfg.region_grid));
  Provenance prov = provenance(cfg, p, h.value(), dimensional);
  prov.has_params = false;
  prov.extra.emplace_back("slice", "Q=" + exact(p.predation) + " C=" + exact(p.alt_food));
  prov.extra.emplace_back("window", "M=" + exact(cfg.M_window.min) + ":" +
                                        exact(cfg.M_window.max) + " S=" +
                                        exact(cfg.S_window.min) + ":" + exact(cfg.S_window.max));

  Csv loci(prov, {"locus", "M", "S", "status"});
  for (double m : d.saddle_node) loci.row({"SN", exact(m), "", "ok"});
  if (d.bt) loci.row({"BT", exact(d.bt->M), exact(d.bt->S), "ok"});
  for (const auto& s : d.hopf) loci.row({"H", exact(s.M), exact(s.S), "ok"});
  int failures = 0;
  for (const auto& hp : d.homoclinic) {
    if (hp.S) {
      loci.row({"HOM", exact(hp.M), exact(*hp.S), "ok"});
    } else {
      std::string reason = *hp.failure;
      std::replace(reason.begin(), reason.end(), ',', ';');
      loci.row({"HOM", exact(hp.M), "", "no_bracket: " + reason});
      ++failures;
    }
  }
  if (failures > 0) {
    err << "warning: homoclinic locus undefined at " << failures << " of " << d.homoclinic.size()
        << " M values (recorded as gaps)\n";
  }
  Csv regions(prov, {"M", "S", "region"});
  for (const auto& r : d.regions) {
    regions.row({exact(r.M), exact(r.S), std::string(to_string(r.label))});
  }
  write_and_report(artifact(cfg, "bifurcation_loci.csv"), loci.str(), out);
  write_and_report(artifact(cfg, "bifurcation_regions.csv"), regions.str(), out);
  if (d.bt) {
    out << "BT M=" << fixed(d.bt->M, 8) << " S=" << fixed(d.bt->S, 8) << "\n";
  }

  try {
    const Box box{cfg.M_window.min, cfg.M_window.max, cfg.S_window.min, cfg.S_window.max};
    SvgCanvas svg(box);
    for (const auto& line : prov.lines()) svg.comment(line);
    const std::map<RegionLabel, std::string> colors = {
        {RegionLabel::NoInterior, "#e06666"},     {RegionLabel::Repeller, "#b7b7b7"},
        {RegionLabel::Cycle, "#6fa8dc"},          {RegionLabel::Bistable, "#6aa84f"},
        {RegionLabel::SingleAttractor, "#b6d7a8"}, {RegionLabel::NearLocus, "#ffffff"},
    };
    if (cfg.region_grid > 0) {
      const double dM = (box.u_max - box.u_min) / cfg.region_grid;
      const double dS = (box.v_max - box.v_min) / cfg.region_grid;
      for (const auto& r : d.regions) {
        svg.rect(State(r.M - dM / 2, r.S - dS / 2), State(r.M + dM / 2, r.S + dS / 2),
                 colors.at(r.label));
      }
    }
    svg.axes("M", "S");
    for (double m : d.saddle_node) {
      svg.polyline({State(m, box.v_min), State(m, box.v_max)}, {"#000000", 1.5, "4,3"});
      svg.text(State(m, box.v_max - 0.04 * box.height()), " SN", 11.0);
    }
    std::vector<State> hopf;
    for (const auto& s : d.hopf) hopf.emplace_back(s.M, s.S);
    for (const auto& run : clip_runs(hopf, box)) svg.polyline(run, {"#000000", 2.0, ""});
    std::vector<std::vector<State>> hom(1);
    for (const auto& hp : d.homoclinic) {
      if (hp.S) {
        hom.back().emplace_back(hp.M, *hp.S);
      } else if (!hom.back().empty()) {
        hom.emplace_back();
      }
    }
    for (const auto& piece : hom) {
      for (const auto& run : clip_runs(piece, box)) svg.polyline(run, {"#990000", 2.0, "2,2"});
    }
    if (d.bt) svg.circle(State(d.bt->M, d.bt->S), 4.0, "#000000", {"#000000", 1.0, ""}, "BT");
    write_and_report(artifact(cfg, "bifurcation.svg"), svg.str(), out);
  } catch (const std::exception& e) {
    err << "error: rendering bifurcation.svg failed: " << e.what() << "\n";
    return kRenderFailure;
  }
  return kOk;
}

namespace {

std::string label_text(const AttractorLabel& label, CaseLabel c) {
  if (label.tag == AttractorLabel::Tag::Equilibrium) return display_name(label.equilibrium, c);
  return to_string(label);
}

std::string basin_color(const BasinAttractor* a) {
  if (a == nullptr) return "#ff00ff";
  if (a->label.tag == AttractorLabel::Tag::LimitCycle) return "#9fc5e8";
  switch (a->label.equilibrium) {
    case EquilibriumKind::InteriorHigh:
    case EquilibriumKind::InteriorDouble: return "#a6a6a6";
    case EquilibriumKind::PredatorOnly: return "#f3f3f3";
    case EquilibriumKind::PreyK: return "#f6b26b";
    default: return "#ffe599";
  }
}

bool is_interior_label(const AttractorLabel& label) {
  return label.tag == AttractorLabel::Tag::LimitCycle ||
         (label.tag == AttractorLabel::Tag::Equilibrium && is_interior(label.equilibrium));
}

double interior_fraction(const BasinRaster& r) {
  double f = 0.0;
  for (const auto& [id, share] : basin_fractions(r)) {
    if (const auto* a = r.attractor(id); a && is_interior_label(a->label)) f += share;
  }
  return f;
}

}  // namespace

int cmd_basin(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  bool dimensional = false;
  const Params p = resolve_params(cfg, &dimensional);
  const Tolerances& tol = cfg.tolerances;
  BasinConfig bc;
  bc.integrator = cfg.integrator;
  bc.threads = cfg.threads;
  const BasinRaster r = compute_basins(p, cfg.resolution, bc, tol);
  const CaseLabel label = case_label(p, tol);

  Provenance prov = provenance(cfg, p, r.config_hash, dimensional);
  prov.extra.emplace_back("resolution", std::to_string(cfg.resolution));

  try {
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    write_raster(artifact(cfg, "basin.mhtb"), r);
    out << "wrote " << artifact(cfg, "basin.mhtb").string() << "\n";
  } catch (const RasterFormatError& e) {
    throw WriteError(e.what());
  }
  Csv fractions(prov, {"id", "attractor", "u", "v", "fraction"});
  for (const auto& [id, share] : basin_fractions(r)) {
    const auto* a = r.attractor(id);
    fractions.row({std::to_string(id), a ? label_text(a->label, label) : "Undecided",
                   a ? exact(a->location.x()) : "", a ? exact(a->location.y()) : "",
                   exact(share)});
    out << (a ? label_text(a->label, label) : "Undecided") << " " << fixed(share, 6) << "\n";
  }
  write_and_report(artifact(cfg, "basin_fractions.csv"), fractions.str(), out);

  try {
    SvgCanvas svg(r.bounds);
    for (const auto& line : prov.lines()) svg.comment(line);
    const int n = r.resolution;
    for (int j = 0; j < n; ++j) {
      int start = 0;
      for (int i = 1; i <= n; ++i) {
        if (i < n && r.at(i, j) == r.at(start, j)) continue;
        const State lo(r.bounds.u_min + start * r.cell_width(), r.bounds.v_min + j * r.cell_height());
        const State hi(r.bounds.u_min + i * r.cell_width(),
                       r.bounds.v_min + (j + 1) * r.cell_height());
        svg.rect(lo, hi, basin_color(r.attractor(r.at(start, j))));
        start = i;
      }
    }
    svg.axes("u (prey)", "v (predator)");
    if (interior_equilibria(p, tol).size() == 2) {
      const auto sep = separatrix(p, manifold_config(cfg), tol, r.bounds);
      svg.polyline(sep.points, {"#000000", 2.0, "6,3"});
    }
    for (const auto& a : r.attractors) {
      if (a.label.tag == AttractorLabel::Tag::Equilibrium && r.bounds.contains(a.location)) {
        svg.circle(a.location, 5.0, "#000000", {"#000000", 1.0, ""}, label_text(a.label, label));
      }
    }
    write_and_report(artifact(cfg, "basin.svg"), svg.str(), out);
  } catch (const std::exception& e) {
    err << "error: rendering basin.svg failed: " << e.what() << "\n";
    return kRenderFailure;
  }

  if (r.undecided_fraction() > cfg.max_undecided) {
    err << "error: Undecided fraction " << fixed(r.undecided_fraction(), 4) << " exceeds "
        << fixed(cfg.max_undecided, 4) << "; tighten or lengthen the integration\n";
    return kQualityFailure;
  }
  return kOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  std::vector<SweepAxis> axes;
  for (const auto& spec : cfg.axes) axes.push_back(parse_axis(spec));
  if (axes.empty() || axes.size() > 2) throw UsageError("sweep needs one or two --axis options");
  if (axes.size() == 2 && axes[0].name == axes[1].name) {
    throw UsageError("the two sweep axes must differ");
  }
  std::string required = "MSQC";
  for (const auto& a : axes) std::erase(required, a.name);
  bool dimensional = false;
  const Params base = resolve(cfg, required, &dimensional);

  std::vector<Params> points;
  const auto first = linspace(axes[0].min, axes[0].max, axes[0].count);
  const auto second =
      axes.size() == 2 ? linspace(axes[1].min, axes[1].max, axes[1].count) : std::vector<double>{0.0};
  for (double x : first) {
    for (double y : second) {
      Params p = base;
      set_component(p, axes[0].name, x);
      if (axes.size() == 2) set_component(p, axes[1].name, y);
      validate(p);
      points.push_back(p);
    }
  }

  Fnv1a h = base_hash(cfg, base);
  for (const auto& a : axes) {
    h.add(static_cast<std::uint64_t>(a.name)).add(a.min).add(a.max);
    h.add(static_cast<std::uint64_t>(a.count));
  }
  h.add(static_cast<std::uint64_t>(cfg.sweep_resolution));
  Provenance prov = provenance(cfg, base, h.value(), dimensional);
  prov.has_params = false;
  std::string fixed_text;
  for (char name : required) {
    const double value = name == 'M'   ? base.allee_threshold
                         : name == 'S' ? base.predator_growth
                         : name == 'Q' ? base.predation
                                       : base.alt_food;
    fixed_text += std::string(fixed_text.empty() ? "" : " ") + name + "=" + exact(value);
  }
  prov.extra.emplace_back("fixed", fixed_text);
  for (const auto& spec : cfg.axes) prov.extra.emplace_back("axis", spec);
  prov.extra.emplace_back("resolution", std::to_string(cfg.sweep_resolution));

  struct Row {
    RegionLabel region = RegionLabel::NearLocus;
    double interior = 0.0;
    double undecided = 0.0;
  };
  std::vector<Row> rows(points.size());
  parallel_for(
      points.size(),
      [&](std::size_t k) {
        rows[k].region = region_classify(points[k], region_config(cfg), cfg.tolerances);
        BasinConfig bc;
        bc.integrator = cfg.integrator;
        bc.threads = 1;
        const auto r = compute_basins(points[k], cfg.sweep_resolution, bc, cfg.tolerances);
        rows[k].interior = interior_fraction(r);
        rows[k].undecided = r.undecided_fraction();
      },
      cfg.threads);

  Csv csv(prov, {"M", "S", "Q", "C", "region", "interior_fraction", "undecided_fraction"});
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto& p = points[k];
    csv.row({exact(p.allee_threshold), exact(p.predator_growth), exact(p.predation),
             exact(p.alt_food), std::string(to_string(rows[k].region)), exact(rows[k].interior),
             exact(rows[k].undecided)});
  }
  write_and_report(artifact(cfg, "sweep.csv"), csv.str(), out);
  return kOk;
}

}  // namespace mht::cli
