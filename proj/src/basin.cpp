#include "mht/basin.hpp"

#include "mht/hash.hpp"
#include "mht/parallel.hpp"

#include <limits>

namespace mht {

State BasinRaster::cell_center(int i, int j) const {
  return {bounds.u_min + (i + 0.5) * cell_width(), bounds.v_min + (j + 0.5) * cell_height()};
}

const BasinAttractor* BasinRaster::attractor(std::uint8_t id) const {
  for (const auto& a : attractors) {
    if (a.id == id) return &a;
  }
  return nullptr;
}

std::uint8_t BasinRaster::id_of(const AttractorLabel& label) const {
  for (const auto& a : attractors) {
    if (a.label == label) return a.id;
  }
  return kUndecided;
}

double BasinRaster::undecided_fraction() const {
  if (labels.empty()) return 0.0;
  const auto n = std::count(labels.begin(), labels.end(), kUndecided);
  return static_cast<double>(n) / static_cast<double>(labels.size());
}

std::uint64_t config_hash(const Params& p, const Box& bounds, int resolution,
                          const IntegratorConfig& cfg, const Tolerances& tol) {
  Fnv1a h;
  h.add(p.allee_threshold).add(p.predator_growth).add(p.predation).add(p.alt_food);
  h.add(bounds.u_min).add(bounds.u_max).add(bounds.v_min).add(bounds.v_max);
  h.add(static_cast<std::uint64_t>(resolution));
  h.add(cfg.rel_tol).add(cfg.abs_tol).add(cfg.max_step).add(cfg.horizon);
  h.add(cfg.rho_eq).add(cfg.rho_cyc).add(cfg.escape_bound);
  h.add(tol.eps_case).add(tol.eps_class);
  return h.value();
}

BasinRaster compute_basins(const Params& p, int resolution, const BasinConfig& cfg,
                           const Tolerances& tol) {
  if (resolution < 1) throw ParameterError("resolution must be at least 1");
  if (!(cfg.bounds.width() > 0.0 && cfg.bounds.height() > 0.0)) {
    throw ParameterError("basin bounds must have positive extent");
  }
  const FlowModel model(p, cfg.integrator, tol);

  BasinRaster r;
  r.params = p;
  r.bounds = cfg.bounds;
  r.resolution = resolution;
  r.config_hash = config_hash(p, cfg.bounds, resolution, cfg.integrator, tol);
  for (std::size_t k = 0; k < model.equilibria().size(); ++k) {
    if (!is_attracting(model.classifications()[k].type)) continue;
    const auto& e = model.equilibria()[k];
    r.attractors.push_back({static_cast<std::uint8_t>(r.attractors.size() + 1),
                            AttractorLabel::at(e.kind), e.location});
  }

  const auto n = static_cast<std::size_t>(resolution);
  std::vector<AttractorLabel> omega(n * n);
  parallel_for(
      omega.size(),
      [&](std::size_t k) {
        omega[k] = model.classify_omega_limit(
            r.cell_center(static_cast<int>(k % n), static_cast<int>(k / n)));
      },
      cfg.threads);

  r.labels.resize(omega.size());
  for (std::size_t k = 0; k < omega.size(); ++k) {
    const AttractorLabel& label = omega[k];
    if (label.tag == AttractorLabel::Tag::Undecided) {
      r.labels[k] = kUndecided;
      continue;
    }
    std::uint8_t id = r.id_of(label);
    if (id == kUndecided) {
      const Equilibrium* anchor = model.anchor();
      id = static_cast<std::uint8_t>(r.attractors.size() + 1);
      r.attractors.push_back({id, label, anchor ? anchor->location : State::Zero()});
    }
    r.labels[k] = id;
  }
  return r;
}

std::map<std::uint8_t, double> basin_fractions(const BasinRaster& r) {
  std::map<std::uint8_t, std::size_t> counts;
  for (std::uint8_t id : r.labels) ++counts[id];
  std::map<std::uint8_t, double> out;
  for (const auto& [id, count] : counts) {
    out[id] = static_cast<double>(count) / static_cast<double>(r.labels.size());
  }
  return out;
}

double basin_fraction(const BasinRaster& r, const AttractorLabel& label) {
  const std::uint8_t id =
      label.tag == AttractorLabel::Tag::Undecided ? kUndecided : r.id_of(label);
  if (id == kUndecided && label.tag != AttractorLabel::Tag::Undecided) return 0.0;
  const auto fractions = basin_fractions(r);
  const auto it = fractions.find(id);
  return it == fractions.end() ? 0.0 : it->second;
}

double boundary_vs_separatrix(const BasinRaster& r, const Separatrix& sep) {
  const auto fractions = basin_fractions(r);
  if (fractions.size() < 2) {
    throw std::invalid_argument("raster has fewer than two distinct labels");
  }
  if (sep.points.empty()) throw std::invalid_argument("separatrix is empty");
  const int n = r.resolution;
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const std::uint8_t here = r.at(i, j);
      const bool boundary = (i + 1 < n && r.at(i + 1, j) != here) ||
                            (i > 0 && r.at(i - 1, j) != here) ||
                            (j + 1 < n && r.at(i, j + 1) != here) ||
                            (j > 0 && r.at(i, j - 1) != here);
      if (boundary) worst = std::max(worst, distance_to_polyline(r.cell_center(i, j), sep.points));
    }
  }
  return worst;
}

}  // namespace mht
