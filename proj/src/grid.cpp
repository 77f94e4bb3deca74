#include "fluxsize/grid.hpp"

#include <cmath>

#include "fluxsize/constants.hpp"
#include "fluxsize/errors.hpp"
#include "fluxsize/quadrature.hpp"

namespace fluxsize {

MomentumGrid make_fermi_shell_grid(const Material& mat, const GridConfig& cfg) {
  if (cfg.n_energy < 8 || cfg.n_angle < 1)
    throw ConfigError("make_fermi_shell_grid: node counts too small (need n_energy >= 8)");
  if (cfg.window_delta < 10.0)
    throw ConfigError("make_fermi_shell_grid: energy window must be >= 10 Delta");

  const double half_width = cfg.window_delta * mat.gap;
  if (half_width >= mat.chemical_potential)
    throw ConfigError("make_fermi_shell_grid: window exceeds the band depth mu");

  const auto e_nodes = gauss_legendre(cfg.n_energy, -half_width, half_width);
  const auto c_nodes = gauss_legendre(cfg.n_angle, -1.0, 1.0);

  MomentumGrid grid;
  grid.n_energy = cfg.n_energy;
  grid.n_angle = cfg.n_angle;
  grid.window_delta = cfg.window_delta;
  // Gauss-Legendre nodes are sparsest at the centre: spacing ~ pi * a / n
  grid.spacing = kPi * half_width / cfg.n_energy;
  grid.nodes.reserve(static_cast<std::size_t>(cfg.n_energy) * static_cast<std::size_t>(cfg.n_angle));

  const double two_m_over_h2 = 2.0 * mat.electron_mass / (mat.hbar * mat.hbar);
  for (const auto& en : e_nodes) {
    const double q = std::sqrt(two_m_over_h2 * (mat.chemical_potential + en.x));
    for (const auto& cn : c_nodes)
      grid.nodes.push_back({en.x, q, cn.x, en.w, cn.w});
  }
  return grid;
}

} // namespace fluxsize
