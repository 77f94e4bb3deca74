#pragma once

#include <cstddef>
#include <vector>

#include "fluxsize/material.hpp"

namespace fluxsize {

// Spherical-shell momentum grid around the Fermi surface: Gauss-Legendre
// nodes in kinetic energy E over [-window*Delta, +window*Delta] and in
// cos(theta) over [-1, 1], theta measured from a reference axis (taken along
// delta_vs by the consumers).  The delta n kernels decay as Delta^2/Omega^3,
// so a window of a few tens of Delta captures them.
struct GridNode {
  double e;          // kinetic energy from the Fermi level, J
  double q;          // |q| at this energy, 1/m
  double cos_theta;
  double w_e;        // energy quadrature weight, J
  double w_c;        // angular quadrature weight
};

struct MomentumGrid {
  std::vector<GridNode> nodes;
  int n_energy = 0;
  int n_angle = 0;
  double window_delta = 0.0;   // half-width in units of Delta
  double spacing = 0.0;        // central node spacing estimate, J
};

struct GridConfig {
  int n_energy = 1024;
  int n_angle = 8;
  double window_delta = 20.0;  // >= 10 per run-config invariant
};

MomentumGrid make_fermi_shell_grid(const Material& mat, const GridConfig& cfg);

} // namespace fluxsize
