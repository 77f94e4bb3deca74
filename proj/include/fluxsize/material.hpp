#pragma once

#include <optional>
#include <string>

#include "fluxsize/constants.hpp"

namespace fluxsize {

// Bulk superconductor description, SI units throughout.
//
// dos_fermi counts BOTH spin orientations per unit volume per unit energy.
// The free-electron value is m q_F / (pi^2 hbar^2).  Each Material carries
// its own copies of m, |e| and hbar so that a doctored constants set can be
// injected for regression tests without touching global state.
struct Material {
  std::string name;
  double fermi_velocity = 0.0;      // v_F, m/s
  double gap = 0.0;                 // Delta, J
  double debye_energy = 0.0;        // omega_D, J
  double dos_fermi = 0.0;           // rho_F, 1/(J m^3), both spins
  double chemical_potential = 0.0;  // mu, J
  double electron_mass = 0.0;       // kg
  double electron_charge = 0.0;     // |e|, C
  double hbar = 0.0;                // J s

  double fermi_wavevector() const { return electron_mass * fermi_velocity / hbar; }
  double coherence_length() const { return hbar * fermi_velocity / gap; }
};

// Inputs for building a Material.  Exactly one of {gap, tc, (debye_energy
// and coupling)} must be given; coupling means the dimensionless product
// rho_F * g of the pairing interaction.
struct MaterialParams {
  std::string name;
  double fermi_velocity = 0.0;
  std::optional<double> gap;
  std::optional<double> tc;
  std::optional<double> debye_energy;
  std::optional<double> coupling;
  std::optional<double> dos_fermi;  // override; default free-electron
  PhysicalConstants constants = kConstants;
};

Material make_material(const MaterialParams& params);

// Enforces positivity, mu = hbar^2 q_F^2 / 2m to 1e-9 relative, Delta < omega_D.
// Throws DomainError naming the offending field.
void validate_material(const Material& mat);

// Bundled material library ("Al", "Nb").  Throws ConfigError for other names.
Material builtin_material(const std::string& name);
bool has_builtin_material(const std::string& name);

} // namespace fluxsize
