#include "fluxsize/material.hpp"

#include <cmath>

#include "fluxsize/bcs_core.hpp"
#include "fluxsize/errors.hpp"

namespace fluxsize {

namespace {

double free_electron_dos(double mass, double q_f, double hbar) {
  // both spins, per unit volume per unit energy
  return mass * q_f / (kPi * kPi * hbar * hbar);
}

// Handbook Debye temperatures, K.  Used only when a material file does not
// state omega_D explicitly; the headline outputs depend only on v_F.
double debye_temperature_default(const std::string& name) {
  if (name == "Al") return 428.0;
  if (name == "Nb") return 275.0;
  return 0.0;
}

} // namespace

Material make_material(const MaterialParams& p) {
  if (!(p.fermi_velocity > 0.0) || !std::isfinite(p.fermi_velocity))
    throw DomainError("material '" + p.name + "': fermi_velocity must be positive and finite");

  // gap route selection; a bare debye_energy next to gap/tc is an omega_D override
  const int routes = (p.gap.has_value() ? 1 : 0) + (p.tc.has_value() ? 1 : 0) +
                     (p.coupling.has_value() ? 1 : 0);
  if (routes != 1)
    throw ConfigError("material '" + p.name +
                      "': exactly one of gap_joule, tc_kelvin, or "
                      "(debye_energy_joule + dimensionless_coupling) must be given");
  if (p.coupling && !p.debye_energy)
    throw ConfigError("material '" + p.name +
                      "': dimensionless_coupling requires debye_energy_joule");

  Material m;
  m.name = p.name;
  m.fermi_velocity = p.fermi_velocity;
  m.electron_mass = p.constants.electron_mass;
  m.electron_charge = p.constants.electron_charge;
  m.hbar = p.constants.hbar;
  m.chemical_potential = 0.5 * m.electron_mass * m.fermi_velocity * m.fermi_velocity;

  // omega_D: explicit value, handbook default, or a documented 100*Delta fallback.
  double omega_d = p.debye_energy.value_or(0.0);
  if (omega_d == 0.0) {
    const double theta = debye_temperature_default(p.name);
    if (theta > 0.0) omega_d = p.constants.boltzmann * theta;
  }

  if (p.gap) {
    m.gap = *p.gap;
  } else if (p.tc) {
    m.gap = kBcsGapToTc * p.constants.boltzmann * (*p.tc);
  } else {
    if (!(omega_d > 0.0))
      throw ConfigError("material '" + p.name + "': debye_energy_joule required with dimensionless_coupling");
    m.gap = solve_gap(*p.coupling, omega_d);
  }
  if (omega_d == 0.0) omega_d = 100.0 * m.gap;
  m.debye_energy = omega_d;

  const double q_f = m.fermi_wavevector();
  m.dos_fermi = p.dos_fermi.value_or(free_electron_dos(m.electron_mass, q_f, m.hbar));

  validate_material(m);
  return m;
}

void validate_material(const Material& mat) {
  auto positive = [&](double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw DomainError("material '" + mat.name + "': field " + field + " must be positive and finite");
  };
  positive(mat.fermi_velocity, "fermi_velocity");
  positive(mat.gap, "gap");
  positive(mat.debye_energy, "debye_energy");
  positive(mat.dos_fermi, "dos_fermi");
  positive(mat.chemical_potential, "chemical_potential");
  positive(mat.electron_mass, "electron_mass");
  positive(mat.electron_charge, "electron_charge");
  positive(mat.hbar, "hbar");

  const double q_f = mat.fermi_wavevector();
  const double mu_check = mat.hbar * mat.hbar * q_f * q_f / (2.0 * mat.electron_mass);
  if (std::abs(mu_check - mat.chemical_potential) > 1e-9 * mat.chemical_potential)
    throw DomainError("material '" + mat.name +
                      "': chemical_potential inconsistent with fermi_velocity (free-electron relation)");

  if (!(mat.gap < mat.debye_energy))
    throw DomainError("material '" + mat.name + "': weak coupling requires gap < debye_energy");
}

bool has_builtin_material(const std::string& name) {
  return name == "Al" || name == "Nb";
}

Material builtin_material(const std::string& name) {
  MaterialParams p;
  p.name = name;
  if (name == "Al") {
    p.fermi_velocity = 2.02e6;
    p.tc = 1.2;
  } else if (name == "Nb") {
    p.fermi_velocity = 1.37e6;
    p.tc = 9.25;
  } else {
    throw ConfigError("unknown material '" + name + "' (bundled library: Al, Nb)");
  }
  return make_material(p);
}

} // namespace fluxsize
