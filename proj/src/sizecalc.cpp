#include "fluxsize/sizecalc.hpp"

#include <cmath>

#include "fluxsize/constants.hpp"
#include "fluxsize/errors.hpp"
#include "fluxsize/quadrature.hpp"

namespace fluxsize {

void validate_device(const DeviceSpec& dev) {
  validate_material(dev.material);
  if (!(dev.loop_length > 0.0) || !std::isfinite(dev.loop_length))
    throw DomainError("device '" + dev.name + "': loop_length must be positive");
  if (!(dev.enclosed_area > 0.0) || !std::isfinite(dev.enclosed_area))
    throw DomainError("device '" + dev.name + "': enclosed_area must be positive");
  if (!(dev.delta_ip_lo >= 0.0) || !(dev.delta_ip_hi >= dev.delta_ip_lo))
    throw DomainError("device '" + dev.name + "': persistent-current range invalid");
  const double iso_bound = dev.loop_length * dev.loop_length / (4.0 * kPi);
  if (dev.enclosed_area > 1.05 * iso_bound)
    throw DomainError("device '" + dev.name +
                      "': enclosed_area exceeds the isoperimetric bound L^2/(4 pi) "
                      "for a planar loop (5% slack)");
}

namespace {

// common structure of the K1/K2 quadratures: integral over dq of
// f(q_F) * Delta^2 / (2 Omega(q)^3) with everything except Omega pinned to
// the Fermi surface; converted to an E integral with the exact measure
// dq = m dE / (hbar^2 q(E)).
double fermi_shell_integral(const Material& mat, const KernelQuadratureConfig& cfg) {
  const double window = std::min(cfg.window_delta * mat.gap, 0.995 * mat.chemical_potential);
  const double two_m_over_h2 = 2.0 * mat.electron_mass / (mat.hbar * mat.hbar);
  auto f = [&](double e) {
    const double q = std::sqrt(two_m_over_h2 * (mat.chemical_potential + e));
    const double om = std::hypot(e, mat.gap);
    const double measure = mat.electron_mass / (mat.hbar * mat.hbar * q);
    return measure * mat.gap * mat.gap / (2.0 * om * om * om);
  };
  return gl_integrate_symmetric_graded(f, mat.gap, window, cfg.nodes_per_panel);
}

} // namespace

double kernel_k1(const Material& mat, const KernelQuadratureConfig& cfg) {
  const double q_f = mat.fermi_wavevector();
  return mat.dos_fermi * mat.hbar * q_f * q_f * q_f * fermi_shell_integral(mat, cfg);
}

double kernel_k2(const Material& mat, const KernelQuadratureConfig& cfg) {
  const double q_f = mat.fermi_wavevector();
  return mat.dos_fermi * mat.hbar * mat.hbar * q_f * q_f * q_f * q_f /
         mat.electron_mass * fermi_shell_integral(mat, cfg);
}

double kernel_k1_closed_form(const Material& mat) {
  return mat.dos_fermi * 2.0 * mat.electron_mass * mat.electron_mass *
         mat.chemical_potential / (mat.hbar * mat.hbar * mat.hbar);
}

double kernel_k2_closed_form(const Material& mat) {
  return mat.hbar * mat.fermi_wavevector() / mat.electron_mass * kernel_k1_closed_form(mat);
}

double gap_kernel_energy_integral(double gap, double window_delta, int nodes_per_panel) {
  if (!(gap > 0.0)) throw DomainError("gap_kernel_energy_integral: gap must be positive");
  auto f = [&](double e) {
    const double om = std::hypot(e, gap);
    return gap * gap / (2.0 * om * om * om);
  };
  return gl_integrate_symmetric_graded(f, gap, window_delta * gap, nodes_per_panel);
}

double local_mode_change_density(double delta_j, const Material& mat) {
  if (!(delta_j >= 0.0) || !std::isfinite(delta_j))
    throw DomainError("local_mode_change_density: |delta_j| must be nonnegative");
  return 3.0 * delta_j / (4.0 * mat.electron_charge * mat.fermi_velocity);
}

double current_density_from_velocity(double delta_v, const Material& mat) {
  return (4.0 * kPi / 3.0) * mat.electron_charge * kernel_k2_closed_form(mat) *
         std::abs(delta_v);
}

double total_mode_change(const DeviceSpec& dev, double delta_ip) {
  return 3.0 * dev.loop_length * delta_ip /
         (4.0 * dev.material.electron_charge * dev.material.fermi_velocity);
}

Interval total_mode_change(const DeviceSpec& dev) {
  return {total_mode_change(dev, dev.delta_ip_lo), total_mode_change(dev, dev.delta_ip_hi)};
}

double round_half_even(double x) {
  const double r = std::nearbyint(x);  // default FE_TONEAREST ties to even
  return r == 0.0 ? 0.0 : r;
}

MagneticMomentDifference magnetic_moment_difference(const DeviceSpec& dev, double delta_ip) {
  MagneticMomentDifference out;
  out.j_per_tesla = dev.enclosed_area * delta_ip;
  out.bohr_magnetons = out.j_per_tesla / kConstants.bohr_magneton;
  return out;
}

double critical_current_ratio(double condensate_fraction, double r_normal, double r_sharvin) {
  if (!(condensate_fraction > 0.0) || !(condensate_fraction <= 1.0))
    throw DomainError("critical_current_ratio: condensate fraction must be in (0, 1]");
  if (!(r_normal > 0.0) || !(r_sharvin > 0.0))
    throw DomainError("critical_current_ratio: resistances must be positive");
  return 4.0 * kPi * condensate_fraction * r_normal / r_sharvin;
}

} // namespace fluxsize
