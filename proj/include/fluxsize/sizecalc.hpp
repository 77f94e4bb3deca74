#pragma once

#include <optional>
#include <string>

#include "fluxsize/junction.hpp"
#include "fluxsize/material.hpp"

namespace fluxsize {

// Flux-qubit device description.  delta_ip_lo == delta_ip_hi for devices
// reporting a single persistent-current difference.
struct DeviceSpec {
  std::string name;
  Material material;
  double loop_length = 0.0;    // m
  double enclosed_area = 0.0;  // m^2
  double delta_ip_lo = 0.0;    // A
  double delta_ip_hi = 0.0;    // A
  std::optional<JunctionSpec> junction;

  bool has_range() const { return delta_ip_hi > delta_ip_lo; }
  double delta_ip_nominal() const { return 0.5 * (delta_ip_lo + delta_ip_hi); }
};

// Throws DomainError naming the offending field.  The area sanity bound is
// the planar isoperimetric one, A <= L^2/(4 pi), with 5% slack: published
// moment-to-current ratios (SUNY) sit marginally above the perfect circle.
void validate_device(const DeviceSpec& dev);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double nominal() const { return 0.5 * (lo + hi); }
};

// Momentum-integral kernels behind the mode-count formula.  The closed forms
//   K1 = rho_F 2 m^2 mu / hbar^3,   K2 = (hbar q_F / m) K1
// are the verification targets for the quadratures; the outputs never feed
// the device pipeline (the mode density cancels exactly).
struct KernelQuadratureConfig {
  double window_delta = 2.0e4;  // half-width of the E integral, units of Delta
  int nodes_per_panel = 16;
};
double kernel_k1(const Material& mat, const KernelQuadratureConfig& cfg = {});
double kernel_k2(const Material& mat, const KernelQuadratureConfig& cfg = {});
double kernel_k1_closed_form(const Material& mat);
double kernel_k2_closed_form(const Material& mat);

// Int dE Delta^2 / (2 Omega^3) over +-window*Delta; tends to 1.
double gap_kernel_energy_integral(double gap, double window_delta = 2.0e4,
                                  int nodes_per_panel = 16);

// Local occupation-number difference from the local current difference:
// dn(r) = 3 |dj(r)| / (4 |e| v_F), electrons per m^3.
double local_mode_change_density(double delta_j, const Material& mat);

// Current-density difference produced by a velocity difference |dv|,
// dj = (4 pi / 3) |e| K2 |dv|, using the closed-form K2.
double current_density_from_velocity(double delta_v, const Material& mat);

// Total number of electrons in different modes between the two branches:
// DN_tot = 3 L dIp / (4 |e| v_F).
double total_mode_change(const DeviceSpec& dev, double delta_ip);
Interval total_mode_change(const DeviceSpec& dev);

// Presentation-layer rounding (round half to even); raw values are always
// retained in the report.
double round_half_even(double x);

struct MagneticMomentDifference {
  double j_per_tesla = 0.0;
  double bohr_magnetons = 0.0;
};
MagneticMomentDifference magnetic_moment_difference(const DeviceSpec& dev, double delta_ip);

// I_c,bulk / I_c,J = 4 pi f R_N / R_S with condensate fraction f.
double critical_current_ratio(double condensate_fraction, double r_normal, double r_sharvin);

// Computed outputs with inputs echoed; assembled by the pipeline.
struct SizeReport {
  std::string device_name;
  std::string material_name;
  double fermi_velocity = 0.0;
  double loop_length = 0.0;
  double enclosed_area = 0.0;
  Interval delta_ip;             // A
  Interval delta_n_bulk;         // raw
  double delta_n_reported = 0.0; // round-half-even of the nominal raw value
  Interval delta_mu_j_per_t;
  Interval delta_mu_bohr;
  std::optional<JunctionTotal> delta_n_tunnel;
  std::optional<Interval> delta_n_combined;  // bulk + tunnel; see note
  std::string combination_note;
  double n_modes_total = 0.0;
  double precision_delta = 0.0;
  std::optional<double> n_min;
  std::optional<double> effective_size;
  double size_upper_bound = 0.0;  // delta-independent bound: DN_tot itself
  std::string note;
};

} // namespace fluxsize
