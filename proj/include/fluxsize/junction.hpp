#pragma once

#include <string>

#include "fluxsize/bcs_core.hpp"
#include "fluxsize/material.hpp"

namespace fluxsize {

// Tunneling contribution near the Josephson junction.  t_amp is the
// effective momentum-conserving element scale |T_kk| in J; the participating
// modes live within a depth of order xi_0 = hbar v_F / Delta of the barrier
// with energies within +-energy_window_delta * Delta of the Fermi surface.
struct JunctionSpec {
  double t_amp = 0.0;                 // J
  double t_amp_lo = 0.0;              // sensitivity range of the calibration
  double t_amp_hi = 0.0;
  double mode_count_near_junction = 0.0;
  double phase_difference = 0.0;      // rad
  double energy_window_delta = 5.0;   // half-width in units of Delta
  std::string calibration_note;

  bool calibrated() const { return mode_count_near_junction > 0.0 && t_amp >= 0.0; }
};

// Occupation difference for one cross-junction mode pair:
//   dn = Delta^2 |T| / ((Omega_L + Omega_R) Omega_L Omega_R)
// Symmetric under L <-> R; bounded by |T| / (2 Delta) with equality on the
// Fermi surface.
double cross_junction_delta_n(const Mode& q_left, const Mode& q_right,
                              const JunctionSpec& jct, const Material& mat);

struct JunctionTotal {
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

// Sums the cross-junction occupation difference over the declared
// participating modes: momentum-conserving pairing (E_L = E_R) with energies
// sampled uniformly across the +-window; linear in |T|.  Throws ConfigError
// on an uncalibrated spec.
JunctionTotal junction_total(const JunctionSpec& jct, const Material& mat);

// Calibration of |T_kk| and the participating mode count from the junction
// normal-state resistance.  Swappable strategy; this one maps the Landauer
// channel count of the junction area and the golden-rule mean transmission
// t = R_K / (2 N_ch R_N) onto a per-mode effective element
//   |T| = 2 Delta * (3 pi / 16) t * sqrt(W^2+1)/W,
// which makes the mode sum equal (3/4) R_K / R_N independent of the window.
// R_N itself is taken from the Ambegaokar-Baratoff relation and the junction
// critical current when only I_c is known.
struct JunctionCalibration {
  double normal_state_resistance = 0.0;  // ohm
  double resistance_lo = 0.0;            // sensitivity range, ohm
  double resistance_hi = 0.0;
  double junction_area = 0.0;            // m^2
  double energy_window_delta = 5.0;
  double phase_difference = 0.0;
};

JunctionSpec calibrate_junction(const JunctionCalibration& cal, const Material& mat);

} // namespace fluxsize
