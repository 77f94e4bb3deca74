#include "fluxsize/junction.hpp"

#include <cmath>

#include "fluxsize/constants.hpp"
#include "fluxsize/errors.hpp"
#include "fluxsize/quadrature.hpp"

namespace fluxsize {

double cross_junction_delta_n(const Mode& q_left, const Mode& q_right,
                              const JunctionSpec& jct, const Material& mat) {
  if (!finite(q_left.q) || !finite(q_right.q))
    throw DomainError("cross_junction_delta_n: non-finite mode");
  const auto en_l = quasiparticle_energy(norm(q_left.q), mat);
  const auto en_r = quasiparticle_energy(norm(q_right.q), mat);
  const double om_l = en_l.quasiparticle;
  const double om_r = en_r.quasiparticle;
  return mat.gap * mat.gap * std::abs(jct.t_amp) / ((om_l + om_r) * om_l * om_r);
}

namespace {

// mean of Delta^2 / ((Omega+Omega) Omega Omega) over the energy window,
// sampled with Gauss-Legendre nodes; equals 1/(2 Delta sqrt(W^2+1)) exactly
double window_average_kernel(double gap, double window_delta) {
  const double half = window_delta * gap;
  auto f = [&](double e) {
    const double om = std::hypot(e, gap);
    return gap * gap / (2.0 * om * om * om);
  };
  return gl_integrate_symmetric_graded(f, std::min(gap, 0.5 * half), half, 16) / (2.0 * half);
}

} // namespace

JunctionTotal junction_total(const JunctionSpec& jct, const Material& mat) {
  if (!jct.calibrated())
    throw ConfigError("junction_total: uncalibrated junction spec "
                      "(mode count and |T| required)");
  const double avg = window_average_kernel(mat.gap, jct.energy_window_delta);
  JunctionTotal out;
  out.value = jct.mode_count_near_junction * jct.t_amp * avg;
  const double lo_amp = jct.t_amp_lo > 0.0 ? jct.t_amp_lo : jct.t_amp;
  const double hi_amp = jct.t_amp_hi > 0.0 ? jct.t_amp_hi : jct.t_amp;
  out.lo = jct.mode_count_near_junction * lo_amp * avg;
  out.hi = jct.mode_count_near_junction * hi_amp * avg;
  return out;
}

JunctionSpec calibrate_junction(const JunctionCalibration& cal, const Material& mat) {
  if (!(cal.normal_state_resistance > 0.0))
    throw ConfigError("calibrate_junction: normal_state_resistance must be positive");
  if (!(cal.junction_area > 0.0))
    throw ConfigError("calibrate_junction: junction_area must be positive");
  if (!(cal.energy_window_delta >= 1.0))
    throw ConfigError("calibrate_junction: energy window must be >= 1 Delta");

  const double q_f = mat.fermi_wavevector();
  const double r_k = 2.0 * kPi * mat.hbar / (mat.electron_charge * mat.electron_charge);
  const double n_channels = cal.junction_area * q_f * q_f / (4.0 * kPi);
  const double w = cal.energy_window_delta;

  // longitudinal modes per channel within +-W Delta over a depth xi_0 on
  // both sides, 1D density of states 4/(pi hbar v_F) (spinful, both +-k)
  const double modes_per_channel = 8.0 * w / kPi;

  auto t_amp_for = [&](double r_n) {
    const double transmission = r_k / (2.0 * n_channels * r_n);
    const double tau_eff = (3.0 * kPi / 16.0) * transmission * std::sqrt(w * w + 1.0) / w;
    return 2.0 * mat.gap * tau_eff;
  };

  JunctionSpec spec;
  spec.mode_count_near_junction = n_channels * modes_per_channel;
  spec.t_amp = t_amp_for(cal.normal_state_resistance);
  spec.t_amp_lo = cal.resistance_hi > 0.0 ? t_amp_for(cal.resistance_hi) : spec.t_amp;
  spec.t_amp_hi = cal.resistance_lo > 0.0 ? t_amp_for(cal.resistance_lo) : spec.t_amp;
  spec.phase_difference = cal.phase_difference;
  spec.energy_window_delta = cal.energy_window_delta;
  spec.calibration_note =
      "golden-rule calibration: R_N = " + std::to_string(cal.normal_state_resistance) +
      " ohm over area " + std::to_string(cal.junction_area) +
      " m^2 gives mean channel transmission R_K/(2 N_ch R_N); per-mode "
      "|T| = 2 Delta (3pi/16) t sqrt(W^2+1)/W so the mode sum is (3/4) R_K/R_N. "
      "Mode counting volume: xi_0 depth per side, +-" +
      std::to_string(cal.energy_window_delta) + " Delta energy window.";
  return spec;
}

} // namespace fluxsize
