#pragma once

#include <limits>

#include "fluxsize/material.hpp"
#include "fluxsize/vec3.hpp"

namespace fluxsize {

// Single electron mode: laboratory-frame wavevector and spin.
struct Mode {
  Vec3 q;             // 1/m
  double spin = 0.5;  // +-1/2; occupations are spin-independent here
};

// The two circulating-current branches of a flux superposition, each with
// its mean superfluid velocity.  delta_vs() drives every branch difference.
struct BranchPair {
  Vec3 v_left;   // m/s
  Vec3 v_right;  // m/s

  Vec3 delta_vs() const { return v_left - v_right; }
};

struct QuasiparticleEnergy {
  double kinetic;       // E = hbar^2 q^2 / 2m - mu, J
  double quasiparticle; // Omega = sqrt(E^2 + Delta^2) >= Delta, J
};

// E and Omega for a mode of magnitude q_mag.  Throws DomainError on
// non-finite or negative q_mag.
QuasiparticleEnergy quasiparticle_energy(double q_mag, const Material& mat);

// Solves rho_F g Int_{-wD}^{+wD} dE tanh(beta sqrt(E^2+D^2)/2) / (2 sqrt(E^2+D^2)) = 1
// for Delta.  coupling = rho_F * g (dimensionless, in (0,1)); beta in 1/J,
// infinity for the ground state.  Residual tolerance 1e-10.
double solve_gap(double coupling, double omega_d,
                 double beta = std::numeric_limits<double>::infinity());

// Occupation of a single mode at mean superfluid velocity vs, first order
// in |vs|/v_crit:
//   n_q = (1 - E/Omega)/2 + (Delta^2 / 2 Omega^3) hbar q . vs
// Values outside [0,1] are returned unclamped with the breakdown flag set;
// clamping would hide the failure of the first-order expansion.
struct Occupation {
  double value = 0.0;
  bool perturbative_breakdown = false;
};
Occupation occupation(const Mode& mode, const Vec3& vs, const Material& mat);

// Branch difference delta n_q = (Delta^2 / 2 Omega^3) hbar q . delta<v_s>.
// Antisymmetric under q -> -q and bounded by hbar |q . delta_vs| / (2 Delta).
double occupation_difference(const Mode& mode, const BranchPair& branches,
                             const Material& mat);

// Cooper-pair mode difference.  The pair (q, q') is correlated only when
// q' = -q + 2 m v_s / hbar for one branch's v_s; then the difference equals
// the single-mode value, otherwise it vanishes at first order.
// pair_tolerance is the grid tolerance (1/m) for the momentum match.
double pair_occupation_difference(const Mode& qa, const Mode& qb,
                                  const BranchPair& branches, const Material& mat,
                                  double pair_tolerance);

// Depairing scale v_crit = Delta / (m v_F).
double critical_velocity(const Material& mat);

// Expansion parameter |vs| v_F m / Delta = |vs| / v_crit.
double perturbation_parameter(const Vec3& vs, const Material& mat);

// Laboratory-frame wavevector q = k + m vs / hbar.
Vec3 lab_frame_wavevector(const Vec3& k, const Vec3& vs, const Material& mat);

} // namespace fluxsize
