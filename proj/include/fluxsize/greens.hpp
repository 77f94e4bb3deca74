#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "fluxsize/bcs_core.hpp"
#include "fluxsize/grid.hpp"
#include "fluxsize/nambu.hpp"
#include "fluxsize/vec3.hpp"

namespace fluxsize {

// Zeroth-order imaginary-time Nambu Green's function at momentum magnitude
// k_mag, with the (2pi)^3 delta(k - k') factor stripped:
//
//   G0(k, tau) = e^{-Omega |tau| / hbar} / (2 hbar) *
//       [ I + (E sigma_z + Delta sigma_x)/Omega ]   for tau > 0
//     - [ I - (E sigma_z + Delta sigma_x)/Omega ]   for tau < 0
//
// tau is the time difference tau_1 - tau_2, |tau| < hbar*beta/2.  tau = +0.0
// selects the 0+ limit and tau = -0.0 the 0- limit; the two differ by I/hbar
// (canonical anticommutator).
NambuMatrix g0(double k_mag, double tau, const Material& mat,
               double beta = std::numeric_limits<double>::infinity());

enum class EqualTimeSide { plus, minus };
NambuMatrix g0_equal_time(double k_mag, const Material& mat, EqualTimeSide side);

// First-order flow correction, equal-time kernel, diagonal in q (the
// delta-function prefactor becomes a grid weight):
//   delta_G_vs = -Delta (Delta sigma_z - E sigma_x) (q . vs) / (2 Omega^3)
NambuMatrix delta_g_vs(const Mode& mode, const Vec3& vs, const Material& mat);

// First-order tunneling correction for the momentum-conserving element,
// beta -> infinity:
//   (Delta / 4 hbar Omega^3) T_kk [ -Delta (1 - e^{-i dphi})   E (1 + e^{+i dphi}) ]
//                                 [  E (1 + e^{-i dphi})        Delta (1 - e^{+i dphi}) ]
// t_amp is |T_kk| in J m^3; the stripped volume factor of the diagonal
// element rides along with the units tag.
NambuMatrix delta_g_t(const Mode& mode, double phase_diff, double t_amp,
                      const Material& mat);

// Occupation through the Green's-function route: n_q = -hbar times the
// (0,0) element of G0 + delta_G_vs at the 0- equal-time limit.  Agrees with
// bcs_core::occupation to rounding.
double occupation_from_g(const Mode& mode, const Vec3& vs, const Material& mat);

// Pointlike elastic scatterers U(r) = sum_j U_0 delta(r - r_j) inside a cubic
// sample volume; reproducible from the seed.
struct ImpurityEnsemble {
  std::vector<Vec3> positions;
  double strength = 0.0;     // U_0, J m^3
  double box_length = 0.0;   // m; sample volume box_length^3
  std::uint64_t seed = 0;

  double volume() const { return box_length * box_length * box_length; }
  // momentum-diagonal matrix element U_qq = U_0 N / V, J
  double diagonal_element() const {
    return strength * static_cast<double>(positions.size()) / volume();
  }
  void validate() const;

  static ImpurityEnsemble random(int count, double box_length, double strength,
                                 std::uint64_t seed);
};

// Dyson-expansion cancellation check for elastic impurity scattering, first
// order in U and in the superfluid velocity.  The imaginary-time convolution
// integrals are evaluated analytically (exponential integrands); the flow
// correction entering the first-order products is built from a grid-spaced
// finite difference of G0 in kinetic energy, so the returned residual
// converges to zero with grid refinement.
struct DysonCancellation {
  double zeroth_order_max = 0.0;     // max |occupation correction| from G0 U G0
  double first_order_residual = 0.0; // max branch-difference correction / max |delta n_q|
};

DysonCancellation impurity_first_order_residual(const MomentumGrid& grid,
                                                const ImpurityEnsemble& ens,
                                                const BranchPair& branches,
                                                const Material& mat);

} // namespace fluxsize
