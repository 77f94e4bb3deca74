#include "fluxsize/greens.hpp"

#include <cmath>
#include <complex>
#include <random>

#include "fluxsize/errors.hpp"

namespace fluxsize {

namespace {

using cd = std::complex<double>;

// M(E) = (E sigma_z + Delta sigma_x) / Omega, the dimensionless coherence
// structure; M^2 = I.
NambuMatrix coherence_matrix(double e, double omega, double gap) {
  NambuMatrix m;
  m.units = NambuUnits::dimensionless;
  m(0, 0) = e / omega;
  m(1, 1) = -e / omega;
  m(0, 1) = gap / omega;
  m(1, 0) = gap / omega;
  return m;
}

NambuMatrix projector_combo(double e, double omega, double gap, double sign, double hbar) {
  // (I + sign * M) / (2 hbar)
  NambuMatrix out = nambu_identity();
  out += sign * coherence_matrix(e, omega, gap);
  out = (1.0 / (2.0 * hbar)) * out;
  out.units = NambuUnits::green_amplitude;
  return out;
}

} // namespace

NambuMatrix g0(double k_mag, double tau, const Material& mat, double beta) {
  if (!std::isfinite(tau)) throw DomainError("g0: non-finite tau");
  if (!(std::abs(tau) < 0.5 * mat.hbar * beta))
    throw DomainError("g0: |tau| must be below hbar*beta/2");
  const auto en = quasiparticle_energy(k_mag, mat);
  const bool positive_side = (tau > 0.0) || (tau == 0.0 && !std::signbit(tau));
  const double decay = std::exp(-en.quasiparticle * std::abs(tau) / mat.hbar);
  NambuMatrix out = projector_combo(en.kinetic, en.quasiparticle, mat.gap,
                                    positive_side ? +1.0 : -1.0, mat.hbar);
  return (positive_side ? decay : -decay) * out;
}

NambuMatrix g0_equal_time(double k_mag, const Material& mat, EqualTimeSide side) {
  return g0(k_mag, side == EqualTimeSide::plus ? +0.0 : -0.0, mat);
}

NambuMatrix delta_g_vs(const Mode& mode, const Vec3& vs, const Material& mat) {
  if (!finite(mode.q) || !finite(vs)) throw DomainError("delta_g_vs: non-finite input");
  if (norm(vs) >= critical_velocity(mat))
    throw PerturbationDomainError("delta_g_vs: |v_s| >= v_crit");
  const auto en = quasiparticle_energy(norm(mode.q), mat);
  const double om = en.quasiparticle;
  const double pref = -mat.gap * dot(mode.q, vs) / (2.0 * om * om * om);
  NambuMatrix out;
  out.units = NambuUnits::green_amplitude;
  out(0, 0) = pref * mat.gap;
  out(1, 1) = -pref * mat.gap;
  out(0, 1) = -pref * en.kinetic;
  out(1, 0) = -pref * en.kinetic;
  return out;
}

NambuMatrix delta_g_t(const Mode& mode, double phase_diff, double t_amp,
                      const Material& mat) {
  if (!finite(mode.q) || !std::isfinite(phase_diff) || !std::isfinite(t_amp))
    throw DomainError("delta_g_t: non-finite input");
  const auto en = quasiparticle_energy(norm(mode.q), mat);
  const double om = en.quasiparticle;
  const double pref = mat.gap * t_amp / (4.0 * mat.hbar * om * om * om);
  const cd phase_plus = std::exp(cd(0.0, phase_diff));
  const cd phase_minus = std::exp(cd(0.0, -phase_diff));
  NambuMatrix out;
  out.units = NambuUnits::green_amplitude;
  out(0, 0) = pref * (-mat.gap) * (1.0 - phase_minus);
  out(0, 1) = pref * en.kinetic * (1.0 + phase_plus);
  out(1, 0) = pref * en.kinetic * (1.0 + phase_minus);
  out(1, 1) = pref * mat.gap * (1.0 - phase_plus);
  return out;
}

double occupation_from_g(const Mode& mode, const Vec3& vs, const Material& mat) {
  if (norm(vs) >= critical_velocity(mat))
    throw PerturbationDomainError("occupation_from_g: |v_s| >= v_crit");
  NambuMatrix g = g0_equal_time(norm(mode.q), mat, EqualTimeSide::minus);
  g += delta_g_vs(mode, vs, mat);
  return -mat.hbar * g(0, 0).real();
}

void ImpurityEnsemble::validate() const {
  if (!(strength >= 0.0) || !std::isfinite(strength))
    throw DomainError("ImpurityEnsemble: strength must be nonnegative and finite");
  if (!(box_length > 0.0)) throw DomainError("ImpurityEnsemble: box_length must be positive");
  for (const auto& r : positions)
    if (r.x < 0.0 || r.x > box_length || r.y < 0.0 || r.y > box_length || r.z < 0.0 ||
        r.z > box_length)
      throw DomainError("ImpurityEnsemble: position outside the declared sample volume");
}

ImpurityEnsemble ImpurityEnsemble::random(int count, double box_length, double strength,
                                          std::uint64_t seed) {
  ImpurityEnsemble ens;
  ens.strength = strength;
  ens.box_length = box_length;
  ens.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, box_length);
  ens.positions.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) ens.positions.push_back({u(rng), u(rng), u(rng)});
  ens.validate();
  return ens;
}

namespace {

// Equal-time convolution integral of two zeroth-order Green's functions,
// Int dtau' G0(E_a; -tau') G0(E_b; tau' - 0^-), done analytically: the
// integrand is a pure exponential on each half-line, so
//   K(a, b) = -hbar/(Omega_a + Omega_b) [ A_-(a) A_+(b) + A_+(a) A_-(b) ]
// with A_+- = (I +- M)/(2 hbar).  Vanishes identically for E_a = E_b.
NambuMatrix equal_time_pair_integral(double ea, double eb, const Material& mat) {
  const double oma = std::hypot(ea, mat.gap);
  const double omb = std::hypot(eb, mat.gap);
  const NambuMatrix am_a = projector_combo(ea, oma, mat.gap, -1.0, mat.hbar);
  const NambuMatrix ap_a = projector_combo(ea, oma, mat.gap, +1.0, mat.hbar);
  const NambuMatrix am_b = projector_combo(eb, omb, mat.gap, -1.0, mat.hbar);
  const NambuMatrix ap_b = projector_combo(eb, omb, mat.gap, +1.0, mat.hbar);
  NambuMatrix out = am_a * ap_b + ap_a * am_b;
  out = (-mat.hbar / (oma + omb)) * out;
  out.units = NambuUnits::green_amplitude;
  return out;
}

} // namespace

DysonCancellation impurity_first_order_residual(const MomentumGrid& grid,
                                                const ImpurityEnsemble& ens,
                                                const BranchPair& branches,
                                                const Material& mat) {
  ens.validate();
  if (grid.nodes.empty()) throw DomainError("impurity residual: empty grid");
  if (!(grid.spacing < mat.gap / 10.0))
    throw ResolutionError("impurity residual: grid spacing must resolve the gap scale "
                          "(spacing < Delta/10); refine n_energy");
  const double dv = norm(branches.delta_vs());
  if (dv == 0.0) return {0.0, 0.0};
  if (norm(branches.v_left) >= critical_velocity(mat) ||
      norm(branches.v_right) >= critical_velocity(mat))
    throw PerturbationDomainError("impurity residual: branch velocity >= v_crit");

  const double u_qq = ens.diagonal_element();
  const double h = grid.spacing;  // finite-difference step tied to the grid

  DysonCancellation out;
  double max_dn = 0.0;
  double max_first = 0.0;
  double last_e = std::numeric_limits<double>::quiet_NaN();
  double corr_scale = 0.0;  // |hbar U (hbar q dv / 2h) sumK_00|, per unit cos(theta)
  double zeroth_scale = 0.0;

  for (const auto& node : grid.nodes) {
    if (node.e != last_e) {
      last_e = node.e;
      const NambuMatrix k_zero = equal_time_pair_integral(node.e, node.e, mat);
      zeroth_scale = std::abs(mat.hbar * u_qq * k_zero(0, 0).real());

      NambuMatrix sum_k = equal_time_pair_integral(node.e, node.e + h, mat) -
                          equal_time_pair_integral(node.e, node.e - h, mat);
      sum_k += equal_time_pair_integral(node.e + h, node.e, mat) -
               equal_time_pair_integral(node.e - h, node.e, mat);
      const double dxi = mat.hbar * node.q * dv;  // |delta xi| between branches
      corr_scale = std::abs(mat.hbar * u_qq * (dxi / (2.0 * h)) * sum_k(0, 0).real());
    }
    out.zeroth_order_max = std::max(out.zeroth_order_max, zeroth_scale);
    max_first = std::max(max_first, corr_scale * std::abs(node.cos_theta));

    const auto en = quasiparticle_energy(node.q, mat);
    const double om3 = en.quasiparticle * en.quasiparticle * en.quasiparticle;
    const double dn = 0.5 * (mat.gap * mat.gap / om3) * mat.hbar * node.q * dv * node.cos_theta;
    max_dn = std::max(max_dn, std::abs(dn));
  }

  if (!(max_dn > 0.0)) throw ResolutionError("impurity residual: vanishing delta n on grid");
  out.first_order_residual = max_first / max_dn;
  return out;
}

} // namespace fluxsize
