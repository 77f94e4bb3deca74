#include "fluxsize/bcs_core.hpp"

#include <cmath>
#include <string>

#include "fluxsize/errors.hpp"
#include "fluxsize/quadrature.hpp"

namespace fluxsize {

QuasiparticleEnergy quasiparticle_energy(double q_mag, const Material& mat) {
  if (!std::isfinite(q_mag) || q_mag < 0.0)
    throw DomainError("quasiparticle_energy: q must be finite and nonnegative");
  const double e = mat.hbar * mat.hbar * q_mag * q_mag / (2.0 * mat.electron_mass) -
                   mat.chemical_potential;
  return {e, std::hypot(e, mat.gap)};
}

namespace {

// LHS of the self-consistency condition, as a function of Delta.
double gap_integral(double coupling, double omega_d, double beta, double delta) {
  if (std::isinf(beta)) {
    // tanh -> 1; the integral is 2 asinh(omega_D / Delta) / 2
    return coupling * std::asinh(omega_d / delta);
  }
  auto f = [&](double e) {
    const double om = std::hypot(e, delta);
    return std::tanh(0.5 * beta * om) / (2.0 * om);
  };
  // peaked at E = 0 with width ~max(Delta, 1/beta)
  const double scale = std::max(delta, 1.0 / beta);
  return coupling * gl_integrate_symmetric_graded(f, std::min(scale, 0.5 * omega_d), omega_d, 24);
}

} // namespace

double solve_gap(double coupling, double omega_d, double beta) {
  if (!(coupling > 0.0) || !(coupling < 1.0))
    throw DomainError("solve_gap: coupling rho_F*g must lie in (0, 1)");
  if (!(omega_d > 0.0) || !std::isfinite(omega_d))
    throw DomainError("solve_gap: omega_D must be positive and finite");
  if (!(beta > 0.0))
    throw DomainError("solve_gap: beta must be positive (or infinite)");

  const double tol = 1e-10;
  auto residual = [&](double delta) { return gap_integral(coupling, omega_d, beta, delta) - 1.0; };

  // F is monotone decreasing in Delta.  F(0+) -> +inf at T = 0; at finite T
  // it saturates, and a negative value at the floor means T > Tc.
  double lo = omega_d * 1e-300;
  double hi = omega_d;
  if (residual(hi) >= 0.0)
    throw NoSolutionError("solve_gap: no root below omega_D (coupling too strong)");
  if (residual(lo) <= 0.0)
    throw NoSolutionError("solve_gap: gap equation has no positive solution (above Tc?)");

  // bisection in log Delta, then Newton polish on the residual
  double mid = lo;
  for (int it = 0; it < 200; ++it) {
    mid = std::sqrt(lo * hi);
    const double r = residual(mid);
    if (std::abs(r) < tol) return mid;
    (r > 0.0 ? lo : hi) = mid;
    if (hi / lo < 1.0 + 1e-14) break;
  }
  for (int it = 0; it < 50; ++it) {
    const double r = residual(mid);
    if (std::abs(r) < tol) return mid;
    const double h = mid * 1e-7;
    const double drd = (residual(mid + h) - residual(mid - h)) / (2.0 * h);
    if (!(drd < 0.0)) break;
    double next = mid - r / drd;
    if (!(next > lo) || !(next < hi)) next = std::sqrt(lo * hi);
    mid = next;
  }
  if (std::abs(residual(mid)) >= tol)
    throw ConvergenceError("solve_gap: residual tolerance 1e-10 not reached");
  return mid;
}

namespace {

void require_subcritical(const Vec3& vs, const Material& mat, const char* who) {
  if (!finite(vs)) throw DomainError(std::string(who) + ": non-finite velocity");
  if (norm(vs) >= critical_velocity(mat))
    throw PerturbationDomainError(std::string(who) +
                                  ": |v_s| >= v_crit, first-order expansion invalid");
}

} // namespace

Occupation occupation(const Mode& mode, const Vec3& vs, const Material& mat) {
  if (!finite(mode.q)) throw DomainError("occupation: non-finite wavevector");
  require_subcritical(vs, mat, "occupation");
  const auto en = quasiparticle_energy(norm(mode.q), mat);
  const double om3 = en.quasiparticle * en.quasiparticle * en.quasiparticle;
  const double base = 0.5 * (1.0 - en.kinetic / en.quasiparticle);
  const double flow = 0.5 * (mat.gap * mat.gap / om3) * mat.hbar * dot(mode.q, vs);
  Occupation out;
  out.value = base + flow;
  out.perturbative_breakdown = (out.value < 0.0 || out.value > 1.0);
  return out;
}

double occupation_difference(const Mode& mode, const BranchPair& branches,
                             const Material& mat) {
  if (!finite(mode.q)) throw DomainError("occupation_difference: non-finite wavevector");
  require_subcritical(branches.v_left, mat, "occupation_difference");
  require_subcritical(branches.v_right, mat, "occupation_difference");
  const auto en = quasiparticle_energy(norm(mode.q), mat);
  const double om3 = en.quasiparticle * en.quasiparticle * en.quasiparticle;
  return 0.5 * (mat.gap * mat.gap / om3) * mat.hbar * dot(mode.q, branches.delta_vs());
}

double pair_occupation_difference(const Mode& qa, const Mode& qb,
                                  const BranchPair& branches, const Material& mat,
                                  double pair_tolerance) {
  if (!finite(qa.q) || !finite(qb.q))
    throw DomainError("pair_occupation_difference: non-finite wavevector");
  if (!(pair_tolerance >= 0.0))
    throw DomainError("pair_occupation_difference: tolerance must be nonnegative");
  const double shift = mat.electron_mass / mat.hbar;
  for (const Vec3& vs : {branches.v_left, branches.v_right}) {
    const Vec3 partner = -qa.q + (2.0 * shift) * vs;
    if (norm(qb.q - partner) <= pair_tolerance)
      return occupation_difference(qa, branches, mat);
  }
  return 0.0;  // uncorrelated pair: second order only
}

double critical_velocity(const Material& mat) {
  return mat.gap / (mat.electron_mass * mat.fermi_velocity);
}

double perturbation_parameter(const Vec3& vs, const Material& mat) {
  return norm(vs) * mat.fermi_velocity * mat.electron_mass / mat.gap;
}

Vec3 lab_frame_wavevector(const Vec3& k, const Vec3& vs, const Material& mat) {
  return k + (mat.electron_mass / mat.hbar) * vs;
}

} // namespace fluxsize
