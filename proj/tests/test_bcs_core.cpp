#include <doctest.h>

#include <cmath>
#include <limits>

#include "fluxsize/bcs_core.hpp"
#include "fluxsize/errors.hpp"
#include "fluxsize/quadrature.hpp"

using namespace fluxsize;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

Material aluminium() { return builtin_material("Al"); }

// independent gap-equation oracle: crude trapezoid quadrature + bisection,
// sharing no code with solve_gap
double gap_oracle(double coupling, double omega_d) {
  auto integral = [&](double delta) {
    const int n = 200000;
    const double h = omega_d / n;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double e = i * h;
      const double w = (i == 0 || i == n) ? 0.5 : 1.0;
      sum += w / std::sqrt(e * e + delta * delta);
    }
    return coupling * sum * h;  // even integrand: 2 * (1/2) * integral over [0, wD]
  };
  double lo = omega_d * 1e-12, hi = omega_d;
  for (int i = 0; i < 200; ++i) {
    const double mid = std::sqrt(lo * hi);
    (integral(mid) > 1.0 ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

} // namespace

TEST_CASE("quasiparticle energy at the Fermi surface and band bottom") {
  const auto mat = aluminium();
  const double q_f = mat.fermi_wavevector();

  const auto fermi = quasiparticle_energy(q_f, mat);
  CHECK(std::abs(fermi.kinetic) <= 1e-12 * mat.chemical_potential);
  CHECK(fermi.quasiparticle == doctest::Approx(mat.gap).epsilon(1e-12));

  const auto bottom = quasiparticle_energy(0.0, mat);
  CHECK(bottom.kinetic == doctest::Approx(-mat.chemical_potential).epsilon(1e-14));
  CHECK(bottom.quasiparticle ==
        doctest::Approx(std::hypot(mat.chemical_potential, mat.gap)).epsilon(1e-14));

  // slightly above the Fermi surface: E = mu (1.01^2 - 1) = 0.0201 mu
  const auto above = quasiparticle_energy(1.01 * q_f, mat);
  CHECK(above.kinetic == doctest::Approx(0.0201 * mat.chemical_potential).epsilon(1e-9));
  CHECK(above.quasiparticle ==
        doctest::Approx(std::hypot(above.kinetic, mat.gap)).epsilon(1e-14));

  CHECK_THROWS_AS(quasiparticle_energy(std::nan(""), mat), DomainError);
  CHECK_THROWS_AS(quasiparticle_energy(-1.0, mat), DomainError);
}

TEST_CASE("gap solver reproduces the zero-temperature closed form") {
  for (double c : {0.1, 0.2, 0.3, 0.4, 0.5}) {
    const double closed = 1.0 / std::sinh(1.0 / c);
    CHECK(solve_gap(c, 1.0, kInf) == doctest::Approx(closed).epsilon(1e-9));
  }
  // frozen values
  CHECK(solve_gap(0.3, 1.0) == doctest::Approx(0.07143890225624669).epsilon(1e-9));
  CHECK(solve_gap(0.5, 1.0) == doctest::Approx(0.2757205647717832).epsilon(1e-9));
}

TEST_CASE("gap solver agrees with an independent bisection oracle") {
  for (double c : {0.15, 0.35}) {
    CHECK(solve_gap(c, 1.0) == doctest::Approx(gap_oracle(c, 1.0)).epsilon(1e-6));
  }
}

TEST_CASE("gap vanishes with the coupling") {
  // Delta = wD / sinh(1/c): c = 0.05 -> ~4.1e-9 wD
  const double tiny = solve_gap(0.05, 1.0);
  CHECK(tiny == doctest::Approx(1.0 / std::sinh(20.0)).epsilon(1e-9));
  CHECK(tiny < 1e-8);
}

TEST_CASE("finite temperature weakens the gap and vanishes above Tc") {
  const double c = 0.3, wd = 1.0;
  const double delta0 = solve_gap(c, wd, kInf);
  const double beta_cold = 200.0 / delta0;
  const double cold = solve_gap(c, wd, beta_cold);
  CHECK(cold == doctest::Approx(delta0).epsilon(1e-4));
  // BCS: kB Tc = Delta0 / 1.764
  const double t_c = delta0 / 1.764;
  const double warm = solve_gap(c, wd, 1.0 / (0.8 * t_c));
  CHECK(warm < delta0);
  CHECK_THROWS_AS(solve_gap(c, wd, 1.0 / (1.05 * t_c)), NoSolutionError);
}

TEST_CASE("gap solver rejects bad parameters") {
  CHECK_THROWS_AS(solve_gap(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(solve_gap(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(solve_gap(0.3, -1.0), DomainError);
  CHECK_THROWS_AS(solve_gap(0.3, 1.0, -2.0), DomainError);
}

TEST_CASE("occupation at rest reproduces the textbook BCS value") {
  const auto mat = aluminium();
  const double q_f = mat.fermi_wavevector();

  CHECK(occupation({{0.0, 0.0, q_f}}, {}, mat).value == doctest::Approx(0.5).epsilon(1e-14));

  // deep filled limit: E << -Delta
  const auto deep = occupation({{0.0, 0.0, 1e-3 * q_f}}, {}, mat);
  CHECK(deep.value > 1.0 - 1e-8);
  CHECK(deep.value <= 1.0);
  CHECK(!deep.perturbative_breakdown);

  // every node of a shell sweep matches (1 - E/Omega)/2 exactly
  for (int i = 0; i <= 40; ++i) {
    const double e = (-20.0 + i) * mat.gap;
    const double q = std::sqrt(2.0 * mat.electron_mass *
                               (mat.chemical_potential + e)) / mat.hbar;
    const auto en = quasiparticle_energy(q, mat);
    const double expected = 0.5 * (1.0 - en.kinetic / en.quasiparticle);
    CHECK(occupation({{q, 0.0, 0.0}}, {}, mat).value == expected);
  }
}

TEST_CASE("flow shifts the Fermi-surface occupation by hbar q.v / 2 Delta") {
  const auto mat = aluminium();
  const double q_f = mat.fermi_wavevector();
  const Vec3 vs{0.0, 0.0, 5e-4};
  const double expected_shift =
      mat.electron_mass * mat.fermi_velocity * 5e-4 / (2.0 * mat.gap);
  CHECK(expected_shift == doctest::Approx(1.574e-5).epsilon(1e-3));  // Al scale
  const auto n = occupation({{0.0, 0.0, q_f}}, vs, mat);
  CHECK(n.value == doctest::Approx(0.5 + expected_shift).epsilon(1e-12));
}

TEST_CASE("occupation outside [0,1] is returned unclamped with the breakdown flag") {
  const auto mat = aluminium();
  // E = -1.5 Delta just below the Fermi surface with v close to v_crit pushes
  // the first-order value above 1
  const double e = -1.5 * mat.gap;
  const double q = std::sqrt(2.0 * mat.electron_mass * (mat.chemical_potential + e)) / mat.hbar;
  const Vec3 vs{0.0, 0.0, 0.99 * critical_velocity(mat)};
  const auto n = occupation({{0.0, 0.0, q}}, vs, mat);
  CHECK(n.value > 1.0);
  CHECK(n.perturbative_breakdown);
}

TEST_CASE("occupation rejects supercritical flow") {
  const auto mat = aluminium();
  const Vec3 fast{0.0, 0.0, critical_velocity(mat)};
  CHECK_THROWS_AS(occupation({{0.0, 0.0, mat.fermi_wavevector()}}, fast, mat),
                  PerturbationDomainError);
}

TEST_CASE("occupation difference: trivial zeros and the Al oracle value") {
  const auto mat = aluminium();
  const double q_f = mat.fermi_wavevector();

  const BranchPair same{{0.0, 0.0, 1e-3}, {0.0, 0.0, 1e-3}};
  CHECK(occupation_difference({{0.0, 0.0, q_f}}, same, mat) == 0.0);

  const BranchPair branches{{0.0, 0.0, 5e-4}, {0.0, 0.0, -5e-4}};
  CHECK(occupation_difference({{q_f, 0.0, 0.0}}, branches, mat) == 0.0);  // q perp delta_v

  const double expected = mat.electron_mass * mat.fermi_velocity * 1e-3 / (2.0 * mat.gap);
  CHECK(occupation_difference({{0.0, 0.0, q_f}}, branches, mat) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(3.148e-5).epsilon(1e-3));
}

TEST_CASE("occupation difference is antisymmetric and bounded") {
  const auto mat = aluminium();
  const BranchPair branches{{2e-4, 0.0, 5e-4}, {-1e-4, 0.0, -5e-4}};
  const Vec3 dv = branches.delta_vs();
  for (int i = 0; i < 25; ++i) {
    const double e = (-20.0 + 1.7 * i) * mat.gap;
    const double q = std::sqrt(2.0 * mat.electron_mass * (mat.chemical_potential + e)) / mat.hbar;
    const double c = -1.0 + 2.0 * (i % 7) / 6.0;
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    const Mode mode{{q * s, 0.0, q * c}};
    const Mode minus{{-q * s, 0.0, -q * c}};
    const double dn = occupation_difference(mode, branches, mat);
    CHECK(occupation_difference(minus, branches, mat) == -dn);
    const double bound = mat.hbar * std::abs(dot(mode.q, dv)) / (2.0 * mat.gap);
    CHECK(std::abs(dn) <= bound * (1.0 + 1e-12));
  }
}

TEST_CASE("first-order term is linear: n(v) - n(-v) equals the difference at 2v") {
  const auto mat = aluminium();
  const Vec3 v{1e-4, 2e-4, 5e-4};
  const BranchPair doubled{v, -v};
  for (int i = 0; i < 10; ++i) {
    const double e = (-9.0 + 2.0 * i) * mat.gap;
    const double q = std::sqrt(2.0 * mat.electron_mass * (mat.chemical_potential + e)) / mat.hbar;
    const Mode mode{{0.6 * q, 0.0, 0.8 * q}};
    const double split = occupation(mode, v, mat).value - occupation(mode, -v, mat).value;
    const double dn = occupation_difference(mode, doubled, mat);
    CHECK(std::abs(split - dn) <= 4e-16);  // only rounding of the n = base +- flow sums
  }
}

TEST_CASE("pair-mode difference equals the single-mode value only for correlated pairs") {
  const auto mat = aluminium();
  const double q_f = mat.fermi_wavevector();
  const Vec3 v{0.0, 0.0, 5e-4};
  const BranchPair branches{v, -v};
  const double tol = 1e-3;  // grid tolerance, 1/m

  const Mode qa{{0.3 * q_f, 0.0, 0.95 * q_f}};
  const Vec3 partner = -qa.q + (2.0 * mat.electron_mass / mat.hbar) * v;
  const Mode qb{partner};
  CHECK(pair_occupation_difference(qa, qb, branches, mat, tol) ==
        occupation_difference(qa, branches, mat));

  const Mode far{{0.5 * q_f, 0.0, 0.5 * q_f}};
  CHECK(pair_occupation_difference(qa, far, branches, mat, tol) == 0.0);

  const BranchPair still{{}, {}};
  CHECK(pair_occupation_difference(qa, Mode{-qa.q}, still, mat, tol) == 0.0);
}

TEST_CASE("critical velocity and the perturbation parameter") {
  const auto mat = aluminium();
  const double expected = mat.gap / (mat.electron_mass * mat.fermi_velocity);
  CHECK(critical_velocity(mat) == expected);
  CHECK(expected == doctest::Approx(15.88).epsilon(1e-3));

  CHECK(perturbation_parameter({}, mat) == 0.0);
  CHECK(perturbation_parameter({0.0, 0.0, critical_velocity(mat)}, mat) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("laboratory-frame wavevector") {
  const auto mat = aluminium();
  const double q_f = mat.fermi_wavevector();
  const double shift = mat.electron_mass / mat.hbar;
  CHECK(shift == doctest::Approx(8.638e3).epsilon(1e-3));

  const Vec3 from_rest = lab_frame_wavevector({}, {0.0, 0.0, 2.0}, mat);
  CHECK(from_rest.z == 2.0 * shift);

  const Vec3 unchanged = lab_frame_wavevector({q_f, 0.0, 0.0}, {}, mat);
  CHECK(unchanged.x == q_f);
  CHECK(unchanged.z == 0.0);

  const Vec3 mixed = lab_frame_wavevector({q_f, 0.0, 0.0}, {0.0, 0.0, 1.0}, mat);
  CHECK(mixed.x == q_f);
  CHECK(mixed.z == doctest::Approx(8.638e3).epsilon(1e-3));
}

TEST_CASE("material invariants are enforced") {
  auto mat = aluminium();
  mat.chemical_potential *= 1.0 + 1e-6;
  CHECK_THROWS_AS(validate_material(mat), DomainError);

  auto gapless = aluminium();
  gapless.gap = 2.0 * gapless.debye_energy;
  CHECK_THROWS_AS(validate_material(gapless), DomainError);

  auto negative = aluminium();
  negative.fermi_velocity = -1.0;
  CHECK_THROWS_AS(validate_material(negative), DomainError);
}
