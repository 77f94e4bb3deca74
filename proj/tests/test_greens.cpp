#include <doctest.h>

#include <cmath>
#include <complex>

#include "fluxsize/constants.hpp"
#include "fluxsize/errors.hpp"
#include "fluxsize/greens.hpp"

using namespace fluxsize;
using cd = std::complex<double>;

namespace {

Material aluminium() { return builtin_material("Al"); }

double q_at(const Material& mat, double e_over_delta) {
  return std::sqrt(2.0 * mat.electron_mass *
                   (mat.chemical_potential + e_over_delta * mat.gap)) / mat.hbar;
}

} // namespace

TEST_CASE("g0 at the Fermi surface and tau -> 0+ is [I + sigma_x] / 2 hbar") {
  const auto mat = aluminium();
  const double q_f = mat.fermi_wavevector();
  const auto g = g0(q_f, +0.0, mat);
  const double expected = 1.0 / (2.0 * mat.hbar);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      CHECK(g(r, c).real() == doctest::Approx(expected).epsilon(1e-9));
      CHECK(g(r, c).imag() == 0.0);
    }
}

TEST_CASE("g0 decays by 1/e after one quasiparticle time") {
  const auto mat = aluminium();
  const double q = q_at(mat, 3.0);
  const auto en = quasiparticle_energy(q, mat);
  const auto g_early = g0(q, +0.0, mat);
  const auto g_later = g0(q, mat.hbar / en.quasiparticle, mat);
  CHECK(g_later.max_abs() ==
        doctest::Approx(g_early.max_abs() * std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("g0 honors the antiperiodic sign structure across tau = 0") {
  const auto mat = aluminium();
  for (double e_over_delta : {-8.0, -1.0, 0.0, 2.5, 15.0}) {
    const double q = q_at(mat, e_over_delta);
    const auto jump = g0(q, +0.0, mat) - g0(q, -0.0, mat);
    const double expected = 1.0 / mat.hbar;
    CHECK(jump(0, 0).real() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(jump(1, 1).real() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(jump(0, 1)) <= 1e-12 * expected);
    CHECK(std::abs(jump(1, 0)) <= 1e-12 * expected);
  }
}

TEST_CASE("g0 sign flip on the negative-tau side") {
  const auto mat = aluminium();
  const double q = q_at(mat, -12.0);  // below the Fermi surface
  const auto g_minus = g0(q, -1e-18, mat);
  CHECK(g_minus(0, 0).real() < 0.0);
  // particle entry tends to -(1 - E/Omega)/2hbar, i.e. n -> ~1 for E < -Delta
  CHECK(-mat.hbar * g_minus(0, 0).real() == doctest::Approx(1.0).epsilon(2e-2));
}

TEST_CASE("g0 rejects tau outside the antiperiodicity strip") {
  const auto mat = aluminium();
  const double beta = 1.0 / mat.gap;
  CHECK_THROWS_AS(g0(mat.fermi_wavevector(), 0.6 * mat.hbar * beta, mat, beta), DomainError);
  CHECK_THROWS_AS(g0(mat.fermi_wavevector(), std::nan(""), mat), DomainError);
}

TEST_CASE("delta_g_vs vanishes without flow or for transverse modes") {
  const auto mat = aluminium();
  const double q_f = mat.fermi_wavevector();
  CHECK(delta_g_vs({{0.0, 0.0, q_f}}, {}, mat).max_abs() == 0.0);
  CHECK(delta_g_vs({{q_f, 0.0, 0.0}}, {0.0, 0.0, 1e-3}, mat).max_abs() == 0.0);
}

TEST_CASE("delta_g_vs at the Fermi surface is -sigma_z q_F v / (2 Delta)") {
  const auto mat = aluminium();
  const double q_f = mat.fermi_wavevector();
  const double v = 1e-3;
  const auto g = delta_g_vs({{0.0, 0.0, q_f}}, {0.0, 0.0, v}, mat);
  const double expected = -q_f * v / (2.0 * mat.gap);
  CHECK(g(0, 0).real() == doctest::Approx(expected).epsilon(1e-9));
  CHECK(g(1, 1).real() == doctest::Approx(-expected).epsilon(1e-9));
  // off-diagonals carry the E sigma_x part, ~0 on the Fermi surface
  CHECK(std::abs(g(0, 1)) <= 1e-9 * std::abs(expected));
  CHECK(std::abs(g(1, 0)) <= 1e-9 * std::abs(expected));
}

TEST_CASE("diagonal of delta_g_vs reproduces the first-order occupation shift") {
  const auto mat = aluminium();
  const Vec3 vs{2e-4, 0.0, 4e-4};
  for (double e_over_delta : {-6.0, -0.5, 0.0, 1.5, 9.0}) {
    const double q = q_at(mat, e_over_delta);
    const Mode mode{{0.48 * q, 0.0, 0.877496438739212 * q}};  // unit direction
    const auto g = delta_g_vs(mode, vs, mat);
    const auto en = quasiparticle_energy(norm(mode.q), mat);
    const double om3 = std::pow(en.quasiparticle, 3);
    const double shift = 0.5 * (mat.gap * mat.gap / om3) * mat.hbar * dot(mode.q, vs);
    CHECK(-mat.hbar * g(0, 0).real() == doctest::Approx(shift).epsilon(1e-13));
  }
}

TEST_CASE("delta_g_vs rejects supercritical flow") {
  const auto mat = aluminium();
  CHECK_THROWS_AS(delta_g_vs({{0.0, 0.0, mat.fermi_wavevector()}},
                             {0.0, 0.0, 1.01 * critical_velocity(mat)}, mat),
                  PerturbationDomainError);
}

TEST_CASE("delta_g_t at zero phase difference has no diagonal part") {
  const auto mat = aluminium();
  const double t_amp = 1e-27;
  for (double e_over_delta : {-4.0, 1.0, 7.0}) {
    const double q = q_at(mat, e_over_delta);
    const auto g = delta_g_t({{0.0, 0.0, q}}, 0.0, t_amp, mat);
    CHECK(std::abs(g(0, 0)) == 0.0);
    CHECK(std::abs(g(1, 1)) == 0.0);
    const auto en = quasiparticle_energy(q, mat);
    const double om3 = std::pow(en.quasiparticle, 3);
    const double expected = mat.gap * t_amp * 2.0 * en.kinetic / (4.0 * mat.hbar * om3);
    CHECK(g(0, 1).real() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(g(1, 0).real() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(g(0, 1).imag()) <= 1e-15 * std::abs(expected));
  }
}

TEST_CASE("delta_g_t at phase pi is diagonal with -/+ 2 Delta entries") {
  const auto mat = aluminium();
  const double t_amp = 1e-27;
  const double q = q_at(mat, 2.0);
  const auto g = delta_g_t({{0.0, 0.0, q}}, kPi, t_amp, mat);
  const auto en = quasiparticle_energy(q, mat);
  const double om3 = std::pow(en.quasiparticle, 3);
  const double mag = mat.gap * t_amp * 2.0 * mat.gap / (4.0 * mat.hbar * om3);
  CHECK(g(0, 0).real() == doctest::Approx(-mag).epsilon(1e-12));
  CHECK(g(1, 1).real() == doctest::Approx(+mag).epsilon(1e-12));
  CHECK(std::abs(g(0, 1)) <= 1e-12 * mag);
  CHECK(std::abs(g(1, 0)) <= 1e-12 * mag);
}

TEST_CASE("delta_g_t on the Fermi surface at phase pi/2") {
  const auto mat = aluminium();
  const double t_amp = 2e-28;
  const double q_f = mat.fermi_wavevector();
  const auto g = delta_g_t({{0.0, 0.0, q_f}}, kPi / 2.0, t_amp, mat);
  // prefactor T/(4 hbar Delta^2); diagonals -Delta(1 - e^{-i pi/2}), +Delta(1 - e^{+i pi/2})
  const double scale = t_amp / (4.0 * mat.hbar * mat.gap);
  CHECK(g(0, 0).real() == doctest::Approx(-scale).epsilon(1e-9));
  CHECK(g(0, 0).imag() == doctest::Approx(-scale).epsilon(1e-9));
  CHECK(g(1, 1).real() == doctest::Approx(+scale).epsilon(1e-9));
  CHECK(g(1, 1).imag() == doctest::Approx(-scale).epsilon(1e-9));
  // E = 0 kills the off-diagonals up to the Fermi-surface rounding residual
  CHECK(std::abs(g(0, 1)) <= 1e-9 * scale);
}

TEST_CASE("occupation_from_g matches the direct occupation") {
  const auto mat = aluminium();
  const double q_f = mat.fermi_wavevector();

  CHECK(occupation_from_g({{0.0, 0.0, q_f}}, {}, mat) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(occupation_from_g({{0.0, 0.0, 1e-3 * q_f}}, {}, mat) ==
        doctest::Approx(1.0).epsilon(1e-8));

  const Vec3 vs{0.0, 0.0, 5e-4};
  const double via_g = occupation_from_g({{0.0, 0.0, q_f}}, vs, mat);
  const double direct = occupation({{0.0, 0.0, q_f}}, vs, mat).value;
  CHECK(via_g == doctest::Approx(direct).epsilon(1e-12));
  CHECK(via_g == doctest::Approx(0.5 + 1.574e-5).epsilon(1e-7));
}

TEST_CASE("impurity ensembles are reproducible and validated") {
  const auto a = ImpurityEnsemble::random(10, 1e-6, 1e-40, 42);
  const auto b = ImpurityEnsemble::random(10, 1e-6, 1e-40, 42);
  REQUIRE(a.positions.size() == 10);
  for (std::size_t i = 0; i < a.positions.size(); ++i) {
    CHECK(a.positions[i].x == b.positions[i].x);
    CHECK(a.positions[i].z == b.positions[i].z);
  }
  ImpurityEnsemble bad = a;
  bad.positions.push_back({2e-6, 0.0, 0.0});
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("first-order Dyson corrections cancel for elastic impurities") {
  const auto mat = aluminium();
  const double vc = critical_velocity(mat);
  const BranchPair branches{{0.0, 0.0, 0.05 * vc}, {0.0, 0.0, -0.05 * vc}};
  const double box = 1e-6;
  const double u0 = 1e-4 * mat.gap * box * box * box / 100.0;

  GridConfig gc;
  gc.n_energy = 1000;
  gc.n_angle = 8;
  const auto grid = make_fermi_shell_grid(mat, gc);

  SUBCASE("zero impurity strength gives a zero correction") {
    auto ens = ImpurityEnsemble::random(100, box, 0.0, 7);
    const auto res = impurity_first_order_residual(grid, ens, branches, mat);
    CHECK(res.zeroth_order_max == 0.0);
    CHECK(res.first_order_residual == 0.0);
  }

  SUBCASE("single impurity: zeroth-order equal-time product vanishes") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {  // any position
      auto ens = ImpurityEnsemble::random(1, box, 100.0 * u0, seed);
      const auto res = impurity_first_order_residual(grid, ens, branches, mat);
      CHECK(res.zeroth_order_max < 1e-8);
    }
  }

  SUBCASE("100 random impurities: normalized residual below 1e-6, improving with the grid") {
    auto ens = ImpurityEnsemble::random(100, box, u0, 20260809);
    const auto coarse = impurity_first_order_residual(grid, ens, branches, mat);
    CHECK(coarse.zeroth_order_max < 1e-8);
    CHECK(coarse.first_order_residual < 1e-6);

    GridConfig fine = gc;
    fine.n_energy = 2000;
    const auto refined =
        impurity_first_order_residual(make_fermi_shell_grid(mat, fine), ens, branches, mat);
    CHECK(refined.first_order_residual < coarse.first_order_residual);
    // observed convergence order >= 1 in the grid spacing
    const double order =
        std::log2(coarse.first_order_residual / refined.first_order_residual);
    CHECK(order >= 1.0);
  }
}

TEST_CASE("under-resolved grids are rejected with a resolution hint") {
  const auto mat = aluminium();
  GridConfig gc;
  gc.n_energy = 300;  // spacing ~0.21 Delta, too coarse for the gap scale
  gc.n_angle = 8;
  const auto grid = make_fermi_shell_grid(mat, gc);
  const auto ens = ImpurityEnsemble::random(10, 1e-6, 1e-45, 5);
  const BranchPair branches{{0.0, 0.0, 0.1}, {0.0, 0.0, -0.1}};
  CHECK_THROWS_AS(impurity_first_order_residual(grid, ens, branches, mat), ResolutionError);
}
