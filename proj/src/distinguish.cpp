#include "fluxsize/distinguish.hpp"

#include <cmath>
#include <cstddef>

#include "fluxsize/errors.hpp"
#include "fluxsize/quadrature.hpp"

namespace fluxsize {

ModeEnsembleSpec ModeEnsembleSpec::explicit_modes(std::vector<double> a,
                                                  std::vector<double> b,
                                                  double precision_delta) {
  if (a.size() != b.size() || a.empty())
    throw DomainError("mode ensemble: occupation lists must be non-empty and equal length");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] >= 0.0 && a[i] <= 1.0) || !(b[i] >= 0.0 && b[i] <= 1.0))
      throw DomainError("mode ensemble: occupations must lie in [0, 1]");
  if (!(precision_delta > 0.0 && precision_delta < 0.5))
    throw DomainError("mode ensemble: precision delta must lie in (0, 1/2)");
  ModeEnsembleSpec spec;
  spec.total_modes = static_cast<double>(a.size());
  std::vector<double> abs_diffs(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) abs_diffs[i] = std::abs(a[i] - b[i]);
  spec.delta_n_tot = pairwise_sum(abs_diffs);
  spec.precision_delta = precision_delta;
  spec.occupations_a = std::move(a);
  spec.occupations_b = std::move(b);
  return spec;
}

ModeEnsembleSpec ModeEnsembleSpec::summary(double total_modes, double delta_n_tot,
                                           double precision_delta) {
  if (!(total_modes > 0.0) || !(delta_n_tot >= 0.0))
    throw DomainError("mode ensemble: need N > 0 and DN_tot >= 0");
  if (!(precision_delta > 0.0 && precision_delta < 0.5))
    throw DomainError("mode ensemble: precision delta must lie in (0, 1/2)");
  ModeEnsembleSpec spec;
  spec.total_modes = total_modes;
  spec.delta_n_tot = delta_n_tot;
  spec.precision_delta = precision_delta;
  return spec;
}

Probability p_n_linearized(const std::vector<double>& selected_deltas) {
  std::vector<double> mags(selected_deltas.size());
  for (std::size_t i = 0; i < selected_deltas.size(); ++i) {
    if (!(std::abs(selected_deltas[i]) <= 1.0))
      throw DomainError("p_n_linearized: |delta n| must be <= 1");
    mags[i] = std::abs(selected_deltas[i]);
  }
  Probability out;
  out.value = 0.5 + 0.5 * pairwise_sum(mags);
  if (out.value > 1.0) {
    out.value = 1.0;
    out.saturated = true;
  }
  return out;
}

Probability p_n_average(double n, double total_modes, double delta_n_tot) {
  if (!(n >= 0.0) || n > total_modes)
    throw DomainError("p_n_average: need 0 <= n <= N");
  Probability out;
  out.value = 0.5 + n * delta_n_tot / (2.0 * total_modes);
  if (out.value > 1.0) {
    out.value = 1.0;
    out.saturated = true;
  }
  return out;
}

SizeEstimate n_min_and_size(const ModeEnsembleSpec& spec) {
  if (!(spec.delta_n_tot > 0.0))
    throw UndistinguishableError("n_min_and_size: DN_tot = 0, branches are identical");
  const double delta = spec.precision_delta;
  SizeEstimate out;
  out.n_min = std::ceil((1.0 - 2.0 * delta) * spec.total_modes / spec.delta_n_tot);
  if (out.n_min < 1.0) out.n_min = 1.0;
  out.size = spec.total_modes / out.n_min;
  return out;
}

double exact_trace_distance_oracle(const ModeEnsembleSpec& spec,
                                   const std::vector<int>& selection) {
  if (!spec.is_explicit())
    throw DomainError("exact oracle: explicit occupations required");
  const std::size_t n = selection.size();
  if (n == 0) return 0.5;
  if (n > 20) throw CapacityError("exact oracle: selection capped at 20 modes (2^n states)");
  const int modes = static_cast<int>(spec.occupations_a.size());
  for (int idx : selection)
    if (idx < 0 || idx >= modes) throw DomainError("exact oracle: selection index out of range");

  const std::uint64_t n_states = std::uint64_t{1} << n;
  std::vector<double> terms;
  terms.reserve(n_states);
  for (std::uint64_t s = 0; s < n_states; ++s) {
    double pa = 1.0, pb = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t mode = static_cast<std::size_t>(selection[i]);
      const bool occupied = (s >> i) & 1u;
      pa *= occupied ? spec.occupations_a[mode] : 1.0 - spec.occupations_a[mode];
      pb *= occupied ? spec.occupations_b[mode] : 1.0 - spec.occupations_b[mode];
    }
    terms.push_back(std::abs(pa - pb));
  }
  return 0.5 + 0.25 * pairwise_sum(terms);
}

Eigen::MatrixXcd random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = std::complex<double>(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r_mat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < dim; ++c) {
    const std::complex<double> d = r_mat(c, c);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(c) *= d / mag;
  }
  return q;
}

BasisOptimalityReport basis_optimality_check(const DMatrix& d, int trials,
                                             std::uint64_t seed) {
  if (d.rows() != d.cols() || d.rows() == 0)
    throw DomainError("basis_optimality_check: square matrix required");
  if (d.rows() > 64)
    throw CapacityError("basis_optimality_check: dimension capped at 64");
  const double scale = std::max(1.0, d.cwiseAbs().maxCoeff());
  if ((d - d.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw DomainError("basis_optimality_check: D must be Hermitian");

  BasisOptimalityReport report;
  report.trials = trials;

  Eigen::SelfAdjointEigenSolver<DMatrix> solver(d);
  report.eigenbasis_sum = solver.eigenvalues().cwiseAbs().sum();
  report.original_diagonal_sum = d.diagonal().cwiseAbs().sum();

  std::mt19937_64 rng(seed);
  const double tol = 1e-12 * std::max(1.0, report.eigenbasis_sum);
  for (int t = 0; t < trials; ++t) {
    const Eigen::MatrixXcd u = random_unitary(static_cast<int>(d.rows()), rng);
    const double diag_sum = (u.adjoint() * d * u).diagonal().cwiseAbs().sum();
    report.best_trial_sum = std::max(report.best_trial_sum, diag_sum);
    if (diag_sum > report.eigenbasis_sum + tol) ++report.violations;
  }
  return report;
}

} // namespace fluxsize
