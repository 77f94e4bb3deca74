#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace fluxsize {

// Mode ensemble for the branch-distinguishing measure.  Either explicit
// per-mode occupation pairs (small systems) or the (N, DN_tot) summary for
// large ones.  precision_delta is the tolerated error of the branch
// inference, in (0, 1/2).
struct ModeEnsembleSpec {
  double total_modes = 0.0;  // N
  double delta_n_tot = 0.0;  // sum |n_i^A - n_i^B|
  double precision_delta = 0.1;
  std::vector<double> occupations_a;  // explicit form; empty for summary
  std::vector<double> occupations_b;

  bool is_explicit() const { return !occupations_a.empty(); }

  static ModeEnsembleSpec explicit_modes(std::vector<double> a, std::vector<double> b,
                                         double precision_delta = 0.1);
  static ModeEnsembleSpec summary(double total_modes, double delta_n_tot,
                                  double precision_delta = 0.1);
};

struct Probability {
  double value = 0.5;
  bool saturated = false;  // formula exceeded 1 and was capped
};

// P_n = 1/2 + 1/2 sum |dn_i| over the selected modes (first-order form;
// an upper bound on the exact discrimination probability).
Probability p_n_linearized(const std::vector<double>& selected_deltas);

// Choice-averaged form: P_n = 1/2 + n DN_tot / (2 N).
Probability p_n_average(double n, double total_modes, double delta_n_tot);

struct SizeEstimate {
  double n_min = 0.0;  // smallest n with averaged P_n >= 1 - delta
  double size = 0.0;   // N / n_min
};

// n_min = ceil((1 - 2 delta) N / DN_tot); size -> DN_tot from below as
// delta -> 0.  Throws UndistinguishableError when DN_tot = 0.
SizeEstimate n_min_and_size(const ModeEnsembleSpec& spec);

// Exact branch-inference probability for an explicit ensemble: builds the
// diagonal product distributions over the selected modes and evaluates
// 1/2 + 1/4 sum_s |P_A(s) - P_B(s)| over all 2^n occupation strings.
// Selection size is capped at 20.
double exact_trace_distance_oracle(const ModeEnsembleSpec& spec,
                                   const std::vector<int>& selection);

// Occupation-correlation difference matrix; Hermitian.
using DMatrix = Eigen::MatrixXcd;

struct BasisOptimalityReport {
  double eigenbasis_sum = 0.0;     // sum |eigenvalues|
  double original_diagonal_sum = 0.0;
  double best_trial_sum = 0.0;
  int violations = 0;              // trials whose diagonal sum beat the eigenbasis
  int trials = 0;
};

// Checks that sum |diag(U^dag D U)| never exceeds sum |eig(D)| over `trials`
// Haar-style random unitaries (QR of complex Gaussian matrices, seeded).
// Throws DomainError for non-Hermitian D, CapacityError above dimension 64.
BasisOptimalityReport basis_optimality_check(const DMatrix& d, int trials,
                                             std::uint64_t seed);

// Haar-like random unitary from the QR decomposition of a complex Ginibre
// matrix with the phase convention fixed by the R diagonal.
Eigen::MatrixXcd random_unitary(int dim, std::mt19937_64& rng);

} // namespace fluxsize
