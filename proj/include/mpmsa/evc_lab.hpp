#pragma once

#include <cstdint>
#include <vector>

#include "mpmsa/spectral.hpp"

namespace mpmsa {

struct McEstimate {
  long long trials = 0;
  long long successes = 0;
  double estimate = 0;
  double ci_low = 0;
  double ci_high = 0;
  std::uint64_t seed = 0;
};

// Wilson score interval; z = 1.96 gives 95%.
McEstimate wilson(long long successes, long long trials, std::uint64_t seed, double z = 1.959963984540054);
// Two-sided normal quantile for confidence 1 - alpha.
double normal_quantile_two_sided(double alpha);

// Fraction of trials in which the ball is (E, beta)-resonant.
McEstimate wegner_estimate(const RandomModel& rm, const MultiBall& ball, double beta, double E, long long trials,
                           std::uint64_t seed, int volume_budget = default_volume_budget);

// dist(A, B) for two ascending sequences.
double sorted_set_distance(const VectorXd& a, const VectorXd& b);

struct PowerLawFit {
  std::vector<double> s;
  std::vector<McEstimate> probability;
  double theta = 0;         // fitted exponent
  double constant = 0;      // fitted prefactor
  double residual = 0;      // rms residual on the log scale
  int points_used = 0;      // grid points in the small-s regime
};

// Fit window: at least 10 successes and empirical probability at most this level, below saturation.
inline constexpr double small_s_probability = 0.1;
bool in_small_s_regime(long long successes, long long trials);

// P{dist(Sigma_x, Sigma_y) <= s} per grid point, with a log-log fit; balls must be 3NL-distant.
PowerLawFit two_volume_evc(const RandomModel& rm, const MultiBall& ballx, const MultiBall& bally,
                           const std::vector<double>& s_grid, long long trials, std::uint64_t seed,
                           int volume_budget = default_volume_budget);

struct ShiftReport {
  int n_x = 0;              // particles of x with their L-balls inside B
  int n_y = 0;
  double expected_x = 0;    // g n_x t
  double expected_y = 0;
  double deviation_x = 0;   // max |lambda_i(t) - lambda_i(0) - expected_x|
  double deviation_y = 0;
  bool exact = false;       // both deviations <= 1e-9
};

// Replaces V by V + t 1_B and compares both ball spectra before and after.
ShiftReport spectral_shift_check(const Model& model, const MultiBall& ballx, const MultiBall& bally,
                                 const SeparationCertificate& cert, double t);

struct RcmRow {
  int q = 0;
  double s = 0;
  double unconditional_modulus = 0;  // sup_t F(t+s) - F(t) for the empirical law of xi
  double mean_conditional_modulus = 0;
  double threshold = 0;              // C' q^{A'} s^{b'} with C' = 1, A' = 1, b' = 2/3
  double exceed_frequency = 0;       // fraction of trials with conditional modulus >= threshold
  double budget = 0;                 // C'' q^{A''} s^{b''} with C'' = (4 R p_upper)^2, A'' = 0, b'' = 2/3
  bool within_budget = false;
};

// Conditional law of xi given the fluctuations: density proportional to prod_x p(xi + eta_x).
double conditional_modulus(const PotentialDistribution& dist, const std::vector<double>& eta, double s,
                           int grid_points = 2001);

std::vector<RcmRow> rcm_modulus(const PotentialDistribution& dist, const std::vector<int>& q_sizes,
                                const std::vector<double>& s_grid, long long trials, std::uint64_t seed);

}  // namespace mpmsa
