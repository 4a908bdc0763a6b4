#pragma once

#include <vector>

#include "fracfilter/params.hpp"

namespace fracfilter {

// Conditional variance of X_T given the discretized observation path on
// t_i = i T/n, with increments Z_i = mu (dt/2)(X_{i-1} + X_i) + sqrt(eps)(V_i - V_{i-1}).
// Throws NumericalError if the Gram matrix cannot be factored even with jitter
// or if Var(X_T) exceeds 1e12.
double filtering_error(const ModelParams& p, double T, int n);

struct OracleRun {
  double T = 0.0;
  std::vector<int> grid_sizes;
  std::vector<double> p_values;
  double extrapolated = 0.0;
  double uncertainty = 0.0;
  // Fitted convergence order in dt, or 0 if the fit was rejected.
  double order = 0.0;
};

// filtering_error on n/4, n/2, n followed by Richardson extrapolation with a
// fitted order. n must be a multiple of 4 with n/4 >= 8.
OracleRun oracle_run(const ModelParams& p, double T, int n);

struct SteadyStateEstimate {
  double value = 0.0;
  // |P(T_last) - P(T_prev)| / P(T_last); 0 if only one horizon was given.
  double relative_gap = 0.0;
  std::vector<OracleRun> runs;
};

SteadyStateEstimate steady_state_estimate(const ModelParams& p, const std::vector<double>& horizons, int n);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;  // log P at log eps = 0
  std::vector<double> eps;
  std::vector<double> p_values;
};

// Least-squares slope of log P_T against log eps. Grid size per point is
// n_base * sqrt(eps_max/eps) rounded up to a multiple of 4, capped at n_cap.
SlopeFit small_noise_slope(const ModelParams& p, double T, const std::vector<double>& eps_grid, int n_base,
                           int n_cap = 4096);

// Least-squares slope of log y against log x (used for closed-form sweeps too).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y, double* intercept = nullptr);

}  // namespace fracfilter
