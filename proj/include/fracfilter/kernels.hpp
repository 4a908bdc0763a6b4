#pragma once

#include <Eigen/Dense>

#include "fracfilter/params.hpp"

namespace fracfilter {

// Covariance of fractional Brownian motion with Hurst exponent h.
double fbm_cov(double s, double t, double h);

// Covariance of the increments V(s_{i}) - V(s_{i-1}) and V(s_j) - V(s_{j-1})
// on a uniform grid with step dt, as a function of the lag m = i - j.
double fgn_cov(long m, double dt, double h);

struct KernelOptions {
  // Absolute tolerance is rel_tol * K_W(max(s,t), max(s,t)).
  double rel_tol = 1e-10;
};

// Covariance of the fractional Ornstein-Uhlenbeck state
//   X_t = W_t + beta * int_0^t e^{beta(t-u)} W_u du,
// by adaptive quadrature of the integrated-by-parts kernel. Throws
// NumericalError (carrying the achieved estimate) if quadrature fails.
double fou_cov(double s, double t, const ModelParams& p, const KernelOptions& opt = {});

// K_X(s_i, s_j) for s_i = i*T/n, i = 0..n, assembled exactly from one-step
// recurrences in i and j. Only the first-cell moment integrals need
// quadrature, so the whole (n+1)x(n+1) matrix costs O(n^2).
Eigen::MatrixXd fou_cov_grid(const ModelParams& p, double T, int n);

}  // namespace fracfilter
