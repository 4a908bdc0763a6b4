#include "fracfilter/oracle.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "fracfilter/errors.hpp"
#include "fracfilter/kernels.hpp"

namespace fracfilter {

double filtering_error(const ModelParams& p, double T, int n) {
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("horizon must be positive");
  if (n < 8) throw DomainError("oracle grid needs n >= 8");
  if (p.beta() > 0.0 && 2.0 * p.beta() * T > std::log(1e10))
    throw NumericalError("unstable drift: e^{2 beta T} exceeds 1e10, conditioning is meaningless");

  const double dt = T / n;
  const Eigen::MatrixXd K = fou_cov_grid(p, T, n);
  const double var = K(n, n);
  if (!(var <= 1e12)) throw NumericalError("Var(X_T) exceeds 1e12");

  // S(i,j) = K(i-1,j-1) + K(i-1,j) + K(i,j-1) + K(i,j), i,j = 1..n.
  const Eigen::MatrixXd S = K.topLeftCorner(n, n) + K.block(0, 1, n, n) + K.block(1, 0, n, n) +
                            K.bottomRightCorner(n, n);
  const double m = p.mu() * 0.5 * dt;
  Eigen::MatrixXd C = m * m * S;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) C(i, j) += p.eps() * fgn_cov(i - j, dt, p.h2());
  const Eigen::VectorXd c = m * (K.col(n).head(n) + K.col(n).tail(n));

  const double scale = C.trace() / n;
  Eigen::LLT<Eigen::MatrixXd> llt(C);
  for (double jitter = 1e-14; llt.info() != Eigen::Success; jitter *= 10.0) {
    if (jitter > 1e-10) throw NumericalError("observation covariance is not positive definite even with jitter");
    Eigen::MatrixXd Cj = C;
    Cj.diagonal().array() += jitter * scale;
    llt.compute(Cj);
  }
  const Eigen::VectorXd w = llt.matrixL().solve(c);
  const double P = var - w.squaredNorm();
  // Roundoff can push a tiny variance marginally negative; never report that.
  return std::max(P, 0.0);
}

OracleRun oracle_run(const ModelParams& p, double T, int n) {
  if (n % 4 != 0 || n / 4 < 8) throw DomainError("oracle_run needs n divisible by 4 with n/4 >= 8");
  OracleRun run;
  run.T = T;
  run.grid_sizes = {n / 4, n / 2, n};
  for (int m : run.grid_sizes) run.p_values.push_back(filtering_error(p, T, m));

  const double p1 = run.p_values[0], p2 = run.p_values[1], p3 = run.p_values[2];
  const double d1 = p1 - p2, d2 = p2 - p3;
  run.extrapolated = p3;
  run.uncertainty = std::abs(d2);
  if (d1 != 0.0 && d2 != 0.0 && d1 * d2 > 0.0 && std::abs(d2) < std::abs(d1)) {
    const double r = std::log2(d1 / d2);
    if (r > 0.3 && r < 6.0) {
      run.order = r;
      run.extrapolated = p3 - d2 / (std::pow(2.0, r) - 1.0);
      run.uncertainty = std::abs(run.extrapolated - p3);
    }
  }
  return run;
}

SteadyStateEstimate steady_state_estimate(const ModelParams& p, const std::vector<double>& horizons, int n) {
  if (horizons.empty()) throw DomainError("need at least one horizon");
  if (!std::is_sorted(horizons.begin(), horizons.end())) throw DomainError("horizons must increase");
  SteadyStateEstimate est;
  for (double T : horizons) est.runs.push_back(oracle_run(p, T, n));
  est.value = est.runs.back().extrapolated;
  if (est.runs.size() > 1) {
    const double prev = est.runs[est.runs.size() - 2].extrapolated;
    est.relative_gap = std::abs(est.value - prev) / est.value;
  }
  return est;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y, double* intercept) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("slope fit needs two or more matching points");
  const double k = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("log-log fit needs positive data");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  if (intercept) *intercept = (sy - slope * sx) / k;
  return slope;
}

SlopeFit small_noise_slope(const ModelParams& p, double T, const std::vector<double>& eps_grid, int n_base,
                           int n_cap) {
  if (eps_grid.size() < 2) throw DomainError("eps grid needs two or more points");
  const double emax = *std::max_element(eps_grid.begin(), eps_grid.end());
  const double emin = *std::min_element(eps_grid.begin(), eps_grid.end());
  if (!(emin > 0.0)) throw DomainError("eps values must be positive");
  SlopeFit fit;
  for (double e : eps_grid) {
    int n = static_cast<int>(std::ceil(n_base * std::sqrt(emax / e) / 4.0)) * 4;
    n = std::clamp(n, 32, n_cap);
    fit.eps.push_back(e);
    fit.p_values.push_back(oracle_run(p.with_eps(e), T, n).extrapolated);
  }
  fit.slope = log_log_slope(fit.eps, fit.p_values, &fit.intercept);
  return fit;
}

}  // namespace fracfilter
