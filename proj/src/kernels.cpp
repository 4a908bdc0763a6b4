#include "fracfilter/kernels.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "fracfilter/errors.hpp"
#include "fracfilter/quadrature.hpp"

namespace fracfilter {

namespace {

void check_hurst(double h) {
  if (!(h > 0.0 && h < 1.0)) throw DomainError("Hurst exponent must lie in (0,1), got " + std::to_string(h));
}

void check_time(double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("times must be finite and non-negative");
}

// int_0^1 e^{c y} y^nu dy, nu > -1.
double exp_power_moment(double c, double nu) {
  if (c == 0.0) return 1.0 / (nu + 1.0);
  if (c < 0.0) {
    const double x = -c;
    return boost::math::tgamma_lower(nu + 1.0, x) * std::pow(x, -nu - 1.0);
  }
  // All terms positive: the series is stable.
  double term = 1.0, sum = 1.0 / (nu + 1.0);
  for (int k = 1; k < 5000; ++k) {
    term *= c / k;
    const double add = term / (k + nu + 1.0);
    sum += add;
    if (add < 1e-17 * sum && k > c) return sum;
  }
  throw NumericalError("exp_power_moment series did not converge");
}

template <typename F>
double gl01(F f, double a, double b) {
  return boost::math::quadrature::gauss<double, 30>::integrate(f, a, b);
}

}  // namespace

double fbm_cov(double s, double t, double h) {
  check_hurst(h);
  check_time(s);
  check_time(t);
  if (s == 0.0 || t == 0.0) return 0.0;
  const double g = 2.0 * h;
  return 0.5 * (std::pow(s, g) + std::pow(t, g) - std::pow(std::abs(s - t), g));
}

double fgn_cov(long m, double dt, double h) {
  check_hurst(h);
  const double g = 2.0 * h;
  const double am = std::abs(static_cast<double>(m));
  const double lag = std::pow(am + 1.0, g) + std::pow(std::abs(am - 1.0), g) - 2.0 * std::pow(am, g);
  return 0.5 * std::pow(dt, g) * lag;
}

double fou_cov(double s, double t, const ModelParams& p, const KernelOptions& opt) {
  check_time(s);
  check_time(t);
  // K_X is symmetric; evaluating in one canonical order makes that exact.
  if (s > t) std::swap(s, t);
  const double h = p.h1(), beta = p.beta();
  const double kw = fbm_cov(s, t, h);
  if (beta == 0.0 || s == 0.0 || t == 0.0) return kw;

  const double m = std::max(s, t);
  const double tol = opt.rel_tol * std::pow(m, 2.0 * h);
  auto kw_at = [h](double u, double v) { return fbm_cov(u, v, h); };

  // beta * int_0^a e^{beta(a-u)} K_W(u, b) du; K_W(., b) has a kink at u = b.
  auto one_sided = [&](double a, double b) {
    QuadratureOptions q;
    q.abs_tol = tol / (4.0 * std::abs(beta));
    q.rel_tol = 1e-13;
    auto g = [&](double u) { return std::exp(beta * (a - u)) * kw_at(u, b); };
    if (b < a) return beta * (integrate(g, 0.0, b, q).value + integrate(g, b, a, q).value);
    return beta * integrate(g, 0.0, a, q).value;
  };

  QuadratureOptions outer;
  outer.abs_tol = tol / (4.0 * beta * beta);
  outer.rel_tol = 1e-13;
  QuadratureOptions inner = outer;
  inner.abs_tol = outer.abs_tol / (4.0 * s * std::max(1.0, std::exp(beta * s)));
  auto inner_fn = [&](double u) {
    auto g = [&](double v) { return std::exp(beta * (t - v)) * kw_at(u, v); };
    if (u < t) return integrate(g, 0.0, u, inner).value + integrate(g, u, t, inner).value;
    return integrate(g, 0.0, t, inner).value;
  };
  auto outer_fn = [&](double u) { return std::exp(beta * (s - u)) * inner_fn(u); };
  double both = (t < s) ? integrate(outer_fn, 0.0, t, outer).value + integrate(outer_fn, t, s, outer).value
                        : integrate(outer_fn, 0.0, s, outer).value;

  return kw + one_sided(s, t) + one_sided(t, s) + beta * beta * both;
}

Eigen::MatrixXd fou_cov_grid(const ModelParams& p, double T, int n) {
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("horizon must be positive");
  if (n < 1) throw DomainError("grid needs at least one step");
  const double h = p.h1(), beta = p.beta();
  const double gam = 2.0 * h;
  const double dt = T / n;

  Eigen::MatrixXd K(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) K(i, j) = fbm_cov(i * dt, j * dt, h);
  if (beta == 0.0) return K;

  const double c = beta * dt;
  const double q = std::exp(c);

  // E_m = dt^{gam+1} int_0^1 e^{c(1-x)} |m+x|^gam dx, m = -n..n-1.
  std::vector<double> E(2 * n + 1);
  auto e_at = [&](long mi) -> double& { return E[static_cast<std::size_t>(mi + n)]; };
  const double scale1 = std::pow(dt, gam + 1.0);
  for (long mi = -n; mi <= n - 1; ++mi) {
    double v;
    if (mi == 0)
      v = std::exp(c) * exp_power_moment(-c, gam);
    else if (mi == -1)
      v = exp_power_moment(c, gam);
    else
      v = gl01([&](double x) { return std::exp(c * (1.0 - x)) * std::pow(std::abs(mi + x), gam); }, 0.0, 1.0);
    e_at(mi) = scale1 * v;
  }

  // C_m = dt^{gam+2} int_0^1 int_0^1 e^{c(2-x-y)} |m+x-y|^gam dx dy, symmetric in m.
  // With sigma = x+y the inner integral over x-y is explicit.
  const double g1 = gam + 1.0;
  auto Phi = [g1](double x) { return std::copysign(std::pow(std::abs(x), g1) / g1, x); };
  std::vector<double> Cm(n + 2);
  const double scale2 = std::pow(dt, gam + 2.0);
  for (long mi = 0; mi <= n + 1; ++mi) {
    const double m = static_cast<double>(mi);
    double v;
    if (mi == 0) {
      v = (std::exp(2.0 * c) * exp_power_moment(-c, g1) + exp_power_moment(c, g1)) / g1;
    } else {
      auto lo = [&](double s) { return std::exp(c * (2.0 - s)) * Phi(m + s); };
      auto hi = [&](double s) { return std::exp(c * (2.0 - s)) * Phi(m + 2.0 - s); };
      double smooth = gl01(lo, 0.0, 1.0) + gl01(hi, 1.0, 2.0);
      double kinked;
      if (mi == 1) {
        kinked = std::exp(c) * (exp_power_moment(c, g1) + exp_power_moment(-c, g1)) / g1;
      } else {
        kinked = gl01([&](double s) { return std::exp(c * (2.0 - s)) * Phi(m - s); }, 0.0, 1.0) +
                 gl01([&](double s) { return std::exp(c * (2.0 - s)) * Phi(m - 2.0 + s); }, 1.0, 2.0);
      }
      v = 0.5 * (smooth - kinked);
    }
    Cm[static_cast<std::size_t>(mi)] = scale2 * v;
  }
  auto c_at = [&](long mi) { return Cm[static_cast<std::size_t>(std::abs(mi))]; };

  // a_i = int_0^{s_i} e^{beta(s_i-u)} u^gam du,  b_i = int_0^{s_i} e^{beta(s_i-u)} du.
  std::vector<double> a(n + 1, 0.0), b(n + 1, 0.0), sg(n + 1, 0.0);
  for (int i = 1; i <= n; ++i) {
    a[i] = q * a[i - 1] + e_at(i - 1);
    b[i] = std::expm1(beta * i * dt) / beta;
    sg[i] = std::pow(i * dt, gam);
  }

  // Row-by-row: d(i,j) = int_0^{s_i} e^{beta(s_i-u)} |u-s_j|^gam du and
  // D(i,j) = double integral of e^{beta(s_i-u)+beta(s_j-v)} |u-v|^gam.
  // K_X = K_W + beta (F + F^T) + beta^2 G, accumulated in place.
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n + 1), D = Eigen::VectorXd::Zero(n + 1), R(n + 1);
  for (int i = 1; i <= n; ++i) {
    const long k = i - 1;
    R(0) = 0.0;
    for (int j = 1; j <= n; ++j) R(j) = q * R(j - 1) + c_at(k - j + 1);
    for (int j = 0; j <= n; ++j) {
      d(j) = q * d(j) + e_at(k - j);
      D(j) = q * D(j) + R(j);
      const double f = 0.5 * (a[i] + sg[j] * b[i] - d(j));
      const double g = 0.5 * (a[i] * b[j] + b[i] * a[j] - D(j));
      K(i, j) += beta * f + beta * beta * g;
      K(j, i) += beta * f;
    }
  }
  return K;
}

}  // namespace fracfilter
