#include "fracfilter/closed_form.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <numbers>

#include "fracfilter/errors.hpp"
#include "fracfilter/quadrature.hpp"

namespace fracfilter {

namespace {

constexpr double pi = std::numbers::pi;

void require(bool ok, const char* what) {
  if (!ok) throw RegimeError(what);
}

}  // namespace

const char* to_string(Method m) {
  switch (m) {
    case Method::classical: return "classical";
    case Method::thm1: return "thm1";
    case Method::thm2: return "thm2";
    case Method::thm3: return "thm3";
    case Method::general: return "general";
    case Method::spectral: return "spectral";
  }
  return "?";
}

Method method_from_string(const std::string& s) {
  for (Method m : {Method::classical, Method::thm1, Method::thm2, Method::thm3, Method::general, Method::spectral})
    if (s == to_string(m)) return m;
  throw DomainError("unknown method '" + s + "'");
}

double kalman_bucy_steady(double beta, double mu, double eps) {
  if (!(mu != 0.0) || !(eps > 0.0)) throw DomainError("kalman_bucy_steady needs mu != 0 and eps > 0");
  const double g = mu * mu / eps;
  return (beta + std::sqrt(beta * beta + g)) / g;
}

double riccati_error(double T, double beta, double mu, double eps) {
  if (!(T >= 0.0)) throw DomainError("riccati_error needs T >= 0");
  if (!(mu != 0.0) || !(eps > 0.0)) throw DomainError("riccati_error needs mu != 0 and eps > 0");
  if (T == 0.0) return 0.0;
  namespace ode = boost::numeric::odeint;
  const double g = mu * mu / eps;
  double P = 0.0;
  auto rhs = [&](const double& x, double& dxdt, double) { dxdt = 2.0 * beta * x + 1.0 - g * x * x; };
  auto stepper = ode::make_controlled(1e-14, 1e-10, ode::runge_kutta_dopri5<double>());
  try {
    ode::integrate_adaptive(stepper, rhs, P, 0.0, T, std::min(T, 1e-3));
  } catch (const std::exception& e) {
    throw NumericalError(std::string("Riccati integration failed: ") + e.what());
  }
  return P;
}

SteadyStateResult p_infinity_classical(const ModelParams& p) {
  require(is_half(p.h1()) && is_half(p.h2()), "classical formula requires h1 = h2 = 1/2");
  SteadyStateResult out;
  out.method = Method::classical;
  out.p_infinity = kalman_bucy_steady(p.beta(), p.mu(), p.eps());
  return out;
}

SteadyStateResult p_infinity_equal_hurst(const ModelParams& p) {
  require(same_hurst(p.h1(), p.h2()), "equal-Hurst formula requires h1 = h2");
  const double H = p.h1(), b = p.beta();
  const double t0 = std::sqrt(b * b + p.mu_eps_sq());
  SteadyStateResult out;
  out.method = Method::thm1;
  out.p_infinity =
      0.5 * std::tgamma(2.0 * H + 1.0) * std::pow(t0, -2.0 * H) * (1.0 + std::sin(pi * H) * (t0 + b) / (t0 - b));
  out.zero = find_zero(p);
  return out;
}

double white_obs_bracket(const ModelParams& p, const ClosedFormOptions& opt, double* err) {
  require(is_half(p.h2()) && !is_half(p.h1()), "white-observation formula requires h2 = 1/2 and h1 != 1/2");
  const ThetaBranch th(p);
  QuadratureOptions q;
  // The bracket is O(mu_eps^2) but is built from O(1) pieces; keep opt.tol as a bound on P.
  q.abs_tol = opt.tol * std::min(1.0, p.mu_eps_sq());
  q.rel_tol = 1e-13;
  const double sc = std::pow(p.mu_eps_sq() * kappa_h(p.h1()), 1.0 / (2.0 * p.h1() + 1.0));
  q.split = p.beta() != 0.0 ? std::max(sc, std::abs(p.beta())) : sc;
  const auto I = integrate_semi_infinite([&](double t) { return th(t); }, th.decay_exponent(), q);
  if (err) *err = I.abs_error_estimate / pi;
  double bracket = I.value / pi + p.beta();
  if (p.h1() > 0.5) bracket += 2.0 * find_zero(p).z0.real();
  return bracket;
}

SteadyStateResult p_infinity_white_obs(const ModelParams& p, const ClosedFormOptions& opt) {
  double err = 0.0;
  const double bracket = white_obs_bracket(p, opt, &err);
  SteadyStateResult out;
  out.method = Method::thm2;
  out.p_infinity = bracket / p.mu_eps_sq();
  out.quad_error = err / p.mu_eps_sq();
  if (p.h1() > 0.5) out.zero = find_zero(p);
  if (!(out.p_infinity > 0.0)) throw NumericalError("white-observation formula returned a non-positive error");
  return out;
}

SteadyStateResult spectral_steady_state(const ModelParams& p, const ClosedFormOptions& opt) {
  require(is_half(p.h2()), "spectral formula requires h2 = 1/2");
  require(p.beta() < 0.0, "spectral formula requires beta < 0");
  const double h = p.h1(), b2 = p.beta() * p.beta();
  const double c = p.mu_eps_sq() * kappa_h(h);
  auto f = [&](double w) { return std::log1p(c * std::pow(w, 1.0 - 2.0 * h) / (b2 + w * w)); };
  QuadratureOptions q;
  // opt.tol bounds the error in P, so the raw integral tolerance carries the mu_eps^2 factor.
  q.abs_tol = opt.tol * pi * p.mu_eps_sq();
  q.rel_tol = 1e-13;
  q.split = std::max(std::abs(p.beta()), std::pow(c, 1.0 / (1.0 + 2.0 * h)));
  const auto I = integrate_semi_infinite(f, 1.0 + 2.0 * h, q);
  SteadyStateResult out;
  out.method = Method::spectral;
  out.p_infinity = I.value / pi / p.mu_eps_sq();
  out.quad_error = I.abs_error_estimate / pi / p.mu_eps_sq();
  return out;
}

SteadyStateResult p_infinity_white_state(const ModelParams& p, const ClosedFormOptions& opt) {
  require(is_half(p.h1()) && !is_half(p.h2()), "white-state formula requires h1 = 1/2 and h2 != 1/2");
  require(p.beta() > 0.0, "white-state formula requires beta > 0");
  const double b = p.beta();
  double err = 0.0;
  double ratio = x_ratio(p, opt, &err);
  SteadyStateResult out;
  out.method = Method::thm3;
  if (p.h2() < 0.5) {
    const auto z = find_zero(p);
    ratio *= std::norm((z.z0 + b) / (z.z0 - b));
    out.zero = z;
  }
  out.p_infinity = (ratio - 1.0) / (2.0 * b);
  out.quad_error = ratio * err / (2.0 * b);
  if (!(out.p_infinity > 0.0)) throw NumericalError("white-state formula returned a non-positive error");
  return out;
}

SmallNoiseLaw small_noise_law(const ModelParams& p, const ClosedFormOptions& opt) {
  const double h1 = p.h1(), h2 = p.h2(), mu = p.mu();
  SmallNoiseLaw law;
  law.nu = h1 / (1.0 + h1 - h2);
  if (same_hurst(h1, h2)) {
    law.constant = 0.5 * std::tgamma(2.0 * h1 + 1.0) * (1.0 + std::sin(pi * h1)) * std::pow(std::abs(mu), -2.0 * h1);
  } else if (is_half(h2)) {
    const double e = 1.0 / (2.0 * h1 + 1.0);
    law.constant = std::pow(kappa_h(h1), e) / std::sin(pi * e) * std::pow(std::abs(mu), -4.0 * h1 * e);
  } else if (is_half(h1)) {
    const double e = 1.0 / (3.0 - 2.0 * h2);
    law.constant = std::pow(kappa_h(h2), e) / std::sin(pi * e) * std::pow(std::abs(mu), -2.0 * e);
  } else if (h1 < h2 && h2 > 0.5) {
    law.constant = p_infinity_general(ModelParams(h1, h2, 0.0, mu, 1.0), opt).p_infinity;
  } else {
    throw RegimeError("no small-noise constant implemented for these exponents; use the oracle");
  }
  return law;
}

SteadyStateResult p_infinity_with(Method m, const ModelParams& p, const ClosedFormOptions& opt) {
  switch (m) {
    case Method::classical: return p_infinity_classical(p);
    case Method::thm1: return p_infinity_equal_hurst(p);
    case Method::thm2: return p_infinity_white_obs(p, opt);
    case Method::thm3: return p_infinity_white_state(p, opt);
    case Method::general: return p_infinity_general(p, opt);
    case Method::spectral: return spectral_steady_state(p, opt);
  }
  throw DomainError("unknown method");
}

SteadyStateResult p_infinity(const ModelParams& p, const ClosedFormOptions& opt) {
  const double h1 = p.h1(), h2 = p.h2();
  if (is_half(h1) && is_half(h2)) return p_infinity_classical(p);
  if (same_hurst(h1, h2)) return p_infinity_equal_hurst(p);
  if (is_half(h2)) return p_infinity_white_obs(p, opt);
  if (is_half(h1) && p.beta() > 0.0) return p_infinity_white_state(p, opt);
  if (h1 < h2 && h2 > 0.5) return p_infinity_general(p, opt);
  throw RegimeError("no closed form implemented for these parameters; use oracle");
}

}  // namespace fracfilter
