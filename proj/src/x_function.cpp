// Canonical function X, the X(-beta)/X(beta) ratio and the general
// no-zero steady-state formula, which all need Cauchy integrals of theta.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fracfilter/closed_form.hpp"
#include "fracfilter/errors.hpp"
#include "fracfilter/quadrature.hpp"

namespace fracfilter {

namespace {

constexpr double pi = std::numbers::pi;

// Scale where theta moves: the crossover of t^2 with the noise term, and |beta|.
double theta_scale(const ModelParams& p) {
  const double d = p.alpha1() - p.alpha2();
  const double ratio = p.mu_eps_sq() * kappa_alpha_or_one(p.alpha1()) / kappa_alpha_or_one(p.alpha2());
  return std::pow(ratio, 1.0 / (2.0 - d));
}

// Piecewise Chebyshev interpolation in u = log t on equal panels.
class LogChebyshev {
 public:
  template <typename F>
  LogChebyshev(F&& f, double u0, double u1, int panels, int nodes)
      : u0_(u0), width_((u1 - u0) / panels), panels_(panels), m_(nodes), values_(panels * nodes) {
    for (int k = 0; k < panels_; ++k)
      for (int j = 0; j < m_; ++j) values_[k * m_ + j] = f(std::exp(node_u(k, j)));
  }

  bool covers(double t) const {
    const double u = std::log(t);
    return u >= u0_ && u <= u0_ + panels_ * width_;
  }

  double operator()(double t) const {
    const double u = std::log(t);
    int k = static_cast<int>(std::floor((u - u0_) / width_));
    k = std::clamp(k, 0, panels_ - 1);
    const double x = 2.0 * (u - u0_ - k * width_) / width_ - 1.0;
    // Barycentric formula on Chebyshev points of the second kind.
    double num = 0.0, den = 0.0;
    for (int j = 0; j < m_; ++j) {
      const double xj = std::cos(pi * j / (m_ - 1));
      const double diff = x - xj;
      if (diff == 0.0) return values_[k * m_ + j];
      double w = (j % 2 ? -1.0 : 1.0) / diff;
      if (j == 0 || j == m_ - 1) w *= 0.5;
      num += w * values_[k * m_ + j];
      den += w;
    }
    return num / den;
  }

 private:
  double node_u(int k, int j) const {
    const double xj = std::cos(pi * j / (m_ - 1));
    return u0_ + (k + 0.5 * (xj + 1.0)) * width_;
  }

  double u0_, width_;
  int panels_, m_;
  std::vector<double> values_;
};

QuadratureOptions scaled(double tol, double split) {
  QuadratureOptions q;
  q.abs_tol = tol;
  q.rel_tol = 1e-13;
  q.split = split;
  return q;
}

}  // namespace

XFunction::XFunction(const ModelParams& p, int k, double tol)
    : theta_(p), a_(k - theta_.theta_infinity() / pi), tol_(tol) {}

double XFunction::cauchy_pv(double t) const {
  if (!(t > 0.0)) throw DomainError("cauchy_pv needs t > 0");
  auto f = [&](double s) { return theta_.tilde(s) / (s - t); };
  // C decays like 1/t; keep the tolerance relative out there.
  const double sc = theta_scale(theta_.params());
  auto q = scaled(tol_ * std::min(1.0, sc / t), sc);
  return principal_value(f, t, theta_.decay_exponent() + 1.0, q).value / pi;
}

cplx XFunction::boundary(double t, Side side) const {
  const cplx up = std::polar(std::pow(t, a_), -pi * a_) * std::exp(cplx(cauchy_pv(t), theta_.tilde(t)));
  return side == Side::upper ? up : std::conj(up);
}

double XFunction::at_negative(double x) const {
  if (!(x > 0.0)) throw DomainError("at_negative needs x > 0");
  auto f = [&](double s) { return theta_.tilde(s) / (s + x); };
  auto q = scaled(tol_, theta_scale(theta_.params()));
  const double I = integrate_semi_infinite(f, theta_.decay_exponent() + 1.0, q).value;
  return std::pow(x, a_) * std::exp(I / pi);
}

cplx XFunction::operator()(cplx z) const {
  if (z.imag() == 0.0) {
    if (z.real() < 0.0) return at_negative(-z.real());
    throw DomainError("X is not defined on the cut [0, inf)");
  }
  auto f = [&](double s) { return theta_.tilde(s) / (s - z); };
  auto q = scaled(tol_, theta_scale(theta_.params()));
  const cplx I = integrate_semi_infinite(f, theta_.decay_exponent() + 1.0, q).value;
  return std::pow(-z, a_) * std::exp(I / pi);
}

double x_ratio(const ModelParams& p, const ClosedFormOptions& opt, double* err) {
  if (!is_half(p.h1()) || is_half(p.h2()))
    throw RegimeError("x_ratio requires h1 = 1/2 and h2 != 1/2");
  if (!(p.beta() > 0.0)) throw RegimeError("x_ratio requires beta > 0");
  const double b = p.beta();
  const ThetaBranch th(p);
  auto f = [&](double t) { return th.tilde(t) / ((t - b) * (t + b)); };
  auto q = scaled(opt.tol, std::max(b, theta_scale(p)));
  const auto pv = principal_value(f, b, th.decay_exponent() + 2.0, q);
  const double J = 2.0 * b / pi * pv.value;
  if (err) *err = 2.0 * b / pi * pv.abs_error_estimate;
  return std::exp(-J);
}

SteadyStateResult p_infinity_general(const ModelParams& p, const ClosedFormOptions& opt) {
  if (!(p.h1() < p.h2()) || same_hurst(p.h1(), p.h2()) || !(p.h2() > 0.5) || is_half(p.h2()))
    throw RegimeError("general formula requires h1 < h2 and h2 > 1/2");
  const double a1 = p.alpha1(), a2 = p.alpha2(), b = p.beta();
  const XFunction X(p, 1, 0.01 * opt.tol);
  const ThetaBranch& th = X.theta();
  const double a = X.exponent();
  const double k2 = kappa_alpha(a2);

  const double sc = theta_scale(p);
  const double lo = b != 0.0 ? std::min(sc, std::abs(b)) : sc;
  const double hi = std::max(sc, std::abs(b));
  const double u0 = std::log(lo) - 30.0, u1 = std::log(hi) + 45.0;
  const int panels = static_cast<int>(std::ceil((u1 - u0) / 1.5));

  const LogChebyshev C_tab([&](double t) { return X.cauchy_pv(t); }, u0, u1, panels, 20);
  auto C = [&](double t) { return C_tab.covers(t) ? C_tab(t) : X.cauchy_pv(t); };

  // g(s) = Im(N+/X+)(s) (s + beta).
  auto g = [&](double s) {
    return k2 * std::pow(s, a2 - 1.0 - a) * std::exp(-C(s)) * std::sin(th.tilde(s)) * (s + b);
  };
  const double g_decay = th.decay_exponent() + a - a2;
  auto hilbert = [&](double t) {
    auto f = [&](double s) { return g(s) / (s - t); };
    return principal_value(f, t, g_decay + 1.0, scaled(0.01 * opt.tol * std::min(1.0, sc / t), sc)).value / pi;
  };
  const LogChebyshev H_tab(hilbert, u0, u1, panels, 20);
  auto H = [&](double t) { return H_tab.covers(t) ? H_tab(t) : hilbert(t); };

  const double wconst = k2 / pi * std::sin(0.5 * pi * (1.0 - a2));
  auto integrand = [&](double t) -> cplx {
    const cplx L = lambda_boundary(t, p, Side::upper);
    const cplx Xp = std::polar(std::pow(t, a), -pi * a) * std::exp(cplx(C(t), th.tilde(t)));
    const cplx Q(H(t), g(t));
    const cplx N1 = n_alpha_boundary(t, a1, Side::upper);
    return wconst * std::pow(t, a2 - 1.0) * ((t - b) / p.mu_eps_sq() * Xp / L * Q - N1 / L);
  };
  // Slowest of theta~, the N1/Lambda term and X+ H / Lambda.
  const double decay = std::min({th.decay_exponent(), 3.0 - a1, 0.5 * (3.0 - a2)});
  const auto r = integrate_semi_infinite(integrand, decay, scaled(opt.tol, sc));

  SteadyStateResult out;
  out.method = Method::general;
  out.p_infinity = r.value.real();
  out.imag_residue = std::abs(r.value.imag());
  out.quad_error = r.abs_error_estimate;
  if (!(out.p_infinity > 0.0)) throw NumericalError("general formula returned a non-positive error");
  return out;
}

}  // namespace fracfilter
