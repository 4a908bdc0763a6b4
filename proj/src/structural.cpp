#include "fracfilter/structural.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fracfilter/errors.hpp"

namespace fracfilter {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("alpha must lie in (0,2), got " + std::to_string(alpha));
}

bool is_one(double alpha) { return alpha == 1.0; }

// Wrap an angle difference into (-pi, pi].
double wrap(double a) {
  a = std::remainder(a, 2.0 * pi);
  return a == -pi ? pi : a;
}

}  // namespace

double kappa_h(double h) {
  if (!(h > 0.0 && h < 1.0)) throw DomainError("Hurst exponent must lie in (0,1), got " + std::to_string(h));
  return std::tgamma(2.0 * h + 1.0) * std::sin(pi * h);
}

double kappa_alpha(double alpha) {
  check_alpha(alpha);
  if (is_one(alpha)) throw DomainError("kappa_alpha is undefined at alpha = 1 (N_1 = 1)");
  return (1.0 - alpha) * (1.0 - 0.5 * alpha) * pi / (std::tgamma(alpha) * std::cos(0.5 * alpha * pi));
}

double kappa_alpha_or_one(double alpha) { return is_one(alpha) ? 1.0 : kappa_alpha(alpha); }

cplx n_alpha(cplx z, double alpha) {
  check_alpha(alpha);
  if (is_one(alpha)) return 1.0;
  if (z.imag() == 0.0) throw DomainError("n_alpha needs Im z != 0; use n_alpha_boundary on the axis");
  // z/i = (Im z, -Re z); -z/i = (-Im z, Re z).
  const cplx w = z.imag() > 0.0 ? cplx(z.imag(), -z.real()) : cplx(-z.imag(), z.real());
  return kappa_alpha(alpha) * std::pow(w, alpha - 1.0);
}

cplx n_alpha_boundary(double t, double alpha, Side side) {
  check_alpha(alpha);
  if (is_one(alpha)) return 1.0;
  if (t == 0.0) throw DomainError("n_alpha_boundary needs t != 0");
  // Upper side: z/i -> -i t, argument -pi/2 sign(t). Lower side mirrors it.
  double phase = (t > 0.0 ? -0.5 : 0.5) * pi * (alpha - 1.0);
  if (side == Side::lower) phase = -phase;
  return std::polar(kappa_alpha(alpha) * std::pow(std::abs(t), alpha - 1.0), phase);
}

cplx n_alpha_derivative(cplx z, double alpha) {
  if (is_one(alpha)) return 0.0;
  return (alpha - 1.0) * n_alpha(z, alpha) / z;
}

cplx lambda_fn(cplx z, const ModelParams& p) {
  const double b2 = p.beta() * p.beta();
  return (z * z - b2) * n_alpha(z, p.alpha2()) - p.mu_eps_sq() * n_alpha(z, p.alpha1());
}

cplx lambda_boundary(double t, const ModelParams& p, Side side) {
  const double b2 = p.beta() * p.beta();
  return (t * t - b2) * n_alpha_boundary(t, p.alpha2(), side) - p.mu_eps_sq() * n_alpha_boundary(t, p.alpha1(), side);
}

cplx lambda_derivative(cplx z, const ModelParams& p) {
  const double b2 = p.beta() * p.beta();
  return 2.0 * z * n_alpha(z, p.alpha2()) + (z * z - b2) * n_alpha_derivative(z, p.alpha2()) -
         p.mu_eps_sq() * n_alpha_derivative(z, p.alpha1());
}

cplx lambda_hurst_form(cplx z, const ModelParams& p) {
  if (z.imag() == 0.0) throw DomainError("lambda_hurst_form needs Im z != 0");
  const cplx w = z.imag() > 0.0 ? z / I : -z / I;
  const double b2 = p.beta() * p.beta();
  auto term = [&](double h) { return kappa_h(h) * std::pow(w, 1.0 - 2.0 * h); };
  return (z * z - b2) * term(p.h2()) - p.mu_eps_sq() * term(p.h1());
}

const char* to_string(StructuralZero::Kind k) {
  switch (k) {
    case StructuralZero::Kind::none: return "none";
    case StructuralZero::Kind::real_pair: return "real_pair";
    case StructuralZero::Kind::complex_quadruple: return "complex_quadruple";
  }
  return "?";
}

StructuralZero find_zero(const ModelParams& p) {
  StructuralZero out;
  const double b2 = p.beta() * p.beta();
  if (same_hurst(p.h1(), p.h2())) {
    out.kind = StructuralZero::Kind::real_pair;
    const double t0 = std::sqrt(b2 + p.mu_eps_sq());
    out.z0 = t0;
    out.residual = std::abs(t0 * t0 - b2 - p.mu_eps_sq()) / (t0 * t0);
    return out;
  }
  if (p.h1() < p.h2()) return out;

  // h1 > h2: with z = rho e^{i(pi/2 - s)} and d = a2 - a1 in (0,2),
  //   rho^{2+d} = A sin(s d) / sin(2 s),   A = mu_eps^2 k1 / k2,
  //   sin(s d)^{-d/(2+d)} sin(2 s)^{-2/(2+d)} sin(s (2+d)) = -beta^2 A^{-2/(2+d)}.
  // The left side decreases from a positive limit at 0 to -inf at pi/2.
  const double d = p.alpha2() - p.alpha1();
  const double A = p.mu_eps_sq() * kappa_alpha_or_one(p.alpha1()) / kappa_alpha_or_one(p.alpha2());
  const double rhs = -b2 * std::pow(A, -2.0 / (2.0 + d));
  auto lhs = [&](double s) {
    return std::pow(std::sin(s * d), -d / (2.0 + d)) * std::pow(std::sin(2.0 * s), -2.0 / (2.0 + d)) *
           std::sin(s * (2.0 + d));
  };
  double lo = 0.0, hi = 0.5 * pi;
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    (lhs(mid) > rhs ? lo : hi) = mid;
  }
  const double s = 0.5 * (lo + hi);
  if (!(s > 0.0 && s < 0.5 * pi)) throw NumericalError("zero angle bracket collapsed");
  const double rho = std::pow(A * std::sin(s * d) / std::sin(2.0 * s), 1.0 / (2.0 + d));
  cplx z = std::polar(rho, 0.5 * pi - s);

  // Damped Newton on Lambda.
  auto scale = [&](cplx w) { return std::norm(w) * std::abs(n_alpha(w, p.alpha2())); };
  double res = std::abs(lambda_fn(z, p)) / scale(z);
  for (int it = 0; it < 50 && res > 1e-15; ++it) {
    const cplx step = lambda_fn(z, p) / lambda_derivative(z, p);
    double damp = 1.0;
    bool improved = false;
    for (int k = 0; k < 30; ++k, damp *= 0.5) {
      const cplx cand = z - damp * step;
      if (cand.imag() <= 0.0 || cand.real() <= 0.0) continue;
      const double r = std::abs(lambda_fn(cand, p)) / scale(cand);
      if (r < res) {
        z = cand;
        res = r;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  if (!(res < 1e-10)) throw NumericalError("zero of Lambda not resolved, residual " + std::to_string(res), res);
  out.kind = StructuralZero::Kind::complex_quadruple;
  out.z0 = z;
  out.residual = res;
  return out;
}

ThetaBranch::ThetaBranch(const ModelParams& p) : p_(p) {
  if (same_hurst(p.h1(), p.h2()))
    throw RegimeError("theta branch undefined for h1 = h2: Lambda+ vanishes at t0 on the contour");
  const double a1 = p.alpha1(), a2 = p.alpha2();
  ratio_ = p.mu_eps_sq() * kappa_alpha_or_one(a1) / kappa_alpha_or_one(a2);
  delta_ = a1 - a2;
  infinity_ = 0.5 * (1.0 - a2) * pi;
  decay_ = 2.0 - delta_;

  // Leading small-t term of the reduced quotient decides theta(0+).
  if (delta_ > 0.0) {
    zero_plus_ = infinity_ + (p.beta() != 0.0 ? pi : pi * (1.0 - 0.5 * delta_));
  } else {
    zero_plus_ = 0.5 * (1.0 - a1) * pi - pi;
  }

  // Cross-check against phase unwrapping across the scales where theta moves.
  const double tc = std::pow(ratio_, 1.0 / (2.0 - delta_));
  const double lo = 1e-4 * std::min(tc, p.beta() != 0.0 ? std::abs(p.beta()) : tc);
  const double hi = 1e4 * std::max(tc, std::abs(p.beta()));
  std::vector<double> ts;
  for (int k = 0; k <= 64; ++k) ts.push_back(lo * std::pow(hi / lo, k / 64.0));
  const auto unwrapped = theta_by_unwrapping(p, ts);
  for (std::size_t k = 0; k < ts.size(); ++k)
    unwrap_dev_ = std::max(unwrap_dev_, std::abs(unwrapped[k] - (*this)(ts[k])));
  if (unwrap_dev_ > 1e-8)
    throw NumericalError("theta closed form disagrees with phase unwrapping by " + std::to_string(unwrap_dev_),
                         unwrap_dev_);
}

cplx ThetaBranch::reduced(double t) const {
  const double b = p_.beta();
  return (t - b) * (t + b) - ratio_ * std::polar(std::pow(t, delta_), -0.5 * pi * delta_);
}

double ThetaBranch::tilde(double t) const {
  if (!(t > 0.0)) throw DomainError("theta is defined for t > 0");
  return std::arg(reduced(t));
}

double ThetaBranch::operator()(double t) const { return infinity_ + tilde(t); }

ThetaBranch theta_branch(const ModelParams& p) { return ThetaBranch(p); }

std::vector<double> theta_by_unwrapping(const ModelParams& p, const std::vector<double>& ts) {
  if (ts.empty()) return {};
  if (!std::is_sorted(ts.begin(), ts.end()) || !(ts.front() > 0.0))
    throw DomainError("sample points must be positive and increasing");
  const double a1 = p.alpha1(), a2 = p.alpha2();
  const double theta_inf = 0.5 * (1.0 - a2) * pi;
  const double ratio = p.mu_eps_sq() * kappa_alpha_or_one(a1) / kappa_alpha_or_one(a2);
  const double expo = 2.0 - (a1 - a2);

  // Anchor far enough out that theta - theta(inf) < 1e-13.
  double t = std::max({2.0 * ts.back(), 10.0 * std::abs(p.beta()), std::pow(1e13 * ratio, 1.0 / expo)});
  auto raw = [&](double x) { return std::arg(lambda_boundary(x, p, Side::upper)); };
  double prev_raw = raw(t);
  double theta = theta_inf + wrap(prev_raw - theta_inf);

  std::vector<double> out(ts.size());
  const double base_step = std::log(1.05);
  for (std::size_t k = ts.size(); k-- > 0;) {
    const double target = ts[k];
    while (t > target) {
      double step = std::min(base_step, std::log(t / target));
      for (;;) {
        const double next = (step >= std::log(t / target)) ? target : t * std::exp(-step);
        const double r = raw(next);
        const double jump = wrap(r - prev_raw);
        if (std::abs(jump) < 0.25 * pi || step < 1e-14) {
          if (std::abs(jump) >= 0.5 * pi)
            throw NumericalError("theta unwrap failure near t=" + std::to_string(next));
          theta += jump;
          prev_raw = r;
          t = next;
          break;
        }
        step *= 0.5;
      }
    }
    out[k] = theta;
  }
  return out;
}

}  // namespace fracfilter
