#pragma once

// Adaptive Gauss-Kronrod integration on finite panels, semi-infinite
// integrals with geometric panelling and a fitted tail, and Cauchy principal
// values by symmetric pairing. Integrands may return double or
// std::complex<double>.

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <type_traits>
#include <vector>

#include "fracfilter/errors.hpp"

namespace fracfilter {

template <typename T>
struct QuadratureResult {
  T value{};
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;

  QuadratureResult& operator+=(const QuadratureResult& o) {
    value += o.value;
    abs_error_estimate += o.abs_error_estimate;
    evaluations += o.evaluations;
    return *this;
  }
};

struct QuadratureOptions {
  double abs_tol = 1e-9;
  double rel_tol = 0.0;
  std::size_t max_evaluations = 2'000'000;
  // Semi-infinite integrals: maximum number of dyadic panels on each side.
  std::size_t max_panels = 400;
  // Split point between the head (0, split] and the tail [split, inf).
  double split = 1.0;
  // If set, f(t) ~ t^{-s} at 0 with 0 <= s < 1 is declared by the caller and
  // the head tail ratio is fixed to 2^{s-1} instead of fitted.
  std::optional<double> head_singularity;
  // Principal values: half-width of the paired window relative to the pole.
  double pv_half_width = 0.5;
};

namespace detail {

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& z) { return std::abs(z); }
inline bool finite(double x) { return std::isfinite(x); }
inline bool finite(const std::complex<double>& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

template <typename F>
using value_of = std::decay_t<std::invoke_result_t<F&, double>>;

template <typename T>
struct Panel {
  double a, b;
  T value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

// One 15-point Kronrod panel with the QUADPACK error heuristic.
template <typename T, typename F>
Panel<T> gk15(F& f, double a, double b) {
  using boost::math::quadrature::gauss;
  using boost::math::quadrature::gauss_kronrod;
  const auto& x = gauss_kronrod<double, 15>::abscissa();
  const auto& wk = gauss_kronrod<double, 15>::weights();
  const auto& wg = gauss<double, 7>::weights();

  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  T fv[15];
  fv[0] = f(c);
  for (int i = 1; i < 8; ++i) {
    fv[2 * i - 1] = f(c - h * x[i]);
    fv[2 * i] = f(c + h * x[i]);
  }
  for (const auto& v : fv)
    if (!finite(v)) throw NumericalError("non-finite integrand value near t=" + std::to_string(c));

  T rk = wk[0] * fv[0], rg = wg[0] * fv[0];
  double rabs = wk[0] * magnitude(fv[0]);
  for (int i = 1; i < 8; ++i) {
    const T s = fv[2 * i - 1] + fv[2 * i];
    rk += wk[i] * s;
    rabs += wk[i] * (magnitude(fv[2 * i - 1]) + magnitude(fv[2 * i]));
    if (i % 2 == 0) rg += wg[i / 2] * s;
  }
  const T mean = 0.5 * rk;
  double rasc = wk[0] * magnitude(fv[0] - mean);
  for (int i = 1; i < 8; ++i)
    rasc += wk[i] * (magnitude(fv[2 * i - 1] - mean) + magnitude(fv[2 * i] - mean));

  const double ah = std::abs(h);
  double err = magnitude(rk - rg) * ah;
  rasc *= ah;
  rabs *= ah;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (rasc != 0.0 && err != 0.0) err = rasc * std::min(1.0, std::pow(200.0 * err / rasc, 1.5));
  if (rabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * rabs, err);
  return {a, b, T(rk * h), err};
}

}  // namespace detail

// Globally adaptive GK15 on [a, b]: the panel with the largest error is
// bisected until the summed estimate meets max(abs_tol, rel_tol*|value|).
template <typename F>
QuadratureResult<detail::value_of<F>> integrate(F&& f, double a, double b,
                                                const QuadratureOptions& opt = {}) {
  using T = detail::value_of<F>;
  QuadratureResult<T> out;
  if (a == b) return out;
  std::priority_queue<detail::Panel<T>> heap;
  heap.push(detail::gk15<T>(f, a, b));
  out.evaluations = 15;
  T total = heap.top().value;
  double err = heap.top().error;

  auto target = [&] { return std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(total)); };
  while (err > target()) {
    if (out.evaluations + 30 > opt.max_evaluations)
      throw NumericalError("quadrature budget exhausted on [" + std::to_string(a) + ", " +
                               std::to_string(b) + "]",
                           err);
    auto worst = heap.top();
    heap.pop();
    const double m = 0.5 * (worst.a + worst.b);
    if (!(m > std::min(worst.a, worst.b) && m < std::max(worst.a, worst.b)))
      throw NumericalError("quadrature panel collapsed near t=" + std::to_string(m), err);
    auto left = detail::gk15<T>(f, worst.a, m);
    auto right = detail::gk15<T>(f, m, worst.b);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from the panels so the result does not carry update drift.
  out.value = T{};
  out.abs_error_estimate = 0.0;
  std::vector<detail::Panel<T>> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const auto& p, const auto& q) { return p.a < q.a; });
  for (const auto& p : panels) {
    out.value += p.value;
    out.abs_error_estimate += p.error;
  }
  return out;
}

// Integral over (0, b]. Dyadic panels [b/2^{k+1}, b/2^k] are added until the
// geometric model of the remaining head, fitted from consecutive panels,
// agrees with what the next panel actually delivered.
template <typename F>
QuadratureResult<detail::value_of<F>> integrate_from_zero(F&& f, double b,
                                                          const QuadratureOptions& opt = {}) {
  using T = detail::value_of<F>;
  if (!(b > 0.0)) throw DomainError("integrate_from_zero needs b > 0");
  QuadratureOptions panel_opt = opt;
  panel_opt.abs_tol = opt.abs_tol / 32.0;

  QuadratureResult<T> out;
  T prev{};
  std::optional<T> prev_rest;  // predicted remainder after the previous panel
  double hi = b;
  for (std::size_t k = 0; k < opt.max_panels; ++k) {
    const double lo = 0.5 * hi;
    auto piece = integrate(f, lo, hi, panel_opt);
    out += piece;
    const T v = piece.value;

    std::optional<T> rest;
    if (opt.head_singularity) {
      const double r = std::pow(2.0, *opt.head_singularity - 1.0);
      rest = v * (r / (1.0 - r));
    } else if (k > 0 && detail::magnitude(prev) > 0.0) {
      const T r = v / prev;
      if (detail::magnitude(r) < 0.95) rest = v * (r / (T(1.0) - r));
    } else if (k > 0 && detail::magnitude(v) == 0.0) {
      rest = T{};
    }

    if (rest && prev_rest) {
      const double model_err = detail::magnitude(*prev_rest - (v + *rest));
      if (model_err <= 0.25 * opt.abs_tol) {
        out.value += *rest;
        out.abs_error_estimate += model_err;
        return out;
      }
    }
    prev = v;
    prev_rest = rest;
    hi = lo;
    if (hi < std::numeric_limits<double>::min() * 1e10) break;
  }
  throw NumericalError("head of semi-infinite integral did not converge", out.abs_error_estimate);
}

// Integral over [a, inf) for |f| = O(t^{-p}), p > 1 (p = infinity allowed).
// Dyadic panels outward; the remainder after the last panel is modelled as a
// geometric series with ratio 2^{1-p}, equivalent to C*T^{1-p}/(p-1) with C
// fitted on the last panel. Stops when consecutive remainder predictions agree.
template <typename F>
QuadratureResult<detail::value_of<F>> integrate_to_infinity(F&& f, double a, double decay_exponent,
                                                            const QuadratureOptions& opt = {}) {
  using T = detail::value_of<F>;
  if (!(a > 0.0)) throw DomainError("integrate_to_infinity needs a > 0");
  if (!(decay_exponent > 1.0)) throw DomainError("decay exponent must exceed 1");
  const double r = std::isinf(decay_exponent) ? 0.0 : std::pow(2.0, 1.0 - decay_exponent);
  QuadratureOptions panel_opt = opt;
  panel_opt.abs_tol = opt.abs_tol / 32.0;

  QuadratureResult<T> out;
  std::optional<T> prev_rest;
  // Tail-corrected totals; a slower subleading power leaves them converging
  // geometrically with an unknown ratio, which Aitken's delta^2 removes.
  std::vector<T> totals;
  // A plain flag rather than optional<T>: gcc misreports the latter as uninitialized.
  T prev_aitken{};
  bool have_aitken = false;
  double prev_rho = 2.0;
  double lo = a;
  for (std::size_t k = 0; k < opt.max_panels; ++k) {
    const double hi = 2.0 * lo;
    auto piece = integrate(f, lo, hi, panel_opt);
    out += piece;
    const T rest = piece.value * (r / (1.0 - r));
    if (prev_rest) {
      const double model_err = detail::magnitude(*prev_rest - (piece.value + rest));
      if (model_err <= 0.25 * opt.abs_tol) {
        out.value += rest;
        out.abs_error_estimate += model_err;
        return out;
      }
    }
    totals.push_back(out.value + rest);
    const std::size_t m = totals.size();
    if (m >= 3) {
      const T d1 = totals[m - 2] - totals[m - 3], d2 = totals[m - 1] - totals[m - 2];
      const double n1 = detail::magnitude(d1), n2 = detail::magnitude(d2);
      // Only trust the extrapolation while the differences dominate panel noise.
      if (n1 > 0.0 && n2 > 64.0 * piece.abs_error_estimate) {
        const T rho_c = d2 / d1;
        const double rho = detail::magnitude(rho_c);
        if (rho < 0.95 && std::abs(rho - prev_rho) < 0.05 * rho) {
          const T acc = totals[m - 1] + d2 * (rho_c / (T(1.0) - rho_c));
          if (have_aitken) {
            const double acc_err = detail::magnitude(acc - prev_aitken);
            if (acc_err <= 0.25 * opt.abs_tol) {
              out.value = acc;
              out.abs_error_estimate += acc_err;
              return out;
            }
          }
          prev_aitken = acc;
          have_aitken = true;
        } else {
          have_aitken = false;
        }
        prev_rho = rho;
      }
    }
    prev_rest = rest;
    lo = hi;
    if (!std::isfinite(lo)) break;
  }
  throw NumericalError("tail of semi-infinite integral did not converge", out.abs_error_estimate);
}

// Integral over (0, inf): head (0, split] plus tail [split, inf).
template <typename F>
QuadratureResult<detail::value_of<F>> integrate_semi_infinite(F&& f, double decay_exponent,
                                                              const QuadratureOptions& opt = {}) {
  QuadratureOptions half = opt;
  half.abs_tol = 0.5 * opt.abs_tol;
  auto out = integrate_from_zero(f, opt.split, half);
  out += integrate_to_infinity(f, opt.split, decay_exponent, half);
  return out;
}

// PV of the integral over (0, inf) of f, where f has a simple pole at `pole`.
// On [pole - d, pole + d], d = pv_half_width * pole, the pole cancels in
// f(pole+u) + f(pole-u); the rest is ordinary.
template <typename F>
QuadratureResult<detail::value_of<F>> principal_value(F&& f, double pole, double decay_exponent,
                                                      const QuadratureOptions& opt = {}) {
  if (!(pole > 0.0) || !std::isfinite(pole)) throw DomainError("principal value pole must lie inside (0, inf)");
  if (!(opt.pv_half_width > 0.0 && opt.pv_half_width < 1.0))
    throw DomainError("pv_half_width must lie in (0,1)");
  const double d = opt.pv_half_width * pole;
  QuadratureOptions third = opt;
  third.abs_tol = opt.abs_tol / 3.0;
  auto out = integrate([&](double u) { return f(pole + u) + f(pole - u); }, 0.0, d, third);
  out += integrate_from_zero(f, pole - d, third);
  out += integrate_to_infinity(f, pole + d, decay_exponent, third);
  return out;
}

}  // namespace fracfilter
