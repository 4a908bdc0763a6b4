#pragma once

#include <optional>
#include <string>

#include "fracfilter/params.hpp"
#include "fracfilter/structural.hpp"

namespace fracfilter {

enum class Method { classical, thm1, thm2, thm3, general, spectral };

const char* to_string(Method m);
// Throws DomainError for an unknown name.
Method method_from_string(const std::string& s);

struct SteadyStateResult {
  double p_infinity = 0.0;
  Method method = Method::classical;
  // Sum of quadrature error estimates that entered the value (0 for algebraic formulas).
  double quad_error = 0.0;
  // |Im| of the general-formula integral; 0 elsewhere.
  double imag_residue = 0.0;
  std::optional<StructuralZero> zero;
};

struct SmallNoiseLaw {
  double nu = 0.0;
  double constant = 0.0;
};

struct ClosedFormOptions {
  double tol = 1e-9;
};

double kalman_bucy_steady(double beta, double mu, double eps);

// P_T from dP/dt = 2 beta P + 1 - (mu^2/eps) P^2, P(0) = 0 (Dormand-Prince, rel tol 1e-10).
double riccati_error(double T, double beta, double mu, double eps);

SteadyStateResult p_infinity_classical(const ModelParams& p);
SteadyStateResult p_infinity_equal_hurst(const ModelParams& p);
SteadyStateResult p_infinity_white_obs(const ModelParams& p, const ClosedFormOptions& opt = {});
SteadyStateResult spectral_steady_state(const ModelParams& p, const ClosedFormOptions& opt = {});
SteadyStateResult p_infinity_white_state(const ModelParams& p, const ClosedFormOptions& opt = {});
SteadyStateResult p_infinity_general(const ModelParams& p, const ClosedFormOptions& opt = {});

// Bracket of the white-observation formula without the eps/mu^2 prefactor:
// (1/pi) int theta + beta + 2 Re z0 [h1 > 1/2].
double white_obs_bracket(const ModelParams& p, const ClosedFormOptions& opt = {}, double* err = nullptr);

// X(-beta)/X(beta) = exp(-J), J = (2 beta/pi) PV int (theta - theta(inf))/(t^2 - beta^2) dt.
// Requires h1 = 1/2, h2 != 1/2, beta > 0.
double x_ratio(const ModelParams& p, const ClosedFormOptions& opt = {}, double* err = nullptr);

SmallNoiseLaw small_noise_law(const ModelParams& p, const ClosedFormOptions& opt = {});

// Dispatcher: classical, thm1, thm2, thm3, general in that order of precedence.
SteadyStateResult p_infinity(const ModelParams& p, const ClosedFormOptions& opt = {});
// Forces one evaluator; RegimeError if the parameters are outside its domain.
SteadyStateResult p_infinity_with(Method m, const ModelParams& p, const ClosedFormOptions& opt = {});

// Canonical function X(z) = (-z)^{k - theta(inf)/pi} exp((1/pi) int theta~(s)/(s - z) ds)
// on the plane cut along (0, inf), theta~ = theta - theta(inf).
class XFunction {
 public:
  XFunction(const ModelParams& p, int k, double tol = 1e-11);

  // C(t) = (1/pi) PV int theta~(s)/(s - t) ds, t > 0.
  double cauchy_pv(double t) const;
  // Boundary values on the cut: X^+(t) = t^a e^{-i pi a} e^{C(t) + i theta~(t)}, X^- = conj.
  cplx boundary(double t, Side side) const;
  // X(-x) for x > 0 (real and positive).
  double at_negative(double x) const;
  // Off the cut.
  cplx operator()(cplx z) const;

  double exponent() const { return a_; }
  const ThetaBranch& theta() const { return theta_; }

 private:
  ThetaBranch theta_;
  double a_;
  double tol_;
};

}  // namespace fracfilter
