#pragma once

#include <complex>
#include <vector>

#include "fracfilter/params.hpp"

namespace fracfilter {

using cplx = std::complex<double>;

// Which side of the real axis a boundary value is taken from.
enum class Side { upper, lower };

double kappa_h(double h);
// Throws DomainError at alpha = 1, where N_1 = 1 identically.
double kappa_alpha(double alpha);

// kappa_alpha, extended by its limit 1 at alpha = 1 (exactly).
double kappa_alpha_or_one(double alpha);

// N_alpha(z) = kappa_alpha (z/i)^{alpha-1} for Im z > 0 and kappa_alpha (-z/i)^{alpha-1} below.
// Im z must be nonzero.
cplx n_alpha(cplx z, double alpha);
// Boundary value N_alpha^{+/-}(t) on the real axis, t != 0.
cplx n_alpha_boundary(double t, double alpha, Side side);
// Derivative dN_alpha/dz off the axis.
cplx n_alpha_derivative(cplx z, double alpha);

// Lambda(z) = (z^2 - beta^2) N_{alpha2}(z) - mu_eps^2 N_{alpha1}(z).
cplx lambda_fn(cplx z, const ModelParams& p);
cplx lambda_boundary(double t, const ModelParams& p, Side side);
cplx lambda_derivative(cplx z, const ModelParams& p);
// Same function written with kappa(H) and (z/i)^{1-2H}; used to cross-check lambda_fn.
cplx lambda_hurst_form(cplx z, const ModelParams& p);

struct StructuralZero {
  enum class Kind { none, real_pair, complex_quadruple };
  Kind kind = Kind::none;
  cplx z0{};
  // |Lambda(z0)| / (|z0|^2 |N_{alpha2}(z0)|).
  double residual = 0.0;
};

const char* to_string(StructuralZero::Kind k);

// Zero of Lambda in the closed first quadrant. For h1 > h2 the polar angle
// solves a monotone scalar equation (bisection) and the point is then
// polished by damped Newton on Lambda itself.
StructuralZero find_zero(const ModelParams& p);

// Continuous argument of Lambda^+(t) on (0, inf), h1 != h2.
//
// Lambda^+ / N_{alpha2}^+ = t^2 - beta^2 - mu_eps^2 (k1/k2) t^{a1-a2} e^{-i pi (a1-a2)/2}
// has an imaginary part of fixed sign, so its principal argument is already
// continuous and theta(t) = (1-a2) pi/2 + Arg of that quotient. Construction
// also tracks arg Lambda^+ by unwrapping along a log walk and checks the two
// agree.
class ThetaBranch {
 public:
  explicit ThetaBranch(const ModelParams& p);

  double operator()(double t) const;
  // theta(t) - theta(inf), computed without cancellation.
  double tilde(double t) const;

  double theta_zero_plus() const { return zero_plus_; }
  double theta_infinity() const { return infinity_; }
  double decay_exponent() const { return decay_; }
  // Largest |unwrapped - closed form| seen by the construction-time check.
  double unwrap_deviation() const { return unwrap_dev_; }
  const ModelParams& params() const { return p_; }

 private:
  cplx reduced(double t) const;

  ModelParams p_;
  double ratio_;  // mu_eps^2 k1 / k2
  double delta_;  // a1 - a2
  double zero_plus_ = 0.0, infinity_ = 0.0, decay_ = 0.0, unwrap_dev_ = 0.0;
};

ThetaBranch theta_branch(const ModelParams& p);

// arg Lambda^+(t) at increasing sample points ts, obtained by phase
// unwrapping inward from a large anchor where theta is within 1e-12 of
// theta(inf). Throws NumericalError if a step still jumps by pi/2 or more
// after maximal refinement.
std::vector<double> theta_by_unwrapping(const ModelParams& p, const std::vector<double>& ts);

}  // namespace fracfilter
