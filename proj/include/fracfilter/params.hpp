#pragma once

#include <cmath>

namespace fracfilter {

// Tolerance used by every "is this exponent exactly 1/2 / are they equal" test.
inline constexpr double kRegimeTol = 1e-12;

inline bool is_half(double h) { return std::abs(h - 0.5) <= kRegimeTol; }
inline bool same_hurst(double a, double b) { return std::abs(a - b) <= kRegimeTol; }

// State dX = beta X dt + dW (Hurst h1), observation dY = mu X dt + sqrt(eps) dV (Hurst h2).
class ModelParams {
 public:
  // Throws DomainError unless 0 < h1,h2 < 1, mu != 0, eps > 0 and beta finite.
  ModelParams(double h1, double h2, double beta, double mu, double eps);

  double h1() const { return h1_; }
  double h2() const { return h2_; }
  double beta() const { return beta_; }
  double mu() const { return mu_; }
  double eps() const { return eps_; }

  double mu_eps() const { return mu_ / std::sqrt(eps_); }
  double mu_eps_sq() const { return mu_ * mu_ / eps_; }
  double alpha1() const { return 2.0 - 2.0 * h1_; }
  double alpha2() const { return 2.0 - 2.0 * h2_; }

  ModelParams with_beta(double b) const { return {h1_, h2_, b, mu_, eps_}; }
  ModelParams with_mu(double m) const { return {h1_, h2_, beta_, m, eps_}; }
  ModelParams with_eps(double e) const { return {h1_, h2_, beta_, mu_, e}; }

 private:
  double h1_, h2_, beta_, mu_, eps_;
};

}  // namespace fracfilter
