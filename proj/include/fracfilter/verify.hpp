#pragma once

#include <string>
#include <vector>

namespace fracfilter {

struct Check {
  std::string name;
  double measured = 0.0;
  double allowed = 0.0;
  bool pass = false;
};

// Named invariant suites: "kernels", "structural", "closedform", "oracle", or
// "all". Allowed deviations are multiplied by tol_scale. Throws DomainError
// for an unknown suite name.
std::vector<Check> run_suite(const std::string& suite, double tol_scale = 1.0);

// Individual checks that both the suites and the acceptance binary use.
namespace checks {

// max over H in {0.1..0.9}\{0.5} of |kappa_alpha(2-2H)/kappa_h(H) - 1|.
double kappa_identity();
// Largest deviation of theta(0+) and theta(inf) from theta evaluated at
// extreme t, over the covered regimes.
double theta_limit_deviation();
// |theta(beta) - pi| at h1 = 1/2, h2 = 0.75, beta = 1.
double theta_at_beta_deviation();
// Largest normalized residual of the first-quadrant zero over several h1 > h2 cases.
double zero_residual();
// Relative gap between X(beta) X(-beta), each evaluated directly, and
// mu_eps^2 / kappa(h2) / |beta^2 - z0^2|^{2[h2 < 1/2]}.
double x_identity_gap(double h2, double beta);
// (1/beta) log x_ratio at the given beta and its predicted beta -> 0 limit.
// With zero_corrected, 4 Re(z0)/|z0|^2 is added for h2 < 1/2.
struct LimbetaValue {
  double value;
  double limit;
};
LimbetaValue limbeta(double h2, double beta, bool zero_corrected);

}  // namespace checks

}  // namespace fracfilter
