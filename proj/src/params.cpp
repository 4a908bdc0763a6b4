#include "fracfilter/params.hpp"

#include <string>

#include "fracfilter/errors.hpp"

namespace fracfilter {

ModelParams::ModelParams(double h1, double h2, double beta, double mu, double eps)
    : h1_(h1), h2_(h2), beta_(beta), mu_(mu), eps_(eps) {
  if (!(h1 > 0.0 && h1 < 1.0)) throw DomainError("h1 must lie in (0,1), got " + std::to_string(h1));
  if (!(h2 > 0.0 && h2 < 1.0)) throw DomainError("h2 must lie in (0,1), got " + std::to_string(h2));
  if (!std::isfinite(beta)) throw DomainError("beta must be finite");
  if (!(mu != 0.0) || !std::isfinite(mu)) throw DomainError("mu must be finite and nonzero");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("eps must be positive");
}

}  // namespace fracfilter
