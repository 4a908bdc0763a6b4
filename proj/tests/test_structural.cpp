#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fracfilter/errors.hpp"
#include "fracfilter/structural.hpp"

using namespace fracfilter;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

TEST_CASE("kappa values") {
  CHECK(kappa_h(0.5) == Approx(1.0).epsilon(1e-15));
  CHECK(kappa_h(0.75) == Approx(0.9399856).epsilon(1e-7));
  CHECK(kappa_alpha(0.5) == Approx(kappa_h(0.75)).epsilon(1e-13));
  CHECK(kappa_alpha(1.5) == Approx(0.6267).epsilon(1e-4));
  CHECK(kappa_alpha_or_one(1.0) == 1.0);
  for (double h = 0.1; h < 0.95; h += 0.1) {
    if (std::abs(h - 0.5) < 1e-9) continue;
    CHECK(kappa_alpha(2.0 - 2.0 * h) == Approx(kappa_h(h)).epsilon(1e-12));
  }
}

TEST_CASE("N_alpha symmetries") {
  const double a = 0.6;
  for (double t : {0.1, 1.0, 7.0}) {
    const cplx up = n_alpha_boundary(t, a, Side::upper), lo = n_alpha_boundary(t, a, Side::lower);
    CHECK(std::abs(up - std::conj(lo)) < 1e-14 * std::abs(up));
    CHECK(std::abs(up - n_alpha_boundary(-t, a, Side::lower)) < 1e-14 * std::abs(up));
  }
  CHECK(std::abs(n_alpha(cplx(0.0, 1.0), 0.5) - kappa_alpha(0.5)) < 1e-14);
  CHECK(std::abs(n_alpha(cplx(2.0, -3.0), 1.0) - 1.0) < 1e-15);
}

TEST_CASE("N_alpha derivative by finite differences") {
  const cplx z(0.7, 1.3), h(1e-6, 0.0);
  const cplx fd = (n_alpha(z + h, 0.4) - n_alpha(z - h, 0.4)) / (2.0 * h);
  CHECK(std::abs(fd - n_alpha_derivative(z, 0.4)) < 1e-8);
}

TEST_CASE("Lambda special cases") {
  // Equal exponents: Lambda/N = z^2 - beta^2 - mu_eps^2.
  const ModelParams p(0.7, 0.7, 3.0, 4.0, 1.0);
  const cplx z(0.4, 2.2);
  CHECK(std::abs(lambda_fn(z, p) / n_alpha(z, p.alpha2()) - (z * z - 9.0 - 16.0)) < 1e-12);
  // White observation on the imaginary axis is real and negative.
  const ModelParams q(0.3, 0.5, 1.5, 2.0, 1.0);
  for (double t : {0.2, 1.0, 5.0}) {
    const cplx L = lambda_fn(cplx(0.0, t), q);
    CHECK(std::abs(L.imag()) < 1e-12 * std::abs(L));
    CHECK(L.real() == Approx(-(t * t + 2.25 + 4.0 * kappa_h(0.3) * std::pow(t, 0.4))).epsilon(1e-12));
  }
}

TEST_CASE("Lambda forms agree and conjugate") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0), h(0.05, 0.95);
  for (int k = 0; k < 10; ++k) {
    const ModelParams p(h(rng), h(rng), u(rng), 1.5, 0.8);
    const cplx z(u(rng), u(rng));
    CHECK(std::abs(lambda_fn(z, p) - lambda_hurst_form(z, p)) <= 1e-13 * std::abs(lambda_fn(z, p)));
    CHECK(std::abs(lambda_fn(std::conj(z), p) - std::conj(lambda_fn(z, p))) <= 1e-13 * std::abs(lambda_fn(z, p)));
  }
}

TEST_CASE("zero configurations") {
  auto eq = find_zero(ModelParams(0.7, 0.7, 3.0, 4.0, 1.0));
  CHECK(eq.kind == StructuralZero::Kind::real_pair);
  CHECK(eq.z0.real() == Approx(5.0).epsilon(1e-14));
  CHECK(find_zero(ModelParams(0.3, 0.7, -0.5, 1.0, 1.0)).kind == StructuralZero::Kind::none);

  auto z = find_zero(ModelParams(0.75, 0.5, 0.0, 1.0, 1.0));
  REQUIRE(z.kind == StructuralZero::Kind::complex_quadruple);
  CHECK(std::abs(z.z0) == Approx(0.97555).epsilon(1e-5));
  CHECK(std::arg(z.z0) == Approx(pi / 10).epsilon(1e-12));
  CHECK(z.residual < 1e-10);
  CHECK(std::string(to_string(z.kind)) == "complex_quadruple");
}

TEST_CASE("zero residual across h1 > h2") {
  for (const ModelParams& p : {ModelParams(0.5, 0.3, 0.5, 1.0, 1.0), ModelParams(0.9, 0.1, 3.0, 0.5, 2.0),
                               ModelParams(0.6, 0.55, -0.2, 5.0, 0.1), ModelParams(0.75, 0.5, -1.0, 1.0, 1.0)}) {
    const auto z = find_zero(p);
    REQUIRE(z.kind == StructuralZero::Kind::complex_quadruple);
    CHECK(z.z0.real() > 0.0);
    CHECK(z.z0.imag() > 0.0);
    CHECK(z.residual < 1e-10);
  }
}

TEST_CASE("theta boundary values") {
  const ThetaBranch a(ModelParams(0.75, 0.5, -1.0, 1.0, 1.0));
  CHECK(a.theta_infinity() == Approx(0.0));
  CHECK(std::abs(a(1e12)) < 1e-6);

  const ThetaBranch b(ModelParams(0.5, 0.75, 1.0, 1.0, 1.0));
  CHECK(b.theta_infinity() == Approx(pi / 4).epsilon(1e-15));
  CHECK(b.theta_zero_plus() == Approx(pi / 4 + pi).epsilon(1e-15));
  CHECK(b(1.0) == Approx(pi).epsilon(1e-12));
  CHECK(b(1e-30) == Approx(b.theta_zero_plus()).epsilon(1e-6));
  CHECK(b.tilde(1e30) == Approx(0.0).scale(1.0).epsilon(1e-6));
}

TEST_CASE("theta matches the phase of Lambda") {
  const ModelParams p(0.3, 0.7, -0.5, 1.0, 1.0);
  const ThetaBranch th(p);
  for (double t = 1e-5; t < 1e5; t *= 3.7) {
    const cplx L = lambda_boundary(t, p, Side::upper);
    CHECK(std::abs(std::polar(1.0, th(t)) - L / std::abs(L)) < 1e-10);
  }
  const std::vector<double> ts = {1e-3, 0.1, 1.0, 10.0, 1e3};
  const auto un = theta_by_unwrapping(p, ts);
  for (std::size_t i = 0; i < ts.size(); ++i) CHECK(un[i] == Approx(th(ts[i])).epsilon(1e-8));
}

TEST_CASE("theta regime guard") {
  CHECK_THROWS_AS(ThetaBranch(ModelParams(0.6, 0.6, -1.0, 1.0, 1.0)), RegimeError);
  CHECK_THROWS_AS(ThetaBranch(ModelParams(0.6, 0.4, -1.0, 1.0, 1.0)).tilde(0.0), DomainError);
}
