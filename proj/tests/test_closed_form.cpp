#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracfilter/closed_form.hpp"
#include "fracfilter/errors.hpp"
#include "fracfilter/verify.hpp"

using namespace fracfilter;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

TEST_CASE("Kalman-Bucy steady state") {
  CHECK(kalman_bucy_steady(0.0, 1.0, 1.0) == 1.0);
  CHECK(kalman_bucy_steady(-3.0, 4.0, 1.0) == 0.125);
  const double e = 1e-8;
  CHECK(kalman_bucy_steady(-1.0, 2.0, e) / (std::sqrt(e) / 2.0) == Approx(1.0).epsilon(1e-3));
}

TEST_CASE("Riccati solution") {
  CHECK(riccati_error(0.0, -1.0, 1.0, 1.0) == 0.0);
  CHECK(riccati_error(10.0, -3.0, 4.0, 1.0) == Approx(0.125).epsilon(1e-8));
  for (double T : {0.3, 1.0, 2.5}) CHECK(riccati_error(T, 0.0, 1.0, 1.0) == Approx(std::tanh(T)).epsilon(1e-9));
}

TEST_CASE("equal-Hurst formula") {
  CHECK(p_infinity_equal_hurst(ModelParams(0.5, 0.5, -3.0, 4.0, 1.0)).p_infinity == Approx(0.125).epsilon(1e-12));
  CHECK(p_infinity_equal_hurst(ModelParams(0.7, 0.7, -1.0, 1.0, 1.0)).p_infinity == Approx(0.435391).epsilon(1e-5));
  CHECK(p_infinity_equal_hurst(ModelParams(0.7, 0.7, -1.0, 1e-6, 1.0)).p_infinity ==
        Approx(std::tgamma(2.4) / 2.0).epsilon(1e-4));
  CHECK_THROWS_AS(p_infinity_equal_hurst(ModelParams(0.7, 0.6, -1.0, 1.0, 1.0)), RegimeError);
}

TEST_CASE("white-observation formula") {
  const double frozen[][3] = {{0.3, -0.5, 0.554681735}, {0.3, -2.0, 0.2861538},
                              {0.75, -0.5, 0.62929321}, {0.75, -2.0, 0.19634543}};
  for (const auto& f : frozen) {
    const ModelParams p(f[0], 0.5, f[1], 1.0, 1.0);
    const double a = p_infinity_white_obs(p).p_infinity;
    CHECK(a == Approx(f[2]).epsilon(1e-6));
    CHECK(a == Approx(spectral_steady_state(p).p_infinity).epsilon(1e-5));
  }
  CHECK_THROWS_AS(p_infinity_white_obs(ModelParams(0.5, 0.5, -1.0, 1.0, 1.0)), RegimeError);
  // Weak observation: the stationary fOU variance Gamma(2H+1)/2 at beta=-1.
  CHECK(p_infinity_white_obs(ModelParams(0.7, 0.5, -1.0, 1e-4, 1.0)).p_infinity ==
        Approx(std::tgamma(2.4) / 2.0).epsilon(1e-5));
}

TEST_CASE("white-observation beta=0 law") {
  for (double h : {0.25, 0.75})
    for (double mu : {1.0, 2.0}) {
      const double e = 1.0 / (2.0 * h + 1.0);
      const double expected = std::pow(kappa_h(h), e) / std::sin(pi * e) * std::pow(mu, -4.0 * h * e);
      CHECK(p_infinity_white_obs(ModelParams(h, 0.5, 0.0, mu, 1.0)).p_infinity == Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("spectral formula") {
  // h1 = 1/2 reduces to the classical log integral.
  CHECK(spectral_steady_state(ModelParams(0.5, 0.5, -1.5, 1.0, 2.0)).p_infinity ==
        Approx(kalman_bucy_steady(-1.5, 1.0, 2.0)).epsilon(1e-8));
  CHECK(spectral_steady_state(ModelParams(0.7, 0.5, -1.0, 1.0, 1.0)).p_infinity ==
        Approx(p_infinity_white_obs(ModelParams(0.7, 0.5, -1.0, 1.0, 1.0)).p_infinity).epsilon(1e-6));
  // The log term vanishes as mu -> 0 while P tends to the stationary variance.
  CHECK(spectral_steady_state(ModelParams(0.7, 0.5, -1.0, 1e-5, 1.0)).p_infinity ==
        Approx(std::tgamma(2.4) / 2.0).epsilon(1e-6));
  CHECK_THROWS_AS(spectral_steady_state(ModelParams(0.7, 0.5, 1.0, 1.0, 1.0)), RegimeError);
}

TEST_CASE("white-state formula") {
  const double frozen[][3] = {{0.3, 0.5, 1.424763}, {0.3, 1.0, 2.180579}, {0.3, 0.2, 1.085079},
                              {0.7, 0.5, 1.674861}, {0.7, 1.0, 2.220278}, {0.7, 0.2, 1.3233045}};
  for (const auto& f : frozen) {
    const auto r = p_infinity_white_state(ModelParams(0.5, f[0], f[1], 1.0, 1.0));
    CHECK(r.p_infinity == Approx(f[2]).epsilon(2e-6));
    CHECK(r.zero.has_value() == (f[0] < 0.5));
  }
  CHECK_THROWS_AS(p_infinity_white_state(ModelParams(0.5, 0.7, -0.2, 1.0, 1.0)), RegimeError);
  CHECK_THROWS_AS(x_ratio(ModelParams(0.5, 0.5, 0.2, 1.0, 1.0)), RegimeError);
}

TEST_CASE("X function identity and small-beta limit") {
  for (double h2 : {0.3, 0.7})
    for (double b : {0.5, 1.0}) CHECK(checks::x_identity_gap(h2, b) < 1e-5);
  const auto v = checks::limbeta(0.7, 1e-3, false);
  CHECK(v.value == Approx(v.limit).epsilon(5e-3));
  const auto w = checks::limbeta(0.3, 1e-3, true);
  CHECK(w.value == Approx(w.limit).epsilon(5e-3));
}

TEST_CASE("general formula") {
  const ModelParams a(0.5, 0.7, 0.2, 1.0, 1.0);
  const auto g = p_infinity_general(a);
  CHECK(g.p_infinity == Approx(p_infinity_white_state(a).p_infinity).epsilon(1e-4));
  CHECK(std::abs(g.imag_residue) < 1e-7);
  // The mu_eps^2 prefactor: both formulas move together when mu changes.
  const ModelParams b(0.5, 0.7, 0.2, 2.0, 1.0);
  CHECK(p_infinity_general(b).p_infinity == Approx(0.49837).epsilon(1e-4));
  CHECK(p_infinity_general(ModelParams(0.3, 0.7, -0.5, 1.0, 1.0)).p_infinity == Approx(0.5425314).epsilon(1e-6));
  CHECK_THROWS_AS(p_infinity_general(ModelParams(0.3, 0.4, -0.5, 1.0, 1.0)), RegimeError);
}

TEST_CASE("dispatch") {
  CHECK(p_infinity(ModelParams(0.5, 0.5, -1.0, 1.0, 1.0)).method == Method::classical);
  CHECK(p_infinity(ModelParams(0.7, 0.7, -1.0, 1.0, 1.0)).method == Method::thm1);
  CHECK(p_infinity(ModelParams(0.3, 0.5, -1.0, 1.0, 1.0)).method == Method::thm2);
  CHECK(p_infinity(ModelParams(0.5, 0.3, 1.0, 1.0, 1.0)).method == Method::thm3);
  CHECK(p_infinity(ModelParams(0.3, 0.7, -0.5, 1.0, 1.0)).method == Method::general);
  CHECK_THROWS_AS(p_infinity(ModelParams(0.6, 0.3, 1.0, 1.0, 1.0)), RegimeError);
  CHECK(method_from_string("spectral") == Method::spectral);
  CHECK(std::string(to_string(Method::thm3)) == "thm3");
  CHECK_THROWS_AS(method_from_string("nope"), DomainError);
}

TEST_CASE("scaling covariance and positivity") {
  for (const ModelParams& p : {ModelParams(0.7, 0.7, -1.0, 1.0, 1.0), ModelParams(0.75, 0.5, -1.0, 1.0, 1.0),
                               ModelParams(0.5, 0.3, 0.5, 1.0, 1.0)}) {
    const double a = p_infinity(p).p_infinity;
    CHECK(a > 0.0);
    CHECK(p_infinity(p.with_mu(2.0 * p.mu()).with_eps(4.0 * p.eps())).p_infinity == Approx(a).epsilon(1e-12));
  }
}

TEST_CASE("monotone in eps") {
  for (const ModelParams& p : {ModelParams(0.7, 0.7, -1.0, 1.0, 1.0), ModelParams(0.3, 0.5, -1.0, 1.0, 1.0),
                               ModelParams(0.5, 0.7, 0.3, 1.0, 1.0)}) {
    double prev = 0.0;
    for (double e : {0.1, 0.3, 1.0}) {
      const double v = p_infinity(p.with_eps(e)).p_infinity;
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("small-noise exponents") {
  CHECK(small_noise_law(ModelParams(0.7, 0.7, 0.0, 1.0, 1.0)).nu == Approx(0.7));
  CHECK(small_noise_law(ModelParams(0.75, 0.5, 0.0, 1.0, 1.0)).nu == Approx(0.6));
  CHECK(small_noise_law(ModelParams(0.5, 0.25, 0.0, 1.0, 1.0)).nu == Approx(0.4));
  CHECK(small_noise_law(ModelParams(0.7, 0.7, 0.0, 1.0, 1.0)).constant ==
        Approx(0.5 * std::tgamma(2.4) * (1.0 + std::sin(0.7 * pi))));
}

TEST_CASE("closed-form slope in eps") {
  // Equal Hurst and white observation: log P vs log eps over [1e-6, 1e-2].
  for (const ModelParams& p : {ModelParams(0.7, 0.7, -1.0, 1.0, 1.0), ModelParams(0.75, 0.5, -1.0, 1.0, 1.0)}) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int k = 9;
    for (int i = 0; i < k; ++i) {
      const double e = std::pow(10.0, -6.0 + 4.0 * i / (k - 1));
      const double x = std::log(e), y = std::log(p_infinity(p.with_eps(e)).p_infinity);
      sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    CHECK(slope == Approx(small_noise_law(p).nu).epsilon(0.01));
  }
}
