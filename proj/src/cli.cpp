#include "fracfilter/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "fracfilter/closed_form.hpp"
#include "fracfilter/errors.hpp"
#include "fracfilter/oracle.hpp"
#include "fracfilter/verify.hpp"

namespace fracfilter {

std::string format_number(double v, int digits) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

namespace {

struct ParamFlags {
  double h1 = 0, h2 = 0, beta = 0, mu = 0, eps = 0;

  void attach(CLI::App* app) {
    app->add_option("--h1", h1, "Hurst exponent of the state noise")->required();
    app->add_option("--h2", h2, "Hurst exponent of the observation noise")->required();
    app->add_option("--beta", beta, "drift coefficient")->required();
    app->add_option("--mu", mu, "observation gain")->required();
    app->add_option("--eps", eps, "observation noise intensity")->required();
  }
  ModelParams params() const { return {h1, h2, beta, mu, eps}; }
};

struct SweepSpec {
  std::string variable = "eps";
  double from = 0, to = 0;
  int points = 2;
  std::string spacing = "log";

  std::vector<double> values() const {
    if (!(from < to)) throw DomainError("sweep needs --from < --to");
    if (points < 2) throw DomainError("sweep needs --points >= 2");
    if (spacing == "log" && !(from > 0.0)) throw DomainError("log spacing needs --from > 0");
    std::vector<double> v(points);
    for (int i = 0; i < points; ++i) {
      const double f = static_cast<double>(i) / (points - 1);
      v[i] = spacing == "log" ? std::exp(std::log(from) + f * (std::log(to) - std::log(from))) : from + f * (to - from);
    }
    v.back() = to;
    return v;
  }
};

SteadyStateResult evaluate(const ModelParams& p, const std::string& method, double tol) {
  ClosedFormOptions opt;
  opt.tol = tol;
  return method == "auto" ? p_infinity(p, opt) : p_infinity_with(method_from_string(method), p, opt);
}

void cmd_steady(const ParamFlags& f, const std::string& method, double tol, std::ostream& out) {
  const ModelParams p = f.params();
  const auto r = evaluate(p, method, tol);
  out << "h1,h2,beta,mu,eps,method,p_infinity,quad_err\n";
  out << format_number(p.h1()) << ',' << format_number(p.h2()) << ',' << format_number(p.beta()) << ','
      << format_number(p.mu()) << ',' << format_number(p.eps()) << ',' << to_string(r.method) << ','
      << format_number(r.p_infinity) << ',' << format_number(r.quad_error) << '\n';
}

struct OracleFlags {
  bool enabled = false;
  int grid = 256;
  double horizon = 20.0;
};

void cmd_sweep(const ParamFlags& f, const SweepSpec& spec, const std::string& method, double tol,
               const OracleFlags& oracle, std::ostream& out) {
  const ModelParams base = f.params();
  // Buffer everything so a failure part-way emits nothing.
  std::ostringstream buf;
  buf << spec.variable << ",p_closed" << (oracle.enabled ? ",p_oracle,rel_diff" : "") << '\n';
  std::vector<double> xs, ps;
  for (double v : spec.values()) {
    const ModelParams p = spec.variable == "eps" ? base.with_eps(v) : base;
    const double closed = evaluate(p, method, tol).p_infinity;
    buf << format_number(v) << ',' << format_number(closed);
    if (oracle.enabled) {
      const double T = spec.variable == "T" ? v : oracle.horizon;
      const double o = oracle_run(p, T, oracle.grid).extrapolated;
      buf << ',' << format_number(o) << ',' << format_number(std::abs(closed - o) / o);
    }
    buf << '\n';
    xs.push_back(v);
    ps.push_back(closed);
  }
  if (spec.variable == "eps") buf << "slope," << format_number(log_log_slope(xs, ps), 6) << '\n';
  out << buf.str();
}

int cmd_verify(const std::string& suite, double tol_scale, std::ostream& out) {
  const auto checks = run_suite(suite, tol_scale);
  int passed = 0;
  for (const auto& c : checks) {
    out << (c.pass ? "PASS  " : "FAIL  ") << c.name << "  measured=" << format_number(c.measured, 3)
        << " allowed=" << format_number(c.allowed, 3) << '\n';
    passed += c.pass;
  }
  out << passed << '/' << checks.size() << " checks passed\n";
  return passed == static_cast<int>(checks.size()) ? kOk : kVerifyFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steady-state and finite-horizon filtering errors for fractional-noise linear systems"};
  app.require_subcommand(1);

  ParamFlags pf;
  std::string method = "auto";
  double tol = 1e-9;
  auto* steady = app.add_subcommand("steady", "evaluate the closed-form large-time error");
  pf.attach(steady);
  steady->add_option("--method", method, "auto|classical|thm1|thm2|thm3|general|spectral")
      ->check(CLI::IsMember({"auto", "classical", "thm1", "thm2", "thm3", "general", "spectral"}));
  steady->add_option("--tol", tol, "quadrature tolerance")->check(CLI::PositiveNumber);

  ParamFlags sf;
  SweepSpec spec;
  OracleFlags oracle;
  std::string sweep_method = "auto";
  double sweep_tol = 1e-9;
  auto* sweep = app.add_subcommand("sweep", "closed form (and optionally the oracle) over a T or eps grid");
  sf.attach(sweep);
  sweep->add_option("--var", spec.variable, "swept variable")->check(CLI::IsMember({"T", "eps"}))->required();
  sweep->add_option("--from", spec.from)->required();
  sweep->add_option("--to", spec.to)->required();
  sweep->add_option("--points", spec.points)->required();
  sweep->add_option("--spacing", spec.spacing)->check(CLI::IsMember({"log", "linear"}));
  sweep->add_option("--method", sweep_method)
      ->check(CLI::IsMember({"auto", "classical", "thm1", "thm2", "thm3", "general", "spectral"}));
  sweep->add_option("--tol", sweep_tol)->check(CLI::PositiveNumber);
  sweep->add_flag("--with-oracle", oracle.enabled, "add Gaussian-conditioning oracle columns");
  sweep->add_option("--grid", oracle.grid, "finest oracle grid (multiple of 4)");
  sweep->add_option("--horizon", oracle.horizon, "oracle horizon for eps sweeps");

  std::string suite = "all";
  double tol_scale = 1.0;
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  verify->add_option("--suite", suite)->check(CLI::IsMember({"kernels", "structural", "closedform", "oracle", "all"}));
  verify->add_option("--tol-scale", tol_scale)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (steady->parsed()) {
      cmd_steady(pf, method, tol, out);
      return kOk;
    }
    if (sweep->parsed()) {
      cmd_sweep(sf, spec, sweep_method, sweep_tol, oracle, out);
      return kOk;
    }
    if (verify->parsed()) return cmd_verify(suite, tol_scale, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const RegimeError& e) {
    err << "uncovered regime: " << e.what() << '\n';
    return kRegime;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}

}  // namespace fracfilter
