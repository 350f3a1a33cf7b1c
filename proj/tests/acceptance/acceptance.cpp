// Acceptance run: one line per criterion, exit status 1 if any fails.
// Usage: acceptance <path to logbouss cli> <work dir>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "logbouss/initial_data.hpp"
#include "logbouss/kernel.hpp"
#include "logbouss/presets.hpp"
#include "logbouss/verify.hpp"

using namespace logbouss;
namespace fs = std::filesystem;
using boost::multiprecision::cpp_bin_float_50;

namespace {

// Tolerances.
constexpr double kMassTol = 1e-6;
constexpr double kMatrixSeconds = 120.0;
constexpr double kMinKernel = -1e-8;
constexpr double kPoissonTol = 1e-4;
constexpr double kFdTol = 1e-6;
constexpr double kMonotoneTol = 1e-6;
constexpr double kTdRunSeconds = 60.0;
constexpr double kCeiling = 1e3;
constexpr double kDrift = 0.25;
constexpr double kParsevalTol = 1e-8;
constexpr double kClosedFormTol = 1e-8;
constexpr double kConstantCommutator = 1e-12;
constexpr double kEulerTol = 1e-5;
constexpr double kGammaRefinement = 2.0;
constexpr double kGammaStatic = 1e-10;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("criterion %2d %s  %s: %s\n", id, pass ? "PASS" : "FAIL", what.c_str(), detail.c_str());
  std::fflush(stdout);
}

std::string g(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

struct MatrixPoint {
  PhiParams params;
  int d;
  double t;
};

std::vector<MatrixPoint> default_matrix() {
  std::vector<MatrixPoint> out;
  for (double a : {0.0, 0.5, 1.0}) {
    for (double b : {0.5, 1.0}) {
      for (int d : {1, 2, 3}) {
        for (double t : {0.5, 1.0, 2.0}) out.push_back({PhiParams::at_threshold(a, b), d, t});
      }
    }
  }
  return out;
}

cpp_bin_float_50 phi50(const cpp_bin_float_50& r, const PhiParams& p) {
  return pow(r, cpp_bin_float_50(p.beta)) / pow(log(cpp_bin_float_50(p.lambda) + r), cpp_bin_float_50(p.alpha));
}

// Worst relative deviation of the closed-form derivatives from 50-digit
// central differences; near-cancelling or vanishing values are measured
// against the term scale or phi / r^k.
double fd_deviation(const PhiParams& p, double r) {
  const PhiJet j = phi_derivatives(r, p);
  const cpp_bin_float_50 x = r;
  const cpp_bin_float_50 h = x * cpp_bin_float_50("1e-9");
  auto f = [&](int k) { return phi50(x + k * h, p); };
  const double fd[3] = {static_cast<double>((f(1) - f(-1)) / (2 * h)),
                        static_cast<double>((f(1) - 2 * f(0) + f(-1)) / (h * h)),
                        static_cast<double>((f(2) - 2 * f(1) + 2 * f(-1) - f(-2)) / (2 * h * h * h))};
  const double closed[3] = {j.d1, j.d2, j.d3};
  const double scale[3] = {j.d1_scale, j.d2_scale, j.d3_scale};
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double natural = std::abs(j.value) / std::pow(r, k + 1);
    const double ref = std::max(std::abs(fd[k]), 1e-8 * std::max(scale[k], natural));
    if (ref > 0.0) worst = std::max(worst, std::abs(closed[k] - fd[k]) / ref);
  }
  return worst;
}

double max_defined(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) {
    if (!std::isnan(x)) m = std::max(m, x);
  }
  return m;
}

std::map<std::string, std::string> read_dir(const fs::path& dir) {
  std::map<std::string, std::string> out;
  if (!fs::exists(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream in(e.path(), std::ios::binary);
    out[e.path().filename().string()] = std::string(std::istreambuf_iterator<char>(in), {});
  }
  return out;
}

void criteria_kernel() {
  const auto matrix = default_matrix();
  const auto radii = default_kernel_radii();
  Timer timer;
  double worst_mass = 0.0;
  double worst_min = kInfinity;
  std::string where_mass;
  std::string where_min;
  for (const auto& m : matrix) {
    const KernelReport r = kernel_eval(m.t, m.params, m.d, radii);
    const double dev = std::abs(r.mass - 1.0);
    if (dev >= worst_mass) {
      worst_mass = dev;
      where_mass = m.params.label() + " d=" + std::to_string(m.d) + " t=" + g(m.t);
    }
    if (r.min_value <= worst_min) {
      worst_min = r.min_value;
      where_min = m.params.label() + " d=" + std::to_string(m.d) + " t=" + g(m.t);
    }
  }
  const double elapsed = timer.seconds();
  report(1, worst_mass <= kMassTol && elapsed < kMatrixSeconds, "kernel mass = 1 on the 54-point matrix",
         "max |mass - 1| = " + g(worst_mass) + " (" + where_mass + "), tol " + g(kMassTol) + "; " + g(elapsed) +
             " s, limit " + g(kMatrixSeconds) + " s");

  double worst_poisson = 0.0;
  const PhiParams poisson{0.0, 1.0, std::exp(3.0)};
  for (double t : {0.5, 1.0, 2.0}) {
    for (int i = 0; i <= 100; ++i) {
      const double r = 0.1 * i;
      const double exact = t / (std::numbers::pi * (t * t + r * r));
      worst_poisson = std::max(worst_poisson, std::abs(kernel_value(r, t, poisson, 1) - exact) / exact);
    }
  }
  report(2, worst_min >= kMinKernel && worst_poisson <= kPoissonTol, "kernel positivity and Poisson closed form",
         "min K_t = " + g(worst_min) + " (" + where_min + "), floor " + g(kMinKernel) +
             "; Poisson max rel err on [0,10] = " + g(worst_poisson) + ", tol " + g(kPoissonTol));

  bool askey_ok = true;
  std::string askey_fail;
  double worst_fd = 0.0;
  const auto ar = askey_radii();
  for (double a : {0.0, 0.5, 1.0}) {
    for (double b : {0.5, 1.0}) {
      const PhiParams p = PhiParams::at_threshold(a, b);
      for (double t : {0.5, 1.0, 2.0}) {
        const auto v = askey_check(p, ar, t);
        if (!v.conditions_hold()) {
          askey_ok = false;
          askey_fail += " " + p.label();
        }
      }
      for (double r : ar) worst_fd = std::max(worst_fd, fd_deviation(p, r));
    }
  }
  report(3, askey_ok && worst_fd <= kFdTol, "Askey sign conditions at the threshold",
         std::string(askey_ok ? "phi' >= 0, phi'' <= 0, phi''' >= 0 on 200 radii for all 6 pairs" : "violations:" + askey_fail) +
             "; derivative vs 50-digit FD max rel dev = " + g(worst_fd) + ", tol " + g(kFdTol));
}

void criterion_max_principle() {
  bool ok = true;
  std::string detail;
  for (const char* preset : {"maxprinciple", "maxprinciple-tg"}) {
    SimulationOverrides o;
    o.n = 256;
    o.dt = 0.01;
    o.t_end = 5.0;
    const auto run = make_simulation(preset, 20240601, o);
    Timer timer;
    const auto log = run_simulation(run);
    const double elapsed = timer.seconds();
    const auto inc = max_norm_increase(log);
    double worst = -kInfinity;
    for (double x : inc) worst = std::max(worst, x);
    const bool pass = worst <= kMonotoneTol && elapsed < kTdRunSeconds && log.times.size() == 501;
    ok = ok && pass;
    detail += std::string(preset) + ": max increase over p in {1,2,4,inf} = " + g(worst) + " in " +
              std::to_string(log.times.size() - 1) + " steps, " + g(elapsed) + " s; ";
  }
  report(4, ok, "maximum principle, n=256, 500 steps", detail + "tol " + g(kMonotoneTol) + ", limit " + g(kTdRunSeconds) + " s");
}

void criteria_inequalities() {
  SuiteConfig c = SuiteConfig::defaults();
  c.ceiling = kCeiling;
  c.drift_tolerance = kDrift;
  Timer timer;
  const SuiteResult suite = run_suite(c);
  const double elapsed = timer.seconds();

  struct Tally {
    int reports = 0;
    int failed = 0;
    double max_ratio = 0.0;
    double max_drift = 0.0;
    double max_gap = 0.0;
    std::string first_failure;
  };
  std::map<std::string, Tally> by_kind;
  for (const auto& r : suite.reports) {
    const std::string kind = r.name.rfind("generalized", 0) == 0   ? "bernstein"
                             : r.name.rfind("multiplier", 0) == 0 ? "multiplier"
                                                                  : "commutator";
    Tally& t = by_kind[kind];
    ++t.reports;
    if (!r.pass) {
      ++t.failed;
      if (t.first_failure.empty()) t.first_failure = r.name + " " + r.parameters + ": " + r.failure;
    }
    t.max_ratio = std::max(t.max_ratio, r.max_ratio);
    t.max_drift = std::max(t.max_drift, r.drift);
    t.max_gap = std::max(t.max_gap, r.agreement_gap);
  }
  auto summary = [&](const Tally& t) {
    std::string s = std::to_string(t.reports - t.failed) + "/" + std::to_string(t.reports) +
                    " reports pass, max ratio " + g(t.max_ratio) + " (ceiling " + g(kCeiling) + "), max drift " +
                    g(t.max_drift) + " (tol " + g(kDrift) + ")";
    if (!t.first_failure.empty()) s += "; first failure: " + t.first_failure;
    return s;
  };

  const Tally& b = by_kind["bernstein"];
  report(5, b.reports > 0 && b.failed == 0 && b.max_gap <= kParsevalTol, "generalized Bernstein, n=256 vs 512",
         summary(b) + ", Parseval gap " + g(b.max_gap) + " (tol " + g(kParsevalTol) + ")");

  // Single-mode closed form ((q+1)/log(lambda+2^q))^alpha.
  double worst_closed = 0.0;
  for (int n : {256, 512}) {
    const Grid2D grid(n);
    const DyadicFilterBank bank(grid);
    std::vector<SpectralField> fields;
    std::vector<std::string> names;
    for (int q = 0; q <= bank.q_max(); ++q) {
      fields.push_back(single_mode(grid, 1 << q, 0));
      names.push_back("mode-" + std::to_string(1 << q));
    }
    for (const auto& p : c.params) {
      for (double lp : {2.0, kInfinity}) {
        const auto rep = check_multiplier_bernstein(p, lp, fields, names, 0, bank.q_max(), bank);
        for (const auto& cs : rep.cases) {
          if (cs.case_id.rfind("mode-" + std::to_string(1 << cs.q) + "@", 0) != 0) continue;
          const double expect = std::pow((cs.q + 1.0) / std::log(p.lambda + std::ldexp(1.0, cs.q)), p.alpha);
          worst_closed = std::max(worst_closed, std::abs(cs.ratio - expect) / expect);
        }
      }
    }
  }
  const Tally& m = by_kind["multiplier"];
  report(6, m.reports > 0 && m.failed == 0 && worst_closed <= kClosedFormTol, "multiplier Bernstein",
         "single-mode closed form max rel err " + g(worst_closed) + " (tol " + g(kClosedFormTol) + "); corpus " + summary(m));

  double worst_constant = 0.0;
  for (int n : {128, 256}) {
    const Grid2D grid(n);
    const DyadicFilterBank bank(grid);
    const auto theta = random_band_limited(grid, 31, 20.0);
    const auto v = constant_velocity(grid, 0.7, -0.4);
    for (const auto& p : c.params) {
      for (auto variant : {CommutatorVariant::gradient, CommutatorVariant::vorticity}) {
        CommutatorSpec spec{variant, 2.0, 1.0, p.alpha, p.lambda, 0.3, 2.0};
        worst_constant = std::max(worst_constant, commutator_case(spec, v, theta, bank, "constant").lhs);
      }
    }
  }
  const Tally& k = by_kind["commutator"];
  report(7, k.reports > 0 && k.failed == 0 && worst_constant <= kConstantCommutator, "commutator estimate",
         "constant velocity LHS max " + g(worst_constant) + " (tol " + g(kConstantCommutator) + "); generic " + summary(k) +
             "; suite time " + g(elapsed) + " s");
}

void criterion_euler() {
  SimulationOverrides o;
  o.n = 256;
  o.t_end = 5.0;
  const auto log = run_simulation(make_simulation("euler-check", 20240601, o));
  double drift2 = 0.0;
  double drift_inf = 0.0;
  std::size_t i2 = 0;
  std::size_t iinf = 0;
  for (std::size_t i = 0; i < log.p_list.size(); ++i) {
    if (log.p_list[i] == 2.0) i2 = i;
    if (std::isinf(log.p_list[i])) iinf = i;
  }
  const auto& first = log.omega_norms.front();
  for (const auto& row : log.omega_norms) {
    drift2 = std::max(drift2, std::abs(row[i2] - first[i2]) / first[i2]);
    drift_inf = std::max(drift_inf, std::abs(row[iinf] - first[iinf]) / first[iinf]);
  }
  report(8, drift2 <= kEulerTol && drift_inf <= kEulerTol && log.times.back() == 5.0,
         "Euler limit, theta0 = 0, n=256, t in [0,5]",
         "relative drift of ||omega||_2 = " + g(drift2) + ", of ||omega||_inf = " + g(drift_inf) + ", tol " + g(kEulerTol));
}

void criteria_gamma_and_smoothing() {
  double residual[2];
  double ratio[2];
  for (int i = 0; i < 2; ++i) {
    SimulationOverrides o;
    o.n = 128 << i;
    const auto log = run_simulation(make_simulation("boussinesq", 20240601, o));
    residual[i] = max_defined(log.gamma_residual);
    ratio[i] = smoothing_ratio(log);
  }
  SimulationOverrides o;
  o.n = 128;
  const double static_residual = max_defined(run_simulation(make_simulation("stratified", 20240601, o)).gamma_residual);
  const double gain = residual[0] / residual[1];
  report(9, gain >= kGammaRefinement && static_residual <= kGammaStatic, "Gamma-equation residual",
         "max residual n=128 " + g(residual[0]) + ", n=256 " + g(residual[1]) + ", reduction " + g(gain) + "x (need " +
             g(kGammaRefinement) + "x); v = 0 case " + g(static_residual) + " (tol " + g(kGammaStatic) + ")");
  const double drift = std::abs(ratio[1] - ratio[0]) / ratio[0];
  report(10, std::isfinite(ratio[0]) && std::isfinite(ratio[1]) && drift < kDrift, "smoothing effect",
         "ratio n=128 " + g(ratio[0]) + ", n=256 " + g(ratio[1]) + ", drift " + g(drift) + " (tol " + g(kDrift) + ")");
}

void criterion_determinism(const std::string& cli, const fs::path& work) {
  const fs::path config = work / "determinism.toml";
  {
    std::ofstream out(config);
    out << "seed = 99\n[verify]\nalpha = [0.5, 1]\nbeta = [1]\ngrids = [128, 256]\n";
  }
  int codes[2];
  std::map<std::string, std::string> files[2];
  const char* threads[2] = {"1", "3"};
  for (int i = 0; i < 2; ++i) {
    const fs::path out = work / ("determinism-" + std::to_string(i));
    fs::remove_all(out);
    setenv("LOGBOUSS_THREADS", threads[i], 1);
    const std::string cmd = "\"" + cli + "\" --config \"" + config.string() + "\" verify --out \"" + out.string() + "\" > \"" +
                            (work / ("determinism-" + std::to_string(i) + ".log")).string() + "\" 2>&1";
    codes[i] = std::system(cmd.c_str());
    files[i] = read_dir(out / "verify");
  }
  unsetenv("LOGBOUSS_THREADS");
  std::size_t csv = 0;
  for (const auto& [name, _] : files[0]) csv += name.ends_with(".csv") ? 1 : 0;
  const bool same = !files[0].empty() && files[0] == files[1];
  report(11, same && csv > 0 && codes[0] == 0 && codes[1] == 0, "determinism of verify output",
         std::to_string(csv) + " CSV files, " + (same ? "byte-identical" : "DIFFERENT") +
             " across two runs (LOGBOUSS_THREADS 1 and 3), exit codes " + std::to_string(codes[0]) + "/" +
             std::to_string(codes[1]));
}

void guarded(int id, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, false, "aborted", e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s <logbouss cli> <work dir>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path work = argv[2];
  fs::create_directories(work);
  Timer total;
  guarded(1, criteria_kernel);
  guarded(4, criterion_max_principle);
  guarded(5, criteria_inequalities);
  guarded(8, criterion_euler);
  guarded(9, criteria_gamma_and_smoothing);
  guarded(11, [&] { criterion_determinism(cli, work); });
  std::printf("%d criteria failed, %.0f s total\n", failures, total.seconds());
  return failures == 0 ? 0 : 1;
}
