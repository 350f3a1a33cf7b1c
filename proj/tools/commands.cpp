#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <tuple>

#include "logbouss/error.hpp"
#include "logbouss/kernel.hpp"
#include "logbouss/parallel.hpp"
#include "logbouss/report.hpp"
#include "logbouss/verify.hpp"

namespace logbouss::cli {

namespace {

double parse_number(const std::string& field, const std::string& token) {
  if (token == "inf" || token == "+inf") return kInfinity;
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != token.size() || !std::isfinite(x)) {
    throw DomainError("invalid value '" + token + "' for '" + field + "'");
  }
  return x;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::optional<double> single_value(const std::string& field, const std::vector<std::string>& tokens) {
  if (tokens.empty()) return std::nullopt;
  const auto v = parse_range(field, tokens);
  if (v.size() != 1) throw DomainError("'" + field + "' takes a single value");
  return v.front();
}

Stamp stamp_for(const RunConfig& config) {
  return {hash_hex(fnv1a64(canonical_config(config))), tool_version()};
}

std::vector<double> positive_values(const std::string& field, const std::vector<std::string>& tokens) {
  auto v = parse_range(field, tokens);
  for (double x : v) {
    if (!(x > 0.0)) throw DomainError("'" + field + "' values must be positive");
  }
  return v;
}

// (alpha, beta, lambda) triples; lambda defaults to the threshold.
std::vector<PhiParams> param_matrix(const RunConfig& c) {
  const auto alphas = parse_range("alpha", c.alpha);
  const auto betas = parse_range("beta", c.beta);
  std::vector<double> lambdas;
  const bool explicit_lambda = !c.lambda.empty();
  if (explicit_lambda) lambdas = parse_range("lambda", c.lambda);
  std::vector<PhiParams> out;
  for (double a : alphas) {
    for (double b : betas) {
      if (!explicit_lambda) {
        out.push_back(PhiParams::at_threshold(a, b));
        continue;
      }
      for (double l : lambdas) out.push_back({a, b, l});
    }
  }
  for (const auto& p : out) {
    try {
      p.validate();
    } catch (const DomainError& e) {
      throw DomainError(std::string("invalid parameters (alpha, beta, lambda): ") + e.what());
    }
  }
  return out;
}

std::filesystem::path dir_for(const RunConfig& c) { return c.out / c.subcommand; }

void emit(const std::filesystem::path& path, const std::string& content) {
  write_file(path, content);
  std::cout << "wrote " << path.string() << "\n";
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

std::string json_number(double x) { return std::isfinite(x) ? format_number(x) : "null"; }

std::string poisson_note(const KernelReport& r, std::vector<double>& exact) {
  exact.clear();
  double worst = 0.0;
  for (std::size_t i = 0; i < r.radii.size(); ++i) {
    const double x = r.radii[i];
    const double e = r.t / (std::numbers::pi * (r.t * r.t + x * x));
    exact.push_back(e);
    if (x <= 10.0) worst = std::max(worst, std::abs(r.values[i] - e) / e);
  }
  std::ostringstream s;
  s.precision(3);
  s << "t=" << r.t << ": max relative deviation on [0, 10] = " << worst;
  return s.str();
}

}  // namespace

std::vector<double> parse_range(const std::string& field, const std::vector<std::string>& tokens) {
  std::vector<double> out;
  for (const auto& raw : tokens) {
    for (const auto& piece : split(raw, ',')) {
      const std::string token = trim(piece);
      if (token.empty()) continue;
      if (token.find(':') == std::string::npos) {
        out.push_back(parse_number(field, token));
        continue;
      }
      const auto parts = split(token, ':');
      if (parts.size() != 3 && parts.size() != 4) {
        throw DomainError("invalid range '" + token + "' for '" + field + "'; expected lo:hi:count[:log]");
      }
      const double lo = parse_number(field, trim(parts[0]));
      const double hi = parse_number(field, trim(parts[1]));
      const double count = parse_number(field, trim(parts[2]));
      const bool log = parts.size() == 4;
      if (log && trim(parts[3]) != "log") {
        throw DomainError("invalid range '" + token + "' for '" + field + "'");
      }
      if (count != std::floor(count) || count < 0) {
        throw DomainError("range count must be a non-negative integer for '" + field + "'");
      }
      if (hi < lo || count == 0) continue;
      const int m = static_cast<int>(count);
      if (log) {
        if (!(lo > 0.0)) throw DomainError("log range needs lo > 0 for '" + field + "'");
        const auto v = log_spaced(lo, hi, m);
        out.insert(out.end(), v.begin(), v.end());
      } else {
        for (int i = 0; i < m; ++i) out.push_back(m == 1 ? lo : lo + (hi - lo) * i / (m - 1));
      }
    }
  }
  if (out.empty()) throw DomainError("empty parameter range for '" + field + "'");
  return out;
}

std::string canonical_config(const RunConfig& c) {
  std::ostringstream s;
  auto list = [&](const char* key, const std::vector<std::string>& v) {
    s << key << '=';
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
    s << '\n';
  };
  auto opt = [&](const char* key, const auto& v) {
    s << key << '=';
    if (v) s << format_number(static_cast<double>(*v));
    s << '\n';
  };
  s << "subcommand=" << c.subcommand << '\n';
  s << "seed=" << c.seed << '\n';
  opt("grid", c.grid);
  list("alpha", c.alpha);
  list("beta", c.beta);
  list("lambda", c.lambda);
  list("d", c.d);
  list("t", c.t);
  if (c.subcommand == "simulate") {
    s << "preset=" << c.preset << '\n';
    opt("kappa", c.kappa);
    opt("dt", c.dt);
    opt("t_end", c.t_end);
    opt("sample_every", c.sample_every);
  }
  if (c.subcommand == "verify" || c.subcommand == "bernstein" || c.subcommand == "commutator") {
    list("grids", c.grids);
    list("bernstein_p", c.bernstein_p);
    list("multiplier_p", c.multiplier_p);
    list("commutator_p", c.commutator_p);
    list("commutator_r", c.commutator_r);
    list("epsilon", c.epsilon);
    s << "rho=" << format_number(c.rho) << '\n';
    s << "ceiling=" << format_number(c.ceiling) << '\n';
    s << "drift_tolerance=" << format_number(c.drift_tolerance) << '\n';
    s << "random_fields=" << c.random_fields << '\n';
  }
  return s.str();
}

int cmd_kernel(const RunConfig& c) {
  const auto params = param_matrix(c);
  const auto dims = parse_range("d", c.d);
  const auto times = positive_values("t", c.t);
  for (double d : dims) {
    if (d != 1.0 && d != 2.0 && d != 3.0) throw DomainError("'d' must be 1, 2 or 3");
  }
  struct Task {
    PhiParams params;
    int d;
    double t;
  };
  std::vector<Task> tasks;
  for (const auto& p : params) {
    for (double d : dims) {
      for (double t : times) tasks.push_back({p, static_cast<int>(d), t});
    }
  }
  const auto radii = default_kernel_radii();
  std::vector<std::optional<KernelReport>> reports(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) {
    const Task& task = tasks[i];
    try {
      reports[i] = kernel_eval(task.t, task.params, task.d, radii);
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << e.what() << " (" << task.params.label() << " d=" << task.d << " t=" << task.t << ")";
      throw Error(msg.str());
    }
  });
  const Stamp stamp = stamp_for(c);
  std::vector<KernelScanRow> rows;
  for (const auto& r : reports) rows.push_back(scan_row(*r));
  const auto dir = dir_for(c);
  if (!c.json_only) emit(dir / "kernel_scan.csv", kernel_scan_csv(rows, stamp));

  std::ostringstream j;
  j << "{\n  \"tool_version\": " << json_string(stamp.version)
    << ",\n  \"config_hash\": " << json_string(stamp.config_hash) << ",\n  \"seed\": " << c.seed
    << ",\n  \"rows\": [";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    j << (i ? "," : "") << "\n    {\"alpha\": " << json_number(r.alpha)
      << ", \"beta\": " << json_number(r.beta) << ", \"lambda\": " << json_number(r.lambda)
      << ", \"d\": " << r.d << ", \"t\": " << json_number(r.t) << ", \"mass\": " << json_number(r.mass)
      << ", \"min_value\": " << json_number(r.min_value)
      << ", \"askey\": " << (r.askey_phi1 && r.askey_phi2 && r.askey_phi3 ? "true" : "false")
      << ", \"first_violation_r\": "
      << (r.first_violation_r ? json_number(*r.first_violation_r) : "null") << "}";
  }
  j << "\n  ]\n}\n";
  emit(dir / "kernel_scan.json", j.str());

  if (!c.plots || c.json_only) return 0;
  // One profile plot per parameter triple.
  for (std::size_t pi = 0; pi < params.size(); ++pi) {
    const PhiParams& p = params[pi];
    PlotSpec spec{"K_t(r) for " + p.label(), "r", "K_t(r)", true, false, {}};
    std::vector<PlotSeries> series;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (tasks[i].params.alpha != p.alpha || tasks[i].params.beta != p.beta ||
          tasks[i].params.lambda != p.lambda) {
        continue;
      }
      const KernelReport& r = *reports[i];
      std::ostringstream name;
      name << "d=" << r.d << " t=" << r.t;
      series.push_back({name.str(), r.radii, r.values, false});
      if (p.alpha == 0.0 && p.beta == 1.0 && r.d == 1) {
        std::vector<double> exact;
        spec.notes.push_back(poisson_note(r, exact));
        series.push_back({"Poisson t=" + format_number(r.t), r.radii, exact, true});
      }
    }
    emit(dir / ("profile_" + std::to_string(pi) + ".svg"), svg_line_plot(spec, series, stamp));
  }
  // Positivity maps over (alpha, lambda) when both vary.
  std::set<double> alphas;
  std::set<double> lambdas;
  for (const auto& p : params) {
    alphas.insert(p.alpha);
    lambdas.insert(p.lambda);
  }
  if (alphas.size() < 2 || lambdas.size() < 2) return 0;
  std::map<std::tuple<double, int, double>, std::vector<MapCell>> maps;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    maps[{tasks[i].params.beta, tasks[i].d, tasks[i].t}].push_back(
        {tasks[i].params.alpha, tasks[i].params.lambda, reports[i]->min_value});
  }
  int index = 0;
  for (const auto& [key, cells] : maps) {
    const auto& [beta, d, t] = key;
    std::ostringstream title;
    title << "min K_t >= -1e-8 (beta=" << beta << ", d=" << d << ", t=" << t << ")";
    PlotSpec spec{title.str(), "alpha", "lambda", false, false, {"green: nonnegative, red: negative"}};
    emit(dir / ("positivity_map_" + std::to_string(index++) + ".svg"),
         svg_sign_map(spec, cells, -1e-8, stamp));
  }
  return 0;
}

int cmd_askey(const RunConfig& c) {
  const auto params = param_matrix(c);
  const auto times = positive_values("t", c.t);
  const auto radii = askey_radii();
  struct Task {
    PhiParams params;
    double t;
  };
  std::vector<Task> tasks;
  for (const auto& p : params) {
    for (double t : times) tasks.push_back({p, t});
  }
  std::vector<AskeyVerdict> verdicts(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) {
    verdicts[i] = askey_check(tasks[i].params, radii, tasks[i].t);
  });
  const Stamp stamp = stamp_for(c);
  const auto dir = dir_for(c);
  auto flag = [](const SignCondition& s) { return std::string(s.holds ? "pass" : "fail"); };
  if (!c.json_only) {
    CsvWriter csv({"alpha", "beta", "lambda", "t", "above_threshold", "phi1_nonneg", "phi2_nonpos",
                   "phi3_nonneg", "f3_identity_nonpos", "f3_difference_nonpos", "first_violation_r",
                   "config_hash", "tool_version"});
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      const auto& p = tasks[i].params;
      const auto& v = verdicts[i];
      const auto first = v.first_violation();
      csv.row({format_number(p.alpha), format_number(p.beta), format_number(p.lambda),
               format_number(tasks[i].t), p.above_threshold() ? "yes" : "no", flag(v.phi1_nonneg),
               flag(v.phi2_nonpos), flag(v.phi3_nonneg), flag(v.f3_identity_nonpos),
               flag(v.f3_difference_nonpos), first ? format_number(*first) : "", stamp.config_hash,
               stamp.version});
    }
    emit(dir / "askey.csv", csv.str());
  }
  std::ostringstream j;
  j << "{\n  \"tool_version\": " << json_string(stamp.version)
    << ",\n  \"config_hash\": " << json_string(stamp.config_hash) << ",\n  \"radii\": {\"lo\": 0.001, \"hi\": 1000000, \"count\": "
    << radii.size() << "},\n  \"rows\": [";
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto& p = tasks[i].params;
    const auto first = verdicts[i].first_violation();
    j << (i ? "," : "") << "\n    {\"alpha\": " << json_number(p.alpha) << ", \"beta\": "
      << json_number(p.beta) << ", \"lambda\": " << json_number(p.lambda)
      << ", \"t\": " << json_number(tasks[i].t)
      << ", \"conditions_hold\": " << (verdicts[i].conditions_hold() ? "true" : "false")
      << ", \"first_violation_r\": " << (first ? json_number(*first) : "null") << "}";
  }
  j << "\n  ]\n}\n";
  emit(dir / "askey.json", j.str());

  if (!c.plots || c.json_only) return 0;
  for (std::size_t pi = 0; pi < params.size(); ++pi) {
    const PhiParams& p = params[pi];
    std::vector<double> y1;
    std::vector<double> y2;
    std::vector<double> y3;
    for (double r : radii) {
      const PhiJet jet = phi_derivatives(r, p);
      y1.push_back(r * jet.d1 / jet.value);
      y2.push_back(r * r * jet.d2 / jet.value);
      y3.push_back(r * r * r * jet.d3 / jet.value);
    }
    PlotSpec spec{"scaled derivatives of phi, " + p.label(), "r", "r^k phi^(k) / phi", true, false, {}};
    emit(dir / ("derivatives_" + std::to_string(pi) + ".svg"),
         svg_line_plot(spec, {{"k=1", radii, y1}, {"k=2", radii, y2}, {"k=3", radii, y3}}, stamp));
  }
  return 0;
}

int cmd_simulate(const RunConfig& c) {
  SimulationOverrides o;
  o.n = c.grid;
  o.alpha = single_value("alpha", c.alpha);
  o.beta = single_value("beta", c.beta);
  o.lambda = single_value("lambda", c.lambda);
  o.kappa = c.kappa;
  o.dt = c.dt;
  o.t_end = c.t_end;
  o.sample_every = c.sample_every;
  const SimulationRun run = make_simulation(c.preset, c.seed, o);
  const TrajectoryLog log = run_simulation(run);
  const Stamp stamp = stamp_for(c);
  const auto dir = dir_for(c);
  if (!c.json_only) emit(dir / (c.preset + ".csv"), trajectory_csv(log, stamp));
  emit(dir / (c.preset + ".json"), trajectory_json(log, stamp, c.seed, c.preset));
  if (!c.plots || c.json_only) return 0;

  auto relative = [&](const std::vector<std::vector<double>>& rows, const std::string& what) {
    std::vector<PlotSeries> series;
    for (std::size_t i = 0; i < log.p_list.size(); ++i) {
      const double p = log.p_list[i];
      PlotSeries s{what + " L" + (std::isinf(p) ? std::string("inf") : format_number(p)), log.times, {}};
      const double ref = rows.front()[i];
      for (const auto& r : rows) s.y.push_back(ref > 0.0 ? r[i] / ref : r[i]);
      series.push_back(std::move(s));
    }
    return series;
  };
  emit(dir / (c.preset + "_theta.svg"),
       svg_line_plot({"theta norms relative to t = 0 (" + c.preset + ")", "t", "||theta(t)||_p / ||theta0||_p", false, false, {}},
                     relative(log.theta_norms, "theta"), stamp));
  if (log.scheme == "boussinesq") {
    emit(dir / (c.preset + "_omega.svg"),
         svg_line_plot({"omega norms relative to t = 0 (" + c.preset + ")", "t", "||omega(t)||_p / ||omega0||_p", false, false, {}},
                       relative(log.omega_norms, "omega"), stamp));
  }
  std::vector<PlotSeries> smoothing;
  const std::size_t nb = log.smoothing.empty() ? 0 : log.smoothing.front().size();
  for (std::size_t q = 1; q < nb; ++q) {
    PlotSeries s{"q=" + std::to_string(static_cast<int>(q) - 1), log.times, {}};
    for (const auto& row : log.smoothing) s.y.push_back(row[q]);
    smoothing.push_back(std::move(s));
  }
  emit(dir / (c.preset + "_smoothing.svg"),
       svg_line_plot({"2^q (1+q)^-alpha int ||Delta_q theta||_p dt", "t", "accumulated", false, true, {}},
                     smoothing, stamp));
  return 0;
}

int cmd_verify(const RunConfig& c) {
  SuiteConfig s = SuiteConfig::defaults();
  s.params = param_matrix(c);
  if (c.grid) {
    s.grids = {*c.grid, 2 * *c.grid};
  } else {
    s.grids.clear();
    for (double g : parse_range("grids", c.grids)) {
      if (g != std::floor(g) || g < 8) throw DomainError("'grids' must hold integers >= 8");
      s.grids.push_back(static_cast<int>(g));
    }
  }
  s.bernstein = c.subcommand != "commutator";
  s.multiplier = c.subcommand != "commutator";
  s.commutators = c.subcommand != "bernstein";
  if (s.bernstein) {
    s.bernstein_p = parse_range("bernstein_p", c.bernstein_p);
    s.multiplier_p = parse_range("multiplier_p", c.multiplier_p);
  }
  if (s.commutators) {
    s.commutator_p = parse_range("commutator_p", c.commutator_p);
    s.commutator_r = parse_range("commutator_r", c.commutator_r);
    s.epsilons = parse_range("epsilon", c.epsilon);
    s.rho = c.rho;
  }
  s.seed = c.seed;
  s.random_fields = c.random_fields;
  s.ceiling = c.ceiling;
  s.drift_tolerance = c.drift_tolerance;
  s.validate();

  const SuiteResult result = run_suite(s);
  const Stamp stamp = stamp_for(c);
  const auto dir = dir_for(c);
  for (std::size_t i = 0; i < result.reports.size(); ++i) {
    const auto& r = result.reports[i];
    const std::string slug = report_slug(r, i);
    if (!c.json_only) emit(dir / (slug + ".csv"), inequality_csv(r, stamp));
    if (c.plots && !c.json_only) {
      std::map<std::string, PlotSeries> by_case;
      const bool commutator = r.name.rfind("commutator", 0) == 0;
      for (std::size_t k = 0; k < r.cases.size(); ++k) {
        const auto& cs = r.cases[k];
        const std::string key = commutator ? "n=" + std::to_string(cs.n) : cs.case_id;
        auto& series = by_case[key];
        series.name = key;
        series.x.push_back(commutator ? static_cast<double>(series.x.size()) : cs.q);
        series.y.push_back(cs.ratio);
      }
      std::vector<PlotSeries> series;
      for (auto& [_, sr] : by_case) series.push_back(std::move(sr));
      PlotSpec spec{r.name + " " + r.parameters, commutator ? "case" : "q", "LHS / RHS", false, true,
                    {"max ratio " + format_number(r.max_ratio) + ", drift " + format_number(r.drift)}};
      emit(dir / (slug + ".svg"), svg_line_plot(spec, series, stamp));
    }
    if (!r.pass) std::cerr << "FAIL " << r.name << " " << r.parameters << ": " << r.failure << "\n";
  }
  emit(dir / "summary.json", suite_json(result, stamp, c.seed));
  std::size_t passed = 0;
  for (const auto& r : result.reports) passed += r.pass ? 1 : 0;
  std::cout << passed << "/" << result.reports.size() << " reports pass\n";
  return result.pass ? 0 : 1;
}

}  // namespace logbouss::cli
