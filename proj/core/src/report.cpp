#include "logbouss/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "logbouss/error.hpp"

namespace logbouss {

namespace {

using nlohmann::ordered_json;

ordered_json number_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string p_label(double p) { return std::isinf(p) ? "inf" : format_number(p); }

}  // namespace

std::string tool_version() { return LOGBOUSS_VERSION; }

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xF];
    h >>= 4;
  }
  return out;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) {
  if (header.empty()) throw DomainError("CSV header must not be empty");
  line(header);
}

std::string CsvWriter::escape(std::string_view field) {
  const bool quote = field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!quote) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void CsvWriter::line(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) text_ += ',';
    text_ += escape(fields[i]);
  }
  text_ += "\r\n";
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != width_) throw DomainError("CSV row width does not match the header");
  line(fields);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::string svg_line_plot(const PlotSpec& spec, const std::vector<PlotSeries>& series,
                          const Stamp& stamp) {
  constexpr double W = 720.0;
  constexpr double H = 460.0;
  constexpr double left = 80.0;
  constexpr double right = 170.0;
  constexpr double top = 40.0;
  constexpr double bottom = 60.0;
  auto tx = [&](double x) { return spec.log_x ? std::log10(x) : x; };
  auto ty = [&](double y) { return spec.log_y ? std::log10(y) : y; };
  auto usable = [&](double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y)) return false;
    if (spec.log_x && !(x > 0.0)) return false;
    if (spec.log_y && !(y > 0.0)) return false;
    return true;
  };
  double x0 = std::numeric_limits<double>::infinity();
  double x1 = -x0;
  double y0 = x0;
  double y1 = -x0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      x0 = std::min(x0, tx(s.x[i]));
      x1 = std::max(x1, tx(s.x[i]));
      y0 = std::min(y0, ty(s.y[i]));
      y1 = std::max(y1, ty(s.y[i]));
    }
  }
  if (!(x0 <= x1)) {
    x0 = 0.0;
    x1 = 1.0;
  }
  if (!(y0 <= y1)) {
    y0 = 0.0;
    y1 = 1.0;
  }
  if (x1 == x0) x1 = x0 + 1.0;
  if (y1 == y0) {
    const double pad = y0 == 0.0 ? 1.0 : 0.05 * std::abs(y0);
    y0 -= pad;
    y1 += pad;
  }
  const double pw = W - left - right;
  const double ph = H - top - bottom;
  auto px = [&](double x) { return left + (tx(x) - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return top + ph - (ty(y) - y0) / (y1 - y0) * ph; };
  auto num = [](double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
    return std::string(buf, r.ptr);
  };
  auto tick = [](double v) {
    std::ostringstream s;
    s.precision(4);
    s << v;
    return s.str();
  };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  o << "<metadata>config_hash=" << xml_escape(stamp.config_hash)
    << " tool_version=" << xml_escape(stamp.version) << "</metadata>\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"15\">"
    << xml_escape(spec.title) << "</text>\n";
  o << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = x0 + (x1 - x0) * i / 4.0;
    const double fy = y0 + (y1 - y0) * i / 4.0;
    const double gx = left + pw * i / 4.0;
    const double gy = top + ph - ph * i / 4.0;
    const std::string lx = spec.log_x ? "1e" + tick(fx) : tick(fx);
    const std::string ly = spec.log_y ? "1e" + tick(fy) : tick(fy);
    o << "<line x1=\"" << num(gx) << "\" y1=\"" << top + ph << "\" x2=\"" << num(gx) << "\" y2=\""
      << top + ph + 5 << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << num(gx) << "\" y=\"" << top + ph + 18
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << lx
      << "</text>\n";
    o << "<line x1=\"" << left - 5 << "\" y1=\"" << num(gy) << "\" x2=\"" << left << "\" y2=\""
      << num(gy) << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << left - 8 << "\" y=\"" << num(gy + 4)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << ly << "</text>\n";
  }
  o << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 15
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
    << xml_escape(spec.x_label) << "</text>\n";
  o << "<text x=\"18\" y=\"" << top + ph / 2 << "\" transform=\"rotate(-90 18 " << top + ph / 2
    << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
    << xml_escape(spec.y_label) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = colors[k % 8];
    std::string points;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      points += num(px(s.x[i])) + "," + num(py(s.y[i])) + " ";
    }
    if (!points.empty()) points.pop_back();
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
      << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"" << points << "\"/>\n";
    const double ly = top + 14.0 + 18.0 * static_cast<double>(k);
    o << "<line x1=\"" << W - right + 12 << "\" y1=\"" << ly - 4 << "\" x2=\"" << W - right + 36
      << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\""
      << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
    o << "<text x=\"" << W - right + 42 << "\" y=\"" << ly
      << "\" font-family=\"sans-serif\" font-size=\"11\">" << xml_escape(s.name) << "</text>\n";
  }
  for (std::size_t k = 0; k < spec.notes.size(); ++k) {
    o << "<text x=\"" << left + 8 << "\" y=\"" << top + 16 + 15.0 * static_cast<double>(k)
      << "\" font-family=\"sans-serif\" font-size=\"11\">" << xml_escape(spec.notes[k])
      << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string svg_sign_map(const PlotSpec& spec, const std::vector<MapCell>& cells,
                         double threshold, const Stamp& stamp) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& c : cells) {
    xs.push_back(c.x);
    ys.push_back(c.y);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  constexpr double left = 90.0;
  constexpr double top = 40.0;
  constexpr double cell = 36.0;
  const double pw = cell * static_cast<double>(std::max<std::size_t>(xs.size(), 1));
  const double ph = cell * static_cast<double>(std::max<std::size_t>(ys.size(), 1));
  const double W = left + pw + 40.0;
  const double H = top + ph + 70.0 + 15.0 * static_cast<double>(spec.notes.size());
  auto index = [](const std::vector<double>& v, double x) {
    return static_cast<double>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
  };
  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  o << "<metadata>config_hash=" << xml_escape(stamp.config_hash)
    << " tool_version=" << xml_escape(stamp.version) << "</metadata>\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"14\">"
    << xml_escape(spec.title) << "</text>\n";
  for (const auto& c : cells) {
    const double cx = left + cell * index(xs, c.x);
    const double cy = top + ph - cell * (index(ys, c.y) + 1.0);
    o << "<rect x=\"" << cx << "\" y=\"" << cy << "\" width=\"" << cell << "\" height=\"" << cell
      << "\" fill=\"" << (c.value >= threshold ? "#7fc97f" : "#e34a33")
      << "\" stroke=\"white\"><title>" << format_number(c.x) << ", " << format_number(c.y)
      << ": " << format_number(c.value) << "</title></rect>\n";
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    o << "<text x=\"" << left + cell * (static_cast<double>(i) + 0.5) << "\" y=\"" << top + ph + 16
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
      << format_number(xs[i]) << "</text>\n";
  }
  for (std::size_t i = 0; i < ys.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", ys[i]);
    o << "<text x=\"" << left - 6 << "\" y=\"" << top + ph - cell * (static_cast<double>(i) + 0.5) + 4
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << buf
      << "</text>\n";
  }
  o << "<text x=\"" << left + pw / 2 << "\" y=\"" << top + ph + 36
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
    << xml_escape(spec.x_label) << "</text>\n";
  o << "<text x=\"16\" y=\"" << top + ph / 2 << "\" transform=\"rotate(-90 16 " << top + ph / 2
    << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
    << xml_escape(spec.y_label) << "</text>\n";
  for (std::size_t k = 0; k < spec.notes.size(); ++k) {
    o << "<text x=\"" << left << "\" y=\"" << top + ph + 56 + 15.0 * static_cast<double>(k)
      << "\" font-family=\"sans-serif\" font-size=\"11\">" << xml_escape(spec.notes[k])
      << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

KernelScanRow scan_row(const KernelReport& report) {
  KernelScanRow row;
  row.alpha = report.params.alpha;
  row.beta = report.params.beta;
  row.lambda = report.params.lambda;
  row.d = report.d;
  row.t = report.t;
  row.mass = report.mass;
  row.min_value = report.min_value;
  row.askey_phi1 = report.askey.phi1_nonneg.holds;
  row.askey_phi2 = report.askey.phi2_nonpos.holds;
  row.askey_phi3 = report.askey.phi3_nonneg.holds;
  row.first_violation_r = report.askey.first_violation();
  return row;
}

std::string kernel_scan_csv(const std::vector<KernelScanRow>& rows, const Stamp& stamp) {
  CsvWriter csv({"alpha", "beta", "lambda", "d", "t", "mass", "min_value", "askey_phi1",
                 "askey_phi2", "askey_phi3", "first_violation_r", "config_hash", "tool_version"});
  auto flag = [](bool b) { return std::string(b ? "pass" : "fail"); };
  for (const auto& r : rows) {
    csv.row({format_number(r.alpha), format_number(r.beta), format_number(r.lambda),
             std::to_string(r.d), format_number(r.t), format_number(r.mass),
             format_number(r.min_value), flag(r.askey_phi1), flag(r.askey_phi2),
             flag(r.askey_phi3), r.first_violation_r ? format_number(*r.first_violation_r) : "",
             stamp.config_hash, stamp.version});
  }
  return csv.str();
}

std::string kernel_profile_csv(const KernelReport& report, const Stamp& stamp) {
  CsvWriter csv({"r", "value", "config_hash", "tool_version"});
  for (std::size_t i = 0; i < report.radii.size(); ++i) {
    csv.row({format_number(report.radii[i]), format_number(report.values[i]), stamp.config_hash,
             stamp.version});
  }
  return csv.str();
}

std::string trajectory_csv(const TrajectoryLog& log, const Stamp& stamp) {
  std::vector<std::string> header{"t"};
  for (double p : log.p_list) header.push_back("theta_L" + p_label(p));
  for (double p : log.p_list) header.push_back("omega_L" + p_label(p));
  const std::size_t nb = log.theta_blocks.empty() ? 0 : log.theta_blocks.front().size();
  for (std::size_t i = 0; i < nb; ++i) header.push_back("block_q" + std::to_string(static_cast<int>(i) - 1));
  for (std::size_t i = 0; i < nb; ++i) header.push_back("smoothing_q" + std::to_string(static_cast<int>(i) - 1));
  for (const char* h : {"theta_B0_p1", "V", "omega_L1t_Lp", "gamma_residual", "config_hash",
                        "tool_version"}) {
    header.emplace_back(h);
  }
  CsvWriter csv(header);
  for (std::size_t k = 0; k < log.times.size(); ++k) {
    std::vector<std::string> row{format_number(log.times[k])};
    for (double v : log.theta_norms[k]) row.push_back(format_number(v));
    for (double v : log.omega_norms[k]) row.push_back(format_number(v));
    for (double v : log.theta_blocks[k]) row.push_back(format_number(v));
    for (double v : log.smoothing[k]) row.push_back(format_number(v));
    row.push_back(format_number(log.theta_besov[k]));
    row.push_back(format_number(log.velocity_gradient_integral[k]));
    row.push_back(format_number(log.omega_lp_integral[k]));
    row.push_back(std::isnan(log.gamma_residual[k]) ? "" : format_number(log.gamma_residual[k]));
    row.push_back(stamp.config_hash);
    row.push_back(stamp.version);
    csv.row(row);
  }
  return csv.str();
}

std::string trajectory_json(const TrajectoryLog& log, const Stamp& stamp, std::uint64_t seed,
                            const std::string& preset) {
  ordered_json j;
  j["tool_version"] = stamp.version;
  j["config_hash"] = stamp.config_hash;
  j["preset"] = preset;
  j["scheme"] = log.scheme;
  j["label"] = log.label;
  j["seed"] = seed;
  j["grid"] = {{"n", log.n}, {"period", "2*pi"}, {"dealias", "2/3"}};
  j["params"] = {{"alpha", log.alpha}, {"beta", log.beta}, {"lambda", log.lambda},
                 {"kappa", log.kappa}};
  j["dt"] = log.dt;
  j["steps_recorded"] = log.times.size();
  std::vector<ordered_json> ps;
  for (double p : log.p_list) ps.push_back(p_label(p));
  j["p_list"] = ps;
  j["block_p"] = log.block_p;
  ordered_json summary;
  const auto inc = max_norm_increase(log);
  ordered_json incs;
  for (std::size_t i = 0; i < inc.size(); ++i) incs[p_label(log.p_list[i])] = number_or_null(inc[i]);
  summary["max_theta_norm_increase"] = incs;
  if (!log.omega_norms.empty()) {
    ordered_json drift;
    for (std::size_t i = 0; i < log.p_list.size(); ++i) {
      const double w0 = log.omega_norms.front()[i];
      double m = 0.0;
      for (const auto& row : log.omega_norms) m = std::max(m, std::abs(row[i] - w0));
      drift[p_label(log.p_list[i])] = number_or_null(w0 > 0.0 ? m / w0 : m);
    }
    summary["omega_norm_relative_drift"] = drift;
  }
  summary["smoothing_functional"] = number_or_null(smoothing_functional(log));
  summary["smoothing_ratio"] = number_or_null(smoothing_ratio(log));
  summary["log_estimate_constant"] = number_or_null(log_estimate_constant(log));
  double gmax = 0.0;
  for (double g : log.gamma_residual) {
    if (!std::isnan(g)) gmax = std::max(gmax, g);
  }
  summary["gamma_residual_max"] = gmax;
  j["summary"] = summary;
  return j.dump(2) + "\n";
}

std::string inequality_csv(const InequalityReport& report, const Stamp& stamp) {
  CsvWriter csv({"case_id", "q", "lhs", "rhs", "ratio", "n", "config_hash", "tool_version"});
  for (const auto& c : report.cases) {
    csv.row({c.case_id, std::to_string(c.q), format_number(c.lhs), format_number(c.rhs),
             format_number(c.ratio), std::to_string(c.n), stamp.config_hash, stamp.version});
  }
  return csv.str();
}

std::string report_slug(const InequalityReport& report, std::size_t index) {
  std::string s = report.name + "_" + report.parameters;
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-') {
      out += c;
    } else if (!out.empty() && out.back() != '_') {
      out += '_';
    }
  }
  char prefix[8];
  std::snprintf(prefix, sizeof(prefix), "%03zu_", index);
  return prefix + out;
}

std::string suite_json(const SuiteResult& result, const Stamp& stamp, std::uint64_t seed) {
  ordered_json j;
  j["tool_version"] = stamp.version;
  j["config_hash"] = stamp.config_hash;
  j["seed"] = seed;
  j["pass"] = result.pass;
  std::vector<ordered_json> reps;
  for (std::size_t i = 0; i < result.reports.size(); ++i) {
    const auto& r = result.reports[i];
    ordered_json o;
    o["file"] = report_slug(r, i) + ".csv";
    o["name"] = r.name;
    o["parameters"] = r.parameters;
    o["cases"] = r.cases.size();
    o["max_ratio"] = number_or_null(r.max_ratio);
    o["ceiling"] = r.ceiling;
    o["drift"] = number_or_null(r.drift);
    o["drift_tolerance"] = r.drift_tolerance;
    o["agreement_gap"] = number_or_null(r.agreement_gap);
    o["pass"] = r.pass;
    if (!r.pass) o["failure"] = r.failure;
    reps.push_back(o);
  }
  j["reports"] = reps;
  return j.dump(2) + "\n";
}

}  // namespace logbouss
