#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "logbouss/evolve.hpp"
#include "logbouss/kernel.hpp"
#include "logbouss/verify.hpp"

namespace logbouss {

/// Library version string.
std::string tool_version();

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);
/// 16 lowercase hex digits.
std::string hash_hex(std::uint64_t h);

/// Identifies the run that produced a file.
struct Stamp {
  std::string config_hash;
  std::string version = tool_version();
};

/// Shortest round-trip decimal form; "inf", "-inf" and "nan" for
/// non-finite values.
std::string format_number(double x);

/// RFC 4180 writer: comma separated, CRLF line ends, fields quoted when they
/// contain a comma, quote, CR or LF. The header row is mandatory.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  void row(const std::vector<std::string>& fields);
  const std::string& str() const { return text_; }

  static std::string escape(std::string_view field);

 private:
  void line(const std::vector<std::string>& fields);

  std::size_t width_;
  std::string text_;
};

/// Writes bytes exactly; throws Error when the file cannot be written.
void write_file(const std::filesystem::path& path, const std::string& content);

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<std::string> notes;
};

/// Self-contained SVG line plot; non-finite points (and non-positive ones on
/// log axes) are skipped.
std::string svg_line_plot(const PlotSpec& spec, const std::vector<PlotSeries>& series,
                          const Stamp& stamp);

/// One cell of a sign map.
struct MapCell {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
};

/// Cells drawn on an evenly spaced (index) layout of the distinct x and y
/// values, green where value >= threshold and red elsewhere.
std::string svg_sign_map(const PlotSpec& spec, const std::vector<MapCell>& cells,
                         double threshold, const Stamp& stamp);

/// One row of a kernel parameter scan.
struct KernelScanRow {
  double alpha = 0.0;
  double beta = 1.0;
  double lambda = 2.0;
  int d = 1;
  double t = 1.0;
  double mass = 0.0;
  double min_value = 0.0;
  bool askey_phi1 = true;
  bool askey_phi2 = true;
  bool askey_phi3 = true;
  std::optional<double> first_violation_r;
};

KernelScanRow scan_row(const KernelReport& report);

/// alpha, beta, lambda, d, t, mass, min_value, askey_phi1, askey_phi2,
/// askey_phi3, first_violation_r, then config_hash and tool_version.
std::string kernel_scan_csv(const std::vector<KernelScanRow>& rows, const Stamp& stamp);

/// r, value samples of one kernel report.
std::string kernel_profile_csv(const KernelReport& report, const Stamp& stamp);

/// One row per sample time.
std::string trajectory_csv(const TrajectoryLog& log, const Stamp& stamp);

/// Run metadata and summary numbers of a trajectory.
std::string trajectory_json(const TrajectoryLog& log, const Stamp& stamp, std::uint64_t seed,
                            const std::string& preset);

/// case_id, q, lhs, rhs, ratio (plus n, config_hash, tool_version).
std::string inequality_csv(const InequalityReport& report, const Stamp& stamp);

std::string suite_json(const SuiteResult& result, const Stamp& stamp, std::uint64_t seed);

/// File-system friendly version of a report name and parameter label.
std::string report_slug(const InequalityReport& report, std::size_t index);

}  // namespace logbouss
