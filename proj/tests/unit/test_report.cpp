#include <gtest/gtest.h>

#include <cmath>

#include "logbouss/error.hpp"
#include "logbouss/report.hpp"

using namespace logbouss;

TEST(Csv, QuotesWhenNeeded) {
  EXPECT_EQ(CsvWriter::escape("plain"), "plain");
  EXPECT_EQ(CsvWriter::escape("a,b"), "\"a,b\"");
  EXPECT_EQ(CsvWriter::escape("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(CsvWriter::escape("two\nlines"), "\"two\nlines\"");
}

TEST(Csv, HeaderAndCrlf) {
  CsvWriter w({"x", "y"});
  w.row({"1", "2"});
  EXPECT_EQ(w.str(), "x,y\r\n1,2\r\n");
  EXPECT_THROW(w.row({"1"}), DomainError);
  EXPECT_THROW(CsvWriter({}), DomainError);
}

TEST(Numbers, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1e-300), "1e-300");
  EXPECT_EQ(format_number(INFINITY), "inf");
  EXPECT_EQ(format_number(-INFINITY), "-inf");
  EXPECT_EQ(format_number(NAN), "nan");
  const double x = 0.30000000000000004;
  EXPECT_EQ(std::stod(format_number(x)), x);
}

TEST(Hash, FnvReferenceValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(hash_hex(0xaf63dc4c8601ec8cULL), "af63dc4c8601ec8c");
}

TEST(Svg, EmbedsStampAndSkipsBadPoints) {
  const Stamp stamp{"abc123", "9.9"};
  PlotSpec spec{"t<1>", "x", "y", true, true, {"note"}};
  const std::string s = svg_line_plot(spec, {{"s", {0.0, 1.0, 10.0}, {1.0, -1.0, 5.0}}}, stamp);
  EXPECT_NE(s.find("config_hash=abc123"), std::string::npos);
  EXPECT_NE(s.find("tool_version=9.9"), std::string::npos);
  EXPECT_NE(s.find("t&lt;1&gt;"), std::string::npos);
  EXPECT_EQ(s.find("nan"), std::string::npos);
  EXPECT_EQ(s, svg_line_plot(spec, {{"s", {0.0, 1.0, 10.0}, {1.0, -1.0, 5.0}}}, stamp));
}

TEST(KernelScan, ColumnsAndEmptyViolation) {
  KernelScanRow row;
  row.mass = 1.0;
  const std::string csv = kernel_scan_csv({row}, {"h", "v"});
  EXPECT_EQ(csv.substr(0, csv.find("\r\n")),
            "alpha,beta,lambda,d,t,mass,min_value,askey_phi1,askey_phi2,askey_phi3,first_violation_r,config_hash,tool_version");
  EXPECT_NE(csv.find(",pass,pass,pass,,h,v\r\n"), std::string::npos);
}
