#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace mpcov {

/// One report line: a single trial or a per-rung aggregate. Numeric columns
/// that do not apply to the row stay NaN (written as "nan" in CSV and null in
/// JSON lines); exceed is -1 when no threshold was configured.
struct ReportRow {
  std::string kind;
  int p = 0;
  int n = 0;
  double phi = 0.0;
  std::string row;  // "trial" or "aggregate"
  std::string agg;  // aggregate name ("median", "mean", "max"); empty on trials
  long trial = -1;
  uint64_t seed = 0;
  double dist_fs = std::numeric_limits<double>::quiet_NaN();
  double w1 = std::numeric_limits<double>::quiet_NaN();
  double disc = std::numeric_limits<double>::quiet_NaN();
  double ratio_fs = std::numeric_limits<double>::quiet_NaN();
  double ratio_disc = std::numeric_limits<double>::quiet_NaN();
  int exceed = -1;
  double wall_ms = 0.0;
};

/// Point of a plot-ready aggregate curve; y_lo/y_hi hold a confidence band
/// when one exists and repeat y otherwise.
struct SeriesPoint {
  std::string series;
  double x = 0.0;
  double y = 0.0;
  double y_lo = 0.0;
  double y_hi = 0.0;
};

/// Shortest text that parses back to the same double (printf %.17g).
std::string format_double(double v);

/// RFC-4180 quoting: wrap in quotes when the field holds a comma, quote, or
/// newline, doubling embedded quotes.
std::string csv_escape(const std::string& field);

/// Write rows as CSV (header + one line per row) or JSON lines, atomically
/// built in memory first. format is "csv" or "json". Throws io_error on an
/// unwritable path and invalid_argument on empty rows or unknown format.
void emit_report(const std::vector<ReportRow>& rows, const std::string& format,
                 const std::string& path);

/// Companion plot file, always CSV: series,x,y,y_lo,y_hi.
void emit_series(const std::vector<SeriesPoint>& points, const std::string& path);

/// Parse a CSV report written by emit_report (header checked literally).
std::vector<ReportRow> read_report_csv(const std::string& path);

/// Write a small text/json document to a file (io_error on failure).
void write_text_file(const std::string& path, const std::string& text);

}  // namespace mpcov
