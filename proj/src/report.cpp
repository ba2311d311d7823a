#include "mpcov/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "mpcov/errors.hpp"

namespace mpcov {

namespace {

constexpr const char* kHeader =
    "kind,p,n,phi,row,agg,trial,seed,dist_fs,w1,disc,ratio_fs,ratio_disc,exceed,wall_ms";

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

double parse_double_field(const std::string& s) {
  if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::strtod(s.c_str(), nullptr);
}

nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;  // NaN / inf have no JSON literal
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open for writing: " + path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out.good()) throw io_error("write failed: " + path);
}

void emit_report(const std::vector<ReportRow>& rows, const std::string& format,
                 const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("refusing to emit an empty report");
  std::string text;
  if (format == "csv") {
    std::ostringstream out;
    out << kHeader << "\n";
    for (const auto& r : rows) {
      out << csv_escape(r.kind) << ',' << r.p << ',' << r.n << ','
          << format_double(r.phi) << ',' << csv_escape(r.row) << ','
          << csv_escape(r.agg) << ',' << r.trial << ',' << r.seed << ','
          << format_double(r.dist_fs) << ',' << format_double(r.w1) << ','
          << format_double(r.disc) << ',' << format_double(r.ratio_fs) << ','
          << format_double(r.ratio_disc) << ',' << r.exceed << ','
          << format_double(r.wall_ms) << "\n";
    }
    text = out.str();
  } else if (format == "json") {
    std::ostringstream out;
    for (const auto& r : rows) {
      nlohmann::json obj;
      obj["kind"] = r.kind;
      obj["p"] = r.p;
      obj["n"] = r.n;
      obj["phi"] = json_number(r.phi);
      obj["row"] = r.row;
      obj["agg"] = r.agg;
      obj["trial"] = r.trial;
      obj["seed"] = r.seed;
      obj["dist_fs"] = json_number(r.dist_fs);
      obj["w1"] = json_number(r.w1);
      obj["disc"] = json_number(r.disc);
      obj["ratio_fs"] = json_number(r.ratio_fs);
      obj["ratio_disc"] = json_number(r.ratio_disc);
      obj["exceed"] = r.exceed;
      obj["wall_ms"] = json_number(r.wall_ms);
      out << obj.dump() << "\n";
    }
    text = out.str();
  } else {
    throw std::invalid_argument("unknown report format: " + format);
  }
  write_text_file(path, text);
}

void emit_series(const std::vector<SeriesPoint>& points, const std::string& path) {
  std::ostringstream out;
  out << "series,x,y,y_lo,y_hi\n";
  for (const auto& pt : points) {
    out << csv_escape(pt.series) << ',' << format_double(pt.x) << ','
        << format_double(pt.y) << ',' << format_double(pt.y_lo) << ','
        << format_double(pt.y_hi) << "\n";
  }
  write_text_file(path, out.str());
}

std::vector<ReportRow> read_report_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line)) throw io_error("empty report file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) throw std::invalid_argument("unrecognized report header in " + path);
  std::vector<ReportRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 15) {
      throw std::invalid_argument("malformed report line in " + path);
    }
    ReportRow r;
    r.kind = f[0];
    r.p = static_cast<int>(std::strtol(f[1].c_str(), nullptr, 10));
    r.n = static_cast<int>(std::strtol(f[2].c_str(), nullptr, 10));
    r.phi = parse_double_field(f[3]);
    r.row = f[4];
    r.agg = f[5];
    r.trial = std::strtol(f[6].c_str(), nullptr, 10);
    r.seed = std::strtoull(f[7].c_str(), nullptr, 10);
    r.dist_fs = parse_double_field(f[8]);
    r.w1 = parse_double_field(f[9]);
    r.disc = parse_double_field(f[10]);
    r.ratio_fs = parse_double_field(f[11]);
    r.ratio_disc = parse_double_field(f[12]);
    r.exceed = static_cast<int>(std::strtol(f[13].c_str(), nullptr, 10));
    r.wall_ms = parse_double_field(f[14]);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace mpcov
