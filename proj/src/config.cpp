#include "mpcov/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mpcov/errors.hpp"

namespace mpcov {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    long v = std::stol(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "' needs an integer, got '" + value + "'");
  }
}

uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "' needs an unsigned integer, got '" +
                                value + "'");
  }
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "' needs a real number, got '" + value +
                                "'");
  }
}

std::vector<std::string> split_ws(const std::string& value) {
  std::vector<std::string> parts;
  std::string token;
  std::istringstream in(value);
  while (in >> token) {
    // allow comma separators too
    std::string clean;
    for (char c : token) {
      if (c == ',') {
        if (!clean.empty()) parts.push_back(clean);
        clean.clear();
      } else {
        clean.push_back(c);
      }
    }
    if (!clean.empty()) parts.push_back(clean);
  }
  return parts;
}

}  // namespace

std::string experiment_kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Convergence: return "convergence";
    case ExperimentKind::Tail: return "tail";
    case ExperimentKind::LaguerreRate: return "laguerre-rate";
    case ExperimentKind::MomentCheck: return "moment-check";
    case ExperimentKind::BoundSweep: return "bound-sweep";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& name) {
  if (name == "convergence") return ExperimentKind::Convergence;
  if (name == "tail") return ExperimentKind::Tail;
  if (name == "laguerre-rate") return ExperimentKind::LaguerreRate;
  if (name == "moment-check") return ExperimentKind::MomentCheck;
  if (name == "bound-sweep") return ExperimentKind::BoundSweep;
  throw std::invalid_argument("unknown experiment kind: " + name);
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
  if (format != "csv" && format != "json") {
    throw std::invalid_argument("format must be csv or json");
  }
  const bool needs_rungs =
      kind == ExperimentKind::Convergence || kind == ExperimentKind::Tail;
  if (needs_rungs) {
    if (rungs.empty()) throw std::invalid_argument("experiment needs at least one rung");
    for (const auto& r : rungs) {
      if (r.p < 1 || r.n < r.p) {
        throw std::invalid_argument("every rung needs 1 <= p <= n");
      }
    }
  }
  if (kind == ExperimentKind::Tail) {
    if (std::isnan(delta) || std::isinf(delta) || delta < 0.0) {
      throw std::invalid_argument("tail delta must be a finite positive real (or auto)");
    }
    if (!(anchor_factor > 0.0) || !std::isfinite(anchor_factor)) {
      throw std::invalid_argument("anchor_factor must be positive and finite");
    }
    if (delta == 0.0) {  // anchor mode: the anchor rung must exist
      if (anchor_n > 0) {
        bool found = false;
        for (const auto& r : rungs) found = found || r.n == anchor_n;
        if (!found) {
          throw std::invalid_argument("anchor_n does not match any rung");
        }
      }
    }
  } else if (delta != 0.0) {
    if (std::isnan(delta) || std::isinf(delta) || delta < 0.0) {
      throw std::invalid_argument("delta must be a finite positive real");
    }
  }
  if (kind == ExperimentKind::LaguerreRate) {
    if (!(phi > 0.0 && phi <= 1.0)) throw std::invalid_argument("phi must lie in (0, 1]");
    if (p_ladder.empty()) throw std::invalid_argument("laguerre-rate needs p_ladder");
    for (int p : p_ladder) {
      if (p < 2) {
        throw std::invalid_argument("p_ladder entries must be >= 2 (log p normalization)");
      }
    }
  }
  if (kind == ExperimentKind::MomentCheck) {
    if (mc_trials < 2) throw std::invalid_argument("mc_trials must be >= 2");
    if (bound_trials < 2) throw std::invalid_argument("bound_trials must be >= 2");
  }
  if (kind == ExperimentKind::BoundSweep) {
    if (p_max < 4) throw std::invalid_argument("p_max must be >= 4");
    if (z_points < 1) throw std::invalid_argument("z_points must be >= 1");
  }
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw std::invalid_argument("config line " + std::to_string(line_no) +
                                    ": unterminated section header");
      }
      continue;  // sections organize the file; keys are globally unique
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
    }

    if (key == "kind") {
      cfg.kind = parse_experiment_kind(value);
    } else if (key == "trials") {
      cfg.trials = static_cast<int>(parse_long(key, value));
    } else if (key == "delta") {
      cfg.delta = (value == "auto") ? 0.0 : parse_real(key, value);
      if (value != "auto" && !(cfg.delta > 0.0 && std::isfinite(cfg.delta))) {
        throw std::invalid_argument("delta must be a finite positive real or 'auto'");
      }
    } else if (key == "anchor_n") {
      cfg.anchor_n = static_cast<int>(parse_long(key, value));
    } else if (key == "anchor_factor") {
      cfg.anchor_factor = parse_real(key, value);
    } else if (key == "phi") {
      cfg.phi = parse_real(key, value);
    } else if (key == "p_ladder") {
      cfg.p_ladder.clear();
      for (const auto& tok : split_ws(value)) {
        cfg.p_ladder.push_back(static_cast<int>(parse_long(key, tok)));
      }
    } else if (key == "rung") {
      auto parts = split_ws(value);
      if (parts.size() != 2) {
        throw std::invalid_argument("rung needs two integers (p n), got '" + value + "'");
      }
      RungSpec r;
      r.p = static_cast<int>(parse_long(key, parts[0]));
      r.n = static_cast<int>(parse_long(key, parts[1]));
      cfg.rungs.push_back(r);
    } else if (key == "mc_trials") {
      cfg.mc_trials = parse_long(key, value);
    } else if (key == "bound_trials") {
      cfg.bound_trials = parse_long(key, value);
    } else if (key == "p_max") {
      cfg.p_max = static_cast<int>(parse_long(key, value));
    } else if (key == "z_points") {
      cfg.z_points = static_cast<int>(parse_long(key, value));
    } else if (key == "entry") {
      cfg.entry = EntryDistribution::parse(value);
    } else if (key == "entry_odd") {
      if (value.empty() || value == "none") {
        cfg.entry_odd.reset();
      } else {
        cfg.entry_odd = EntryDistribution::parse(value);
      }
    } else if (key == "seed") {
      cfg.master_seed = parse_u64(key, value);
    } else if (key == "out") {
      cfg.out_path = value;
    } else if (key == "format") {
      cfg.format = value;
    } else if (key == "threads") {
      cfg.threads = static_cast<int>(parse_long(key, value));
    } else if (key == "timing") {
      if (value == "wall") {
        cfg.timing_wall = true;
      } else if (value == "none") {
        cfg.timing_wall = false;
      } else {
        throw std::invalid_argument("timing must be 'none' or 'wall'");
      }
    } else {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace mpcov
