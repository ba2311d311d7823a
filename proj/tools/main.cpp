#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mpcov/config.hpp"
#include "mpcov/distance.hpp"
#include "mpcov/ensemble.hpp"
#include "mpcov/errors.hpp"
#include "mpcov/experiments.hpp"
#include "mpcov/laguerre.hpp"
#include "mpcov/moments.hpp"
#include "mpcov/mp_law.hpp"
#include "mpcov/report.hpp"

namespace {

using namespace mpcov;

struct Table {
  std::vector<std::string> cols;
  std::vector<std::vector<double>> rows;
};

std::string render_table(const Table& table, const std::string& format) {
  std::ostringstream out;
  if (format == "csv") {
    for (size_t c = 0; c < table.cols.size(); ++c) {
      out << (c ? "," : "") << csv_escape(table.cols[c]);
    }
    out << "\n";
    for (const auto& row : table.rows) {
      for (size_t c = 0; c < row.size(); ++c) {
        out << (c ? "," : "") << format_double(row[c]);
      }
      out << "\n";
    }
  } else if (format == "json") {
    for (const auto& row : table.rows) {
      nlohmann::json obj;
      for (size_t c = 0; c < row.size(); ++c) {
        if (std::isfinite(row[c])) {
          obj[table.cols[c]] = row[c];
        } else {
          obj[table.cols[c]] = nullptr;
        }
      }
      out << obj.dump() << "\n";
    }
  } else {
    throw std::invalid_argument("unknown format: " + format);
  }
  return out.str();
}

void deliver(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
  }
}

int cmd_mp(double phi, int points, const std::string& out, const std::string& format) {
  if (points < 2) throw std::invalid_argument("--points must be >= 2");
  MPLaw law(phi);
  Table table;
  table.cols = {"t", "density", "density_plus", "cdf", "cdf_plus", "potential",
                "potential_plus"};
  const double lo = -0.25;
  const double hi = law.b() + 0.5;
  for (int i = 0; i < points; ++i) {
    const double t = lo + (hi - lo) * i / (points - 1);
    table.rows.push_back({t, law.density(t), law.density_plus(t), law.cdf(t),
                          law.cdf_plus(t), law.potential(t), law.potential_plus(t)});
  }
  deliver(render_table(table, format), out);
  return 0;
}

int cmd_laguerre(int p, double alpha, bool zeros_mode, int grid, double z_max,
                 const std::string& out, const std::string& format) {
  LaguerreSpec spec{p, alpha};
  spec.validate();
  Table table;
  if (zeros_mode) {
    table.cols = {"index", "zero"};
    const auto zeros = laguerre_zeros(spec);
    int i = 0;
    for (const auto& atom : zeros.atoms()) {
      table.rows.push_back({static_cast<double>(i++), atom.location});
    }
  } else {
    if (grid < 1) throw std::invalid_argument("--grid must be >= 1");
    if (!(z_max > 0.0)) throw std::invalid_argument("--z-max must be positive");
    table.cols = {"z", "log_abs", "sign", "envelope_log", "monic_log_abs", "monic_sign"};
    for (int j = 1; j <= grid; ++j) {
      const double z = z_max * j / grid;
      const auto lag = laguerre_eval(spec, (p + alpha) * z);
      const auto monic = monic_scaled_log(spec, z);
      table.rows.push_back({z, lag.value.log_abs, static_cast<double>(lag.value.sign),
                            envelope_rhs(spec, z, 1.0), monic.log_abs,
                            static_cast<double>(monic.sign)});
    }
  }
  deliver(render_table(table, format), out);
  return 0;
}

int cmd_sample(int p, int n, const std::string& entry, const std::string& entry_odd,
               uint64_t seed, int trials, const std::string& out,
               const std::string& format) {
  EnsembleSpec es;
  es.p = p;
  es.n = n;
  es.entry = EntryDistribution::parse(entry);
  if (!entry_odd.empty()) es.entry_odd = EntryDistribution::parse(entry_odd);
  es.master_seed = seed;
  es.validate();
  if (trials < 1) throw std::invalid_argument("--trials must be >= 1");
  Table table;
  table.cols = {"trial", "index", "eigenvalue"};
  for (int t = 0; t < trials; ++t) {
    const auto spectrum = covariance_spectrum(sample_matrix(es, static_cast<uint64_t>(t)));
    for (size_t i = 0; i < spectrum.eigenvalues.size(); ++i) {
      table.rows.push_back({static_cast<double>(t), static_cast<double>(i),
                            spectrum.eigenvalues[i]});
    }
  }
  deliver(render_table(table, format), out);
  return 0;
}

void print_findings(const ExperimentResult& result) {
  for (const auto& f : result.findings) {
    std::cerr << "finding: " << f << "\n";
  }
}

int write_experiment_outputs(const ExperimentResult& result, const ExperimentConfig& cfg) {
  print_findings(result);
  if (!result.rows.empty()) {
    emit_report(result.rows, cfg.format, cfg.out_path);
    std::cout << "wrote " << result.rows.size() << " rows to " << cfg.out_path << "\n";
    if (!result.series.empty()) {
      emit_series(result.series, cfg.out_path + ".series.csv");
      std::cout << "wrote " << result.series.size() << " series points to "
                << cfg.out_path << ".series.csv\n";
    }
    if (!result.summary_json.empty()) {
      write_text_file(cfg.out_path + ".summary.json", result.summary_json);
      std::cout << "wrote summary to " << cfg.out_path << ".summary.json\n";
    }
  } else {
    // Sweeps and check suites produce a structured summary only.
    if (!result.series.empty()) {
      emit_series(result.series, cfg.out_path + ".series.csv");
      std::cout << "wrote " << result.series.size() << " series points to "
                << cfg.out_path << ".series.csv\n";
    }
    if (!result.summary_json.empty()) {
      write_text_file(cfg.out_path, result.summary_json);
      std::cout << "wrote summary to " << cfg.out_path << "\n";
    }
  }
  return 0;
}

int cmd_moments(const ExperimentConfig& cfg) {
  const auto result = run_moment_check(cfg);
  const auto doc = nlohmann::json::parse(result.summary_json);
  for (const auto& item : doc["items"]) {
    std::cout << "[" << item["status"].get<std::string>() << "] "
              << item["name"].get<std::string>() << ": "
              << item["detail"].get<std::string>() << "\n";
  }
  std::cout << (doc["all_pass"].get<bool>() ? "all items passed" : "SOME ITEMS FAILED")
            << "\n";
  print_findings(result);
  if (!cfg.out_path.empty()) {
    write_text_file(cfg.out_path, result.summary_json);
    std::cout << "wrote summary to " << cfg.out_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covariance-ensemble limit law toolkit"};
  app.require_subcommand(1);

  // mp
  auto* mp = app.add_subcommand("mp", "Tabulate the limit law (density, CDF, potentials)");
  double mp_phi = 0.5;
  int mp_points = 129;
  std::string mp_out, mp_format = "csv";
  mp->add_option("--phi", mp_phi, "aspect ratio in (0,1]");
  mp->add_option("--points", mp_points, "grid size");
  mp->add_option("--out", mp_out, "output path (default stdout)");
  mp->add_option("--format", mp_format, "csv or json");

  // laguerre
  auto* lag = app.add_subcommand("laguerre", "Evaluate the rescaled polynomial or its zeros");
  int lag_p = 10;
  double lag_alpha = 0.0;
  bool lag_zeros = false;
  int lag_grid = 65;
  double lag_zmax = 6.0;
  std::string lag_out, lag_format = "csv";
  lag->add_option("--p", lag_p, "degree");
  lag->add_option("--alpha", lag_alpha, "parameter alpha >= 0");
  lag->add_flag("--zeros", lag_zeros, "emit the zero table instead of values");
  lag->add_option("--grid", lag_grid, "evaluation grid size");
  lag->add_option("--z-max", lag_zmax, "grid upper end");
  lag->add_option("--out", lag_out, "output path (default stdout)");
  lag->add_option("--format", lag_format, "csv or json");

  // sample
  auto* smp = app.add_subcommand("sample", "Sample covariance spectra");
  int smp_p = 50, smp_n = 100, smp_trials = 1;
  std::string smp_entry = "gaussian-real", smp_entry_odd;
  uint64_t smp_seed = 1;
  std::string smp_out, smp_format = "csv";
  smp->add_option("--p", smp_p, "rows of the entry matrix");
  smp->add_option("--n", smp_n, "columns of the entry matrix");
  smp->add_option("--entry", smp_entry, "entry law name");
  smp->add_option("--entry-odd", smp_entry_odd, "checkerboard partner law");
  smp->add_option("--seed", smp_seed, "master seed");
  smp->add_option("--trials", smp_trials, "number of matrices");
  smp->add_option("--out", smp_out, "output path (default stdout)");
  smp->add_option("--format", smp_format, "csv or json");

  // moments
  auto* mom = app.add_subcommand("moments", "Exact and statistical moment check suites");
  ExperimentConfig mom_cfg;
  mom_cfg.kind = ExperimentKind::MomentCheck;
  mom_cfg.out_path.clear();
  mom->add_option("--seed", mom_cfg.master_seed, "master seed");
  mom->add_option("--trials", mom_cfg.mc_trials, "Monte-Carlo trials for the mean check");
  mom->add_option("--bound-trials", mom_cfg.bound_trials,
                  "Monte-Carlo trials per bound battery point");
  mom->add_option("--threads", mom_cfg.threads, "worker threads (0 = hardware)");
  mom->add_option("--out", mom_cfg.out_path, "summary JSON path (optional)");

  // ldp
  auto* ldp = app.add_subcommand("ldp", "Run a configured experiment");
  std::string ldp_config;
  uint64_t ldp_seed = 0;
  int ldp_trials = 0;
  std::string ldp_out, ldp_format;
  int ldp_threads = -1;
  ldp->add_option("--config", ldp_config, "experiment config file")->required();
  auto* ldp_seed_opt = ldp->add_option("--seed", ldp_seed, "override master seed");
  auto* ldp_trials_opt = ldp->add_option("--trials", ldp_trials, "override trials per rung");
  auto* ldp_out_opt = ldp->add_option("--out", ldp_out, "override output path");
  auto* ldp_format_opt = ldp->add_option("--format", ldp_format, "override format");
  auto* ldp_threads_opt = ldp->add_option("--threads", ldp_threads, "override threads");

  // report
  auto* rep = app.add_subcommand("report", "Re-render a saved report");
  std::string rep_in, rep_out, rep_format = "json";
  rep->add_option("--in", rep_in, "saved CSV report")->required();
  rep->add_option("--out", rep_out, "output path")->required();
  rep->add_option("--format", rep_format, "csv or json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad flags are config errors
  }

  try {
    if (mp->parsed()) return cmd_mp(mp_phi, mp_points, mp_out, mp_format);
    if (lag->parsed()) {
      return cmd_laguerre(lag_p, lag_alpha, lag_zeros, lag_grid, lag_zmax, lag_out,
                          lag_format);
    }
    if (smp->parsed()) {
      return cmd_sample(smp_p, smp_n, smp_entry, smp_entry_odd, smp_seed, smp_trials,
                        smp_out, smp_format);
    }
    if (mom->parsed()) return cmd_moments(mom_cfg);
    if (ldp->parsed()) {
      ExperimentConfig cfg = load_config(ldp_config);
      if (ldp_seed_opt->count() > 0) cfg.master_seed = ldp_seed;
      if (ldp_trials_opt->count() > 0) cfg.trials = ldp_trials;
      if (ldp_out_opt->count() > 0) cfg.out_path = ldp_out;
      if (ldp_format_opt->count() > 0) cfg.format = ldp_format;
      if (ldp_threads_opt->count() > 0) cfg.threads = ldp_threads;
      cfg.validate();
      const auto result = run_experiment(cfg);
      return write_experiment_outputs(result, cfg);
    }
    if (rep->parsed()) {
      const auto rows = read_report_csv(rep_in);
      emit_report(rows, rep_format, rep_out);
      std::cout << "wrote " << rows.size() << " rows to " << rep_out << "\n";
      return 0;
    }
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const capacity_error& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 3;
  } catch (const io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
