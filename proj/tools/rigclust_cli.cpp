// rigclust: simulate random intersection graphs, evaluate the limiting
// clustering spectrum, and compare the two.
//
// Exit codes: 0 success, 1 usage, 2 data error, 3 edge budget exceeded.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "rigclust/config.hpp"
#include "rigclust/error.hpp"
#include "rigclust/experiment.hpp"
#include "rigclust/format.hpp"
#include "rigclust/mixed_poisson.hpp"
#include "rigclust/spectrum.hpp"
#include "rigclust/theory.hpp"

namespace fs = std::filesystem;
using namespace rigclust;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kBudget = 3 };

// Config file plus one flag per config key; flags win.
struct ConfigOptions {
  std::string path;
  std::map<std::string, std::string> overrides;
  std::vector<std::string> sets;

  void attach(CLI::App* app) {
    app->add_option("-c,--config", path, "key = value config file")->check(CLI::ExistingFile);
    for (const std::string& key : config_keys()) {
      std::string flag = key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      // Single-letter keys get a short flag (-n, -m) as CLI11 reserves -- for longer names.
      const std::string name = flag.size() == 1 ? "-" + flag : "--" + flag;
      app->add_option_function<std::string>(
          name, [this, key](const std::string& v) { overrides[key] = v; },
          "override config key " + key);
    }
    app->add_option("--set", sets, "override any key: --set key=value");
  }

  ExperimentConfig load() const {
    ExperimentConfig c = path.empty() ? ExperimentConfig{} : load_config(path);
    for (const auto& [k, v] : overrides) apply_setting(c, k, v);
    for (const std::string& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw DataError("--set expects key=value, got '" + kv + "'");
      apply_setting(c, kv.substr(0, eq), kv.substr(eq + 1));
    }
    c.validate();
    return c;
  }
};

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  if (const fs::path parent = fs::path(path).parent_path(); !parent.empty())
    fs::create_directories(parent);
  file.open(path);
  if (!file) throw DataError("cannot write '" + path + "'");
  return file;
}

TheoryOptions theory_options(const ExperimentConfig& c) {
  TheoryOptions t;
  t.k_max = c.pmf_k_max;
  t.tol = c.tol;
  t.count_tol = c.count_tol;
  t.threads = c.threads;
  return t;
}

void write_pmf_file(const fs::path& path, const Pmf& p) {
  std::ofstream f(path);
  write_pmf_csv(f, p);
  if (!f) throw DataError("cannot write " + path.string());
}

int cmd_theory(const ConfigOptions& co, const std::string& out, const std::string& pmf_dir) {
  const ExperimentConfig c = co.load();
  const ModelParams params = c.params();
  const LimitLaws laws = limit_laws(params, theory_options(c));
  const TheoryCurve curve = theory_curve(params, laws, c.k_min, c.k_max, c.crossover);
  std::ofstream file;
  write_theory_csv(open_out(out, file), curve);
  if (!pmf_dir.empty()) {
    fs::create_directories(pmf_dir);
    const fs::path d(pmf_dir);
    write_pmf_file(d / "lambda0_1.csv", laws.lambda0_1);
    write_pmf_file(d / "lambda0_2.csv", laws.lambda0_2);
    write_pmf_file(d / "tau.csv", laws.tau);
    write_pmf_file(d / "dstar_1.csv", laws.dstar_1);
    write_pmf_file(d / "dstar_2.csv", laws.dstar_2);
    write_pmf_file(d / "lambda1_2.csv", laws.lambda1_2);
    write_pmf_file(d / "lambda1_3.csv", laws.lambda1_3);
    write_pmf_file(d / "triangle_law.csv", laws.triangle_law);
    write_pmf_file(d / "cherry_law.csv", laws.cherry_law);
  }
  if (params.power_law_regime()) {
    const double delta = delta_exponent(params.x_law().tail_index(), params.y_law().tail_index());
    std::cerr << "delta = " << format_double(delta)
              << ", ratio constant c = " << format_double(ratio_constant(params));
    if (delta < 0.0) std::cerr << " (negative delta)";
    std::cerr << '\n';
  }
  return kOk;
}

int cmd_simulate(const ConfigOptions& co, const std::string& export_edges) {
  const ExperimentConfig c = co.load();
  const SimulationResult sim = simulate(c);
  fs::create_directories(c.output_dir);
  {
    std::ofstream f(fs::path(c.output_dir) / "spectrum.csv");
    write_spectrum_csv(f, sim.pooled);
  }
  if (c.save_replicates) {
    const fs::path d = fs::path(c.output_dir) / "replicates";
    fs::create_directories(d);
    for (std::size_t r = 0; r < sim.replicates.size(); ++r) {
      if (!sim.replicates[r]) continue;
      char name[32];
      std::snprintf(name, sizeof name, "replicate_%04zu.csv", r);
      std::ofstream f(d / name);
      write_spectrum_csv(f, *sim.replicates[r]);
    }
  }
  if (!export_edges.empty()) {
    const BipartiteSample b = sample_bipartite(c.params(), replicate_seed(c.seed, 0), c.generator, c.threads);
    std::ofstream f(export_edges);
    write_edge_list(f, project(b, c.edge_budget, c.threads));
  }
  std::cerr << "replicates: " << sim.succeeded << " succeeded, " << sim.failed << " failed\n";
  return kOk;
}

int cmd_compare(const ConfigOptions& co) {
  const ExperimentConfig c = co.load();
  const ComparisonReport rep = run(c);
  write_report(rep, c.output_dir);
  std::cerr << "report written to " << c.output_dir << " (config " << rep.config_hash << ", "
            << rep.replicates_succeeded << "/" << rep.replicates_requested << " replicates)\n";
  if (rep.max_C_gap) std::cerr << "max |C_pred - C_hat| = " << format_double(*rep.max_C_gap) << '\n';
  return kOk;
}

std::vector<std::pair<double, double>> read_points(const std::string& path, const std::string& x_col,
                                                   const std::string& y_col) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": empty file");
  auto split = [](const std::string& s) {
    std::vector<std::string> f;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (!s.empty() && s.back() == ',') f.emplace_back();
    return f;
  };
  const auto header = split(line);
  auto col = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw DataError(path + ": no column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t xi = col(x_col), yi = col(y_col);
  std::vector<std::pair<double, double>> pts;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() <= std::max(xi, yi)) throw DataError(path + ": short row at line " + std::to_string(line_no));
    if (f[xi].empty() || f[yi].empty()) continue;  // absent values
    try {
      pts.emplace_back(std::stod(f[xi]), std::stod(f[yi]));
    } catch (const std::exception&) {
      throw DataError(path + ": bad number at line " + std::to_string(line_no));
    }
  }
  return pts;
}

int cmd_fit(const std::string& input, const std::string& x_col, const std::string& y_col, double lo,
            double hi) {
  const auto pts = read_points(input, x_col, y_col);
  const FitResult f = fit_delta(pts, lo, hi);
  std::cout << "slope,intercept,r2,points\n"
            << format_double(f.slope) << ',' << format_double(f.intercept) << ','
            << format_double(f.r2) << ',' << f.points << '\n';
  return kOk;
}

int cmd_stats(const std::string& edges, const std::string& out, unsigned threads) {
  std::ifstream in(edges);
  if (!in) throw DataError("cannot open '" + edges + "'");
  const ProjectedGraph g = read_edge_list(in);
  if (g.num_edges() == 0) std::cerr << "warning: " << edges << " contains no edges\n";
  std::ofstream file;
  write_spectrum_csv(open_out(out, file), spectrum(g, threads));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random intersection graph clustering workbench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  ConfigOptions theory_cfg, simulate_cfg, compare_cfg;
  std::string theory_out, pmf_dir, export_edges, fit_input, x_col = "k", y_col = "value",
                                                             stats_out, stats_in;
  double fit_lo = 0.0, fit_hi = std::numeric_limits<double>::infinity();
  unsigned stats_threads = 0;

  auto* theory = app.add_subcommand("theory", "limit clustering curves as CSV");
  theory_cfg.attach(theory);
  theory->add_option("-o,--out", theory_out, "output CSV (default stdout)");
  theory->add_option("--dump-pmfs", pmf_dir, "directory for the component pmf CSVs");

  auto* simulate_cmd = app.add_subcommand("simulate", "pooled clustering spectrum of simulated graphs");
  simulate_cfg.attach(simulate_cmd);
  simulate_cmd->add_option("--export-edges", export_edges, "write replicate 0 as an edge list");

  auto* compare = app.add_subcommand("compare", "simulate + theory + report");
  compare_cfg.attach(compare);

  auto* fit = app.add_subcommand("fit-delta", "log-log least-squares slope of a CSV column");
  fit->add_option("input", fit_input, "CSV file with a header row")->required();
  fit->add_option("--x", x_col, "abscissa column (default k)");
  fit->add_option("--y", y_col, "value column (default value)");
  fit->add_option("--k-lo", fit_lo, "window lower end");
  fit->add_option("--k-hi", fit_hi, "window upper end");

  auto* stats = app.add_subcommand("stats", "clustering spectrum of an edge list");
  stats->add_option("edges", stats_in, "whitespace edge list")->required();
  stats->add_option("-o,--out", stats_out, "output CSV (default stdout)");
  stats->add_option("--threads", stats_threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*theory) return cmd_theory(theory_cfg, theory_out, pmf_dir);
    if (*simulate_cmd) return cmd_simulate(simulate_cfg, export_edges);
    if (*compare) return cmd_compare(compare_cfg);
    if (*fit) return cmd_fit(fit_input, x_col, y_col, fit_lo, fit_hi);
    if (*stats) return cmd_stats(stats_in, stats_out, stats_threads);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}
