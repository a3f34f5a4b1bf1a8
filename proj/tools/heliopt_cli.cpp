// Copyright 2026 The heliopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// heliopt: command-line front end for the 3-DOF helicopter workbench.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 numerical failure
// (including an unstable simulation), 3 statistics undefined for the input.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "heliopt/campaign.hpp"
#include "heliopt/config.hpp"
#include "heliopt/csv_export.hpp"
#include "heliopt/errors.hpp"
#include "heliopt/experiments.hpp"
#include "heliopt/statistics.hpp"

namespace fs = std::filesystem;
using namespace heliopt;

namespace {

enum ExitCode : int { kOk = 0, kConfig = 1, kNumerical = 2, kUndefined = 3 };

struct GlobalOptions {
  std::string config_path;
  std::string output_dir = "heliopt_out";
  std::optional<std::uint64_t> seed;
};

WorkbenchConfig load(const GlobalOptions& g) {
  WorkbenchConfig c = g.config_path.empty() ? WorkbenchConfig{} : load_config(g.config_path);
  if (g.seed) c.swarm.seed = *g.seed;
  return c;
}

std::ofstream open_file(const fs::path& p) {
  fs::create_directories(p.parent_path());
  std::ofstream f(p);
  if (!f) throw ConfigError("cannot write " + p.string());
  return f;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::logic_error&) {
      throw ConfigError("parameters: not a number: '" + item + "'");
    }
  }
  return v;
}

std::string join(std::span<const double> v) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  return out.str();
}

// --- simulate ---------------------------------------------------------------

struct SimulateOptions {
  std::string scenario;
  std::string controller = "fuzzy";
  std::string parameters_file;
  std::optional<double> mass_scale;
};

int run_simulate(const GlobalOptions& g, const SimulateOptions& o) {
  WorkbenchConfig c = load(g);
  Scenario scenario = o.scenario.empty() ? c.scenario : Scenario::by_name(o.scenario);
  if (!o.scenario.empty()) scenario.mass_model = c.scenario.mass_model;
  if (o.mass_scale) {
    scenario.mass_scale = *o.mass_scale;
    scenario.label += "_m" + std::to_string(static_cast<int>(*o.mass_scale * 100 + 0.5));
  }
  scenario.validate();

  ControllerSpec chosen;
  if (o.controller == "fuzzy") {
    FuzzyParameters p = c.controller;
    if (!o.parameters_file.empty()) {
      std::ifstream in(o.parameters_file);
      if (!in) throw ConfigError("cannot read " + o.parameters_file);
      std::string text((std::istreambuf_iterator<char>(in)), {});
      const std::vector<double> v = parse_list(text);
      if (v.size() != kParameterCount) {
        throw ConfigError("parameters file needs " + std::to_string(kParameterCount) +
                          " comma-separated values");
      }
      p = decode(v);
    }
    chosen = p;
  } else if (o.controller == "pid") {
    chosen = c.pid;
  } else {
    throw ConfigError("--controller must be fuzzy or pid");
  }

  SimulationOptions sim;
  sim.model = c.model;
  sim.seed = c.swarm.seed;
  const RunRecord rec = simulate(scenario, chosen, sim);

  const fs::path dir = g.output_dir;
  const std::string stem = scenario.label + "_" + o.controller + "_seed" + std::to_string(sim.seed);
  {
    std::ofstream f = open_file(dir / (stem + "_run.csv"));
    write_run_csv(f, rec);
  }
  emit_plot_data(rec, dir, stem);
  {
    std::ofstream f = open_file(dir / (stem + "_summary.txt"));
    write_run_summary(f, rec);
  }
  write_run_summary(std::cout, rec);
  if (!rec.stable) {
    std::cerr << "heliopt: simulation became unstable after " << rec.steps_completed << " of "
              << rec.steps_expected << " steps\n";
    return kNumerical;
  }
  return kOk;
}

// --- optimize ---------------------------------------------------------------

struct OptimizeOptions {
  std::string algorithm = "mpso";
  std::optional<std::size_t> iterations;
  std::optional<std::size_t> population;
  std::optional<std::size_t> threads;
};

void apply_swarm_overrides(SwarmConfig& s, const OptimizeOptions& o) {
  if (o.iterations) s.iterations = *o.iterations;
  if (o.population) s.population = *o.population;
  if (o.threads) s.threads = *o.threads;
  s.validate();
}

int run_optimize(const GlobalOptions& g, const OptimizeOptions& o) {
  WorkbenchConfig c = load(g);
  apply_swarm_overrides(c.swarm, o);
  const Algorithm algorithm = parse_algorithm(o.algorithm);
  const OptimizationSettings settings{c.swarm, c.bounds, c.scenario, c.model};
  const OptimizationRun r = optimize(algorithm, c.swarm.seed, settings);

  const fs::path dir = g.output_dir;
  {
    std::ofstream f = open_file(dir / trace_file_name(c.scenario.label, algorithm, r.seed));
    write_trace_csv(f, r.trace);
  }
  const std::string stem = c.scenario.label + "_" + std::string(algorithm_name(algorithm)) +
                           "_seed" + std::to_string(r.seed);
  {
    std::ofstream f = open_file(dir / (stem + "_parameters.txt"));
    f << join(r.best_position) << '\n';
  }
  std::cout << std::setprecision(10) << "algorithm = " << algorithm_name(algorithm) << '\n'
            << "seed = " << r.seed << '\n'
            << "best_cost = " << r.final_cost << '\n'
            << "evaluations = " << r.evaluations << '\n'
            << "wall_seconds = " << r.wall_seconds << '\n'
            << "parameters = " << join(r.best_position) << '\n';
  return kOk;
}

// --- campaign ---------------------------------------------------------------

struct CampaignOptions {
  OptimizeOptions swarm;
  std::optional<std::size_t> runs;
  std::optional<std::size_t> workers;
  std::vector<std::string> algorithms{"mpso", "pso"};
};

int run_campaign_cmd(const GlobalOptions& g, const CampaignOptions& o) {
  WorkbenchConfig c = load(g);
  apply_swarm_overrides(c.swarm, o.swarm);

  CampaignSettings settings;
  settings.algorithms.clear();
  for (const std::string& a : o.algorithms) settings.algorithms.push_back(parse_algorithm(a));
  settings.seeds = c.seeds;
  if (o.runs) {
    const std::uint64_t first = g.seed.value_or(1);
    settings.seeds.clear();
    for (std::size_t i = 0; i < *o.runs; ++i) settings.seeds.push_back(first + i);
  }
  settings.optimization = {c.swarm, c.bounds, c.scenario, c.model};
  settings.workers = o.workers.value_or(c.workers);

  const CampaignResult result = run_campaign(settings, [](const OptimizationRun& r) {
    std::cerr << algorithm_name(r.algorithm) << " seed " << r.seed << ": " << r.final_cost
              << " (" << std::setprecision(3) << r.wall_seconds << " s)\n"
              << std::setprecision(6);
  });
  write_campaign(result, g.output_dir);

  std::cout << std::setprecision(10);
  for (const AlgorithmRuns& a : result.algorithms) {
    std::cout << algorithm_name(a.algorithm) << ": runs = " << a.runs.size()
              << ", best = " << a.best() << ", mean = " << a.mean()
              << ", median = " << a.median() << ", mean_wall_seconds = " << a.mean_wall_seconds()
              << '\n';
  }
  return kOk;
}

// --- stats ------------------------------------------------------------------

struct StatsOptions {
  std::string campaign_dir;
  std::string pairing = "final";
};

int run_stats(const GlobalOptions& g, const StatsOptions& o) {
  const fs::path dir = o.campaign_dir.empty() ? fs::path(g.output_dir) : fs::path(o.campaign_dir);
  const CampaignResult result = load_campaign(dir);
  const AlgorithmRuns& mpso = result.of(Algorithm::kMpso);
  const AlgorithmRuns& pso = result.of(Algorithm::kPso);
  if (mpso.runs.size() != pso.runs.size()) {
    throw ConfigError("campaign has unequal run counts per algorithm");
  }

  std::vector<double> a;
  std::vector<double> b;
  if (o.pairing == "final") {
    a = mpso.final_costs();
    b = pso.final_costs();
  } else if (o.pairing == "iteration") {
    for (std::size_t i = 0; i < mpso.runs.size(); ++i) {
      const auto& ta = mpso.runs[i].trace;
      const auto& tb = pso.runs[i].trace;
      if (ta.empty() || ta.size() != tb.size()) {
        throw ConfigError("iteration pairing needs equal-length traces for every run");
      }
      for (std::size_t k = 0; k < ta.size(); ++k) {
        a.push_back(ta[k].best_cost);
        b.push_back(tb[k].best_cost);
      }
    }
  } else {
    throw ConfigError("--pairing must be final or iteration");
  }

  std::cout << std::setprecision(10);
  for (const AlgorithmRuns* r : {&mpso, &pso}) {
    std::cout << algorithm_name(r->algorithm) << ": best = " << r->best()
              << ", mean = " << r->mean() << ", median = " << r->median() << '\n';
  }

  std::vector<std::vector<double>> matrix;
  for (std::size_t i = 0; i < mpso.runs.size(); ++i) {
    matrix.push_back({mpso.runs[i].final_cost, pso.runs[i].final_cost});
  }
  if (matrix.size() >= 2) {
    const std::vector<double> ranks = friedman_ranks(matrix);
    std::cout << "friedman_rank mpso = " << ranks[0] << ", pso = " << ranks[1] << '\n';
  }

  const WilcoxonResult w = wilcoxon_signed_rank(a, b);
  std::cout << "wilcoxon pairing = " << o.pairing << ", n = " << w.n
            << ", statistic = " << w.statistic << ", w_plus = " << w.w_plus
            << ", p_value = " << w.p_value << ", method = " << (w.exact ? "exact" : "normal")
            << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"3-DOF helicopter fuzzy-controller tuning workbench"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("-c,--config", g.config_path, "INI configuration file")->check(CLI::ExistingFile);
  app.add_option("-o,--output-dir", g.output_dir, "Directory for CSV and summary output");
  app.add_option("-s,--seed", g.seed, "RNG seed (first seed for campaign --runs)");

  SimulateOptions sim;
  CLI::App* simulate_cmd = app.add_subcommand("simulate", "Run one scenario with one controller");
  simulate_cmd->add_option("--scenario", sim.scenario, "nominal | half_mass | heavy | disturbed");
  simulate_cmd->add_option("--controller", sim.controller, "fuzzy | pid")
      ->check(CLI::IsMember({"fuzzy", "pid"}));
  simulate_cmd->add_option("--parameters", sim.parameters_file,
                           "File with 25 comma-separated fuzzy parameters")
      ->check(CLI::ExistingFile);
  simulate_cmd->add_option("--mass-scale", sim.mass_scale, "Override the plant mass scale");

  OptimizeOptions opt;
  CLI::App* optimize_cmd = app.add_subcommand("optimize", "Tune the fuzzy controller once");
  auto add_swarm_flags = [](CLI::App* cmd, OptimizeOptions& o) {
    cmd->add_option("--iterations", o.iterations, "Swarm iterations");
    cmd->add_option("--population", o.population, "Swarm size");
    cmd->add_option("--threads", o.threads, "Parallel objective evaluations per run");
  };
  optimize_cmd->add_option("--algorithm", opt.algorithm, "mpso | pso")
      ->check(CLI::IsMember({"mpso", "pso"}, CLI::ignore_case));
  add_swarm_flags(optimize_cmd, opt);

  CampaignOptions camp;
  CLI::App* campaign_cmd = app.add_subcommand("campaign", "Compare optimizers over many seeds");
  add_swarm_flags(campaign_cmd, camp.swarm);
  campaign_cmd->add_option("--runs", camp.runs, "Seeds --seed .. --seed+runs-1 (default: config)");
  campaign_cmd->add_option("--workers", camp.workers, "Concurrent optimizer runs");
  campaign_cmd->add_option("--algorithms", camp.algorithms, "Subset of mpso pso")
      ->check(CLI::IsMember({"mpso", "pso"}, CLI::ignore_case));

  StatsOptions st;
  CLI::App* stats_cmd = app.add_subcommand("stats", "Wilcoxon and Friedman tests over a campaign");
  stats_cmd->add_option("--campaign", st.campaign_dir, "Campaign directory (default: output dir)");
  stats_cmd->add_option("--pairing", st.pairing, "final | iteration")
      ->check(CLI::IsMember({"final", "iteration"}));

  CLI::App* config_cmd = app.add_subcommand("config", "Print the effective configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*simulate_cmd) return run_simulate(g, sim);
    if (*optimize_cmd) return run_optimize(g, opt);
    if (*campaign_cmd) return run_campaign_cmd(g, camp);
    if (*stats_cmd) return run_stats(g, st);
    if (*config_cmd) {
      std::cout << render_config(load(g));
      return kOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "heliopt: " << e.what() << '\n';
    return kConfig;
  } catch (const ParameterError& e) {
    std::cerr << "heliopt: " << e.what() << '\n';
    return kConfig;
  } catch (const UndefinedTestError& e) {
    std::cerr << "heliopt: " << e.what() << '\n';
    return kUndefined;
  } catch (const NumericalError& e) {
    std::cerr << "heliopt: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "heliopt: " << e.what() << '\n';
    return kConfig;
  } catch (const std::out_of_range& e) {
    std::cerr << "heliopt: " << e.what() << '\n';
    return kConfig;
  }
  return kConfig;
}
