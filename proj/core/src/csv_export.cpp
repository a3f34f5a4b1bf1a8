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

#include "heliopt/csv_export.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>
#include <string_view>

#include "heliopt/errors.hpp"

namespace heliopt {
namespace {

constexpr int kPrecision = 12;

class Row {
 public:
  explicit Row(std::ostream& out) : out_(out) {}
  ~Row() { out_ << '\n'; }

  template <typename T>
  Row& operator<<(const T& v) {
    if (!first_) out_ << ',';
    first_ = false;
    out_ << v;
    return *this;
  }

 private:
  std::ostream& out_;
  bool first_ = true;
};

void prepare(std::ostream& out) { out << std::setprecision(kPrecision); }

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path.string());
  prepare(f);
  return f;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read " + path.string());
  return f;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) fields.push_back(field);
  if (!line.empty() && line.back() == sep) fields.emplace_back();
  return fields;
}

double to_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ConfigError("trailing characters in '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    throw ConfigError("not a number: '" + s + "'");
  }
}

std::uint64_t to_u64(const std::string& s) {
  try {
    return std::stoull(s);
  } catch (const std::logic_error&) {
    throw ConfigError("not an unsigned integer: '" + s + "'");
  }
}

}  // namespace

void write_run_csv(std::ostream& out, const RunRecord& record) {
  prepare(out);
  out << "t,roll,pitch,yaw,roll_d,pitch_d,yaw_d,e_roll,e_pitch,e_yaw,v1,v2,u1,u2\n";
  for (const Sample& s : record.samples) {
    Row(out) << s.t << s.state.roll << s.state.pitch << s.state.yaw << s.roll_desired
             << s.pitch_desired << s.yaw_desired << s.e_roll << s.e_pitch << s.e_yaw << s.v1
             << s.v2 << s.u1 << s.u2;
  }
}

std::vector<std::filesystem::path> emit_plot_data(const RunRecord& record,
                                                  const std::filesystem::path& dir,
                                                  const std::string& stem) {
  std::filesystem::create_directories(dir);
  const std::vector<std::filesystem::path> paths{dir / (stem + "_outputs.csv"),
                                                 dir / (stem + "_errors.csv"),
                                                 dir / (stem + "_controls.csv")};
  std::ofstream outputs = open_out(paths[0]);
  std::ofstream errors = open_out(paths[1]);
  std::ofstream controls = open_out(paths[2]);
  outputs << "t,roll,pitch,yaw,roll_d,pitch_d,yaw_d\n";
  errors << "t,e_roll,e_pitch,e_yaw\n";
  controls << "t,v1,v2,u1,u2\n";
  for (const Sample& s : record.samples) {
    Row(outputs) << s.t << s.state.roll << s.state.pitch << s.state.yaw << s.roll_desired
                 << s.pitch_desired << s.yaw_desired;
    Row(errors) << s.t << s.e_roll << s.e_pitch << s.e_yaw;
    Row(controls) << s.t << s.v1 << s.v2 << s.u1 << s.u2;
  }
  return paths;
}

void write_run_summary(std::ostream& out, const RunRecord& record) {
  prepare(out);
  out << "label = " << record.label << '\n'
      << "controller = " << record.controller << '\n'
      << "rmse = " << record.rmse << '\n'
      << "iacs = " << record.iacs << '\n'
      << "stable = " << (record.stable ? "true" : "false") << '\n'
      << "steps_completed = " << record.steps_completed << '\n'
      << "steps_expected = " << record.steps_expected << '\n'
      << "seed = " << record.seed << '\n'
      << "digest = " << record.digest << '\n';
}

void write_trace_csv(std::ostream& out, std::span<const IterationStats> trace) {
  prepare(out);
  out << "iteration,best_cost,mean_cost,w\n";
  for (const IterationStats& s : trace) {
    Row(out) << s.iteration << s.best_cost << s.mean_cost << s.inertia;
  }
}

std::vector<IterationStats> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "iteration,best_cost,mean_cost,w") {
    throw ConfigError("trace: missing header");
  }
  std::vector<IterationStats> trace;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split(line, ',');
    if (f.size() != 4) throw ConfigError("trace: expected 4 fields in '" + line + "'");
    trace.push_back({static_cast<std::size_t>(to_u64(f[0])), to_double(f[1]), to_double(f[2]),
                     to_double(f[3])});
  }
  return trace;
}

void write_campaign_summary(std::ostream& out, const CampaignResult& result) {
  prepare(out);
  out << "scenario,algorithm,seed,final_cost,evaluations,best_position\n";
  for (const AlgorithmRuns& runs : result.algorithms) {
    for (const OptimizationRun& r : runs.runs) {
      std::ostringstream pos;
      prepare(pos);
      for (std::size_t i = 0; i < r.best_position.size(); ++i) {
        pos << (i ? " " : "") << r.best_position[i];
      }
      Row(out) << result.scenario << algorithm_name(r.algorithm) << r.seed << r.final_cost << r.evaluations
               << pos.str();
    }
  }
}

void write_campaign_timing(std::ostream& out, const CampaignResult& result) {
  prepare(out);
  out << "scenario,algorithm,seed,wall_seconds\n";
  for (const AlgorithmRuns& runs : result.algorithms) {
    for (const OptimizationRun& r : runs.runs) {
      Row(out) << result.scenario << algorithm_name(r.algorithm) << r.seed << r.wall_seconds;
    }
  }
}

CampaignResult read_campaign_summary(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "scenario,algorithm,seed,final_cost,evaluations,best_position") {
    throw ConfigError("campaign summary: missing header");
  }
  CampaignResult result;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split(line, ',');
    if (f.size() != 6) throw ConfigError("campaign summary: expected 6 fields in '" + line + "'");
    if (result.algorithms.empty()) {
      result.scenario = f[0];
    } else if (f[0] != result.scenario) {
      throw ConfigError("campaign summary: mixed scenarios");
    }
    OptimizationRun r;
    r.algorithm = parse_algorithm(f[1]);
    r.seed = to_u64(f[2]);
    r.final_cost = to_double(f[3]);
    r.evaluations = static_cast<std::size_t>(to_u64(f[4]));
    std::istringstream pos(f[5]);
    for (std::string tok; pos >> tok;) r.best_position.push_back(to_double(tok));

    auto it = std::find_if(result.algorithms.begin(), result.algorithms.end(),
                           [&](const AlgorithmRuns& a) { return a.algorithm == r.algorithm; });
    if (it == result.algorithms.end()) {
      result.algorithms.push_back({r.algorithm, {}});
      it = std::prev(result.algorithms.end());
    }
    it->runs.push_back(std::move(r));
  }
  return result;
}

std::string trace_file_name(std::string_view scenario, Algorithm algorithm, std::uint64_t seed) {
  return "trace_" + std::string(scenario) + "_" + std::string(algorithm_name(algorithm)) + "_seed" + std::to_string(seed) +
         ".csv";
}

void write_campaign(const CampaignResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream f = open_out(dir / "summary.csv");
    write_campaign_summary(f, result);
  }
  {
    std::ofstream f = open_out(dir / "timing.csv");
    write_campaign_timing(f, result);
  }
  for (const AlgorithmRuns& runs : result.algorithms) {
    for (const OptimizationRun& r : runs.runs) {
      std::ofstream f = open_out(dir / trace_file_name(result.scenario, r.algorithm, r.seed));
      write_trace_csv(f, r.trace);
    }
  }
}

CampaignResult load_campaign(const std::filesystem::path& dir) {
  CampaignResult result;
  {
    std::ifstream f = open_in(dir / "summary.csv");
    result = read_campaign_summary(f);
  }
  for (AlgorithmRuns& runs : result.algorithms) {
    for (OptimizationRun& r : runs.runs) {
      const std::filesystem::path p = dir / trace_file_name(result.scenario, r.algorithm, r.seed);
      if (!std::filesystem::exists(p)) continue;
      std::ifstream f = open_in(p);
      r.trace = read_trace_csv(f);
    }
  }
  return result;
}

}  // namespace heliopt
