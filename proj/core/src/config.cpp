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

#include "heliopt/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "heliopt/errors.hpp"

namespace heliopt {
namespace {

namespace pt = boost::property_tree;

// Reads keys from one section and records which ones were seen so that
// unknown keys can be rejected afterwards.
class Section {
 public:
  Section(const pt::ptree& root, std::string name) : name_(std::move(name)) {
    if (const auto child = root.get_child_optional(name_)) node_ = &*child;
  }

  template <typename T>
  void read(const std::string& key, T& target) {
    known_.insert(key);
    if (!node_) return;
    const auto raw = node_->get_optional<std::string>(key);
    if (!raw) return;
    target = convert<T>(key, *raw);
  }

  void read_list(const std::string& key, std::vector<double>& target) {
    known_.insert(key);
    if (!node_) return;
    const auto raw = node_->get_optional<std::string>(key);
    if (!raw) return;
    target.clear();
    std::string item;
    std::istringstream ss(*raw);
    while (std::getline(ss, item, ',')) target.push_back(convert<double>(key, trim(item)));
  }

  void reject_unknown() const {
    if (!node_) return;
    for (const auto& [key, value] : *node_) {
      if (!known_.contains(key)) throw ConfigError("[" + name_ + "] unknown key '" + key + "'");
    }
  }

 private:
  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
  }

  template <typename T>
  T convert(const std::string& key, const std::string& raw) const {
    const std::string v = trim(raw);
    if constexpr (std::is_same_v<T, bool>) {
      if (v == "true" || v == "1" || v == "yes") return true;
      if (v == "false" || v == "0" || v == "no") return false;
    } else if constexpr (std::is_same_v<T, std::string>) {
      return v;
    } else {
      std::istringstream ss(v);
      T out{};
      if constexpr (std::is_unsigned_v<T>) {
        if (!v.empty() && v.front() == '-') fail(key, v);
      }
      if (ss >> out && ss.eof()) return out;
    }
    fail(key, v);
  }

  [[noreturn]] void fail(const std::string& key, const std::string& v) const {
    throw ConfigError("[" + name_ + "] " + key + ": invalid value '" + v + "'");
  }

  std::string name_;
  const pt::ptree* node_ = nullptr;
  std::set<std::string> known_;
};

template <std::size_t N>
void read_array(Section& s, const std::string& key, std::array<double, N>& target) {
  std::vector<double> v(target.begin(), target.end());
  s.read_list(key, v);
  if (v.size() != N) {
    throw ConfigError(key + ": expected " + std::to_string(N) + " values, got " +
                      std::to_string(v.size()));
  }
  std::copy(v.begin(), v.end(), target.begin());
}

void read_pid(Section& s, const std::string& axis, PidGains& g) {
  s.read(axis + "_kp", g.kp);
  s.read(axis + "_ki", g.ki);
  s.read(axis + "_kd", g.kd);
  s.read(axis + "_integral_limit", g.integral_limit);
}

MassModel parse_mass_model(const std::string& name) {
  if (name == "whole_system") return MassModel::kWholeSystem;
  if (name == "helicopter_only") return MassModel::kHelicopterOnly;
  throw ConfigError("[scenario] mass_model: expected whole_system or helicopter_only, got '" +
                    name + "'");
}

template <typename Range>
std::string join(const Range& values) {
  std::ostringstream out;
  out << std::setprecision(17);
  bool first = true;
  for (const auto& v : values) {
    out << (first ? "" : ", ") << v;
    first = false;
  }
  return out.str();
}

}  // namespace

std::string_view mass_model_name(MassModel m) {
  return m == MassModel::kWholeSystem ? "whole_system" : "helicopter_only";
}

WorkbenchConfig parse_config(std::string_view ini_text) {
  pt::ptree root;
  try {
    std::istringstream in{std::string(ini_text)};
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed INI: ") + e.what());
  }
  static const std::set<std::string> kSections{"model", "scenario", "swarm", "bounds",
                                               "pid",   "controller", "campaign"};
  for (const auto& [name, child] : root) {
    if (!kSections.contains(name)) throw ConfigError("unknown section [" + name + "]");
  }

  WorkbenchConfig c;

  Section model(root, "model");
  model.read("heli_mass", c.model.heli_mass);
  model.read("counter_mass", c.model.counter_mass);
  model.read("arm_length", c.model.arm_length);
  model.read("counter_arm", c.model.counter_arm);
  model.read("rotor_arm", c.model.rotor_arm);
  model.read("roll_inertia", c.model.roll_inertia);
  model.read("pitch_inertia", c.model.pitch_inertia);
  model.read("yaw_inertia", c.model.yaw_inertia);
  model.read("gravity", c.model.gravity);
  model.reject_unknown();

  Section scenario(root, "scenario");
  std::string name = c.scenario.label;
  scenario.read("name", name);
  c.scenario = Scenario::by_name(name);
  std::string mass_model(mass_model_name(c.scenario.mass_model));
  scenario.read("mass_scale", c.scenario.mass_scale);
  scenario.read("mass_model", mass_model);
  c.scenario.mass_model = parse_mass_model(mass_model);
  scenario.read("horizon", c.scenario.horizon);
  scenario.read("dt", c.scenario.dt);
  scenario.read("roll_stop", c.scenario.roll_stop);
  scenario.reject_unknown();

  Section swarm(root, "swarm");
  swarm.read("population", c.swarm.population);
  swarm.read("iterations", c.swarm.iterations);
  swarm.read("w0", c.swarm.w0);
  swarm.read("w_decay", c.swarm.w_decay);
  swarm.read("c1", c.swarm.c1);
  swarm.read("c2", c.swarm.c2);
  swarm.read("seed", c.swarm.seed);
  swarm.read("mpso", c.swarm.mpso_enabled);
  swarm.read("elim_percent", c.swarm.elim_percent);
  swarm.read("elim_period", c.swarm.elim_period);
  swarm.read("saturation_percent", c.swarm.saturation_percent);
  swarm.read("threads", c.swarm.threads);
  swarm.reject_unknown();

  Section bounds(root, "bounds");
  bounds.read_list("lower", c.bounds.lower);
  bounds.read_list("upper", c.bounds.upper);
  bounds.reject_unknown();
  if (c.bounds.lower.size() != kParameterCount || c.bounds.upper.size() != kParameterCount) {
    throw ConfigError("[bounds] lower and upper need " + std::to_string(kParameterCount) +
                      " values each");
  }

  Section pid(root, "pid");
  read_pid(pid, "roll", c.pid.roll);
  read_pid(pid, "yaw", c.pid.yaw);
  read_pid(pid, "pitch", c.pid.pitch);
  pid.reject_unknown();

  Section controller(root, "controller");
  std::string preset = "published_mpso";
  controller.read("preset", preset);
  if (preset == "published_mpso") {
    c.controller = published_mpso_parameters();
  } else if (preset == "published_pso") {
    c.controller = published_pso_parameters();
  } else {
    throw ConfigError("[controller] preset: expected published_mpso or published_pso, got '" +
                      preset + "'");
  }
  const ParameterVector preset_vec = encode(c.controller);
  std::vector<double> params(preset_vec.begin(), preset_vec.end());
  controller.read_list("parameters", params);
  controller.reject_unknown();
  if (params.size() != kParameterCount) {
    throw ConfigError("[controller] parameters: expected " + std::to_string(kParameterCount) +
                      " values, got " + std::to_string(params.size()));
  }
  c.controller = decode(params);

  Section campaign(root, "campaign");
  std::vector<double> seeds(c.seeds.begin(), c.seeds.end());
  campaign.read_list("seeds", seeds);
  campaign.read("workers", c.workers);
  campaign.reject_unknown();
  c.seeds.clear();
  for (double s : seeds) {
    if (s < 0 || s != std::floor(s) || s > 9.007199254740992e15) {
      throw ConfigError("[campaign] seeds: not a non-negative integer");
    }
    c.seeds.push_back(static_cast<std::uint64_t>(s));
  }

  try {
    c.model.validate();
    c.scenario.validate();
    c.swarm.validate();
    c.bounds.validate();
    c.pid.roll.validate();
    c.pid.yaw.validate();
    c.pid.pitch.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
  if (c.workers == 0) throw ConfigError("[campaign] workers must be at least 1");
  return c;
}

WorkbenchConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string render_config(const WorkbenchConfig& c) {
  std::ostringstream out;
  out << std::setprecision(17) << std::boolalpha;
  const ModelParams& m = c.model;
  out << "[model]\n"
      << "heli_mass = " << m.heli_mass << "\ncounter_mass = " << m.counter_mass
      << "\narm_length = " << m.arm_length << "\ncounter_arm = " << m.counter_arm
      << "\nrotor_arm = " << m.rotor_arm << "\nroll_inertia = " << m.roll_inertia
      << "\npitch_inertia = " << m.pitch_inertia << "\nyaw_inertia = " << m.yaw_inertia
      << "\ngravity = " << m.gravity << "\n\n";
  const Scenario& s = c.scenario;
  out << "[scenario]\n"
      << "name = " << s.label << "\nmass_scale = " << s.mass_scale
      << "\nmass_model = " << mass_model_name(s.mass_model) << "\nhorizon = " << s.horizon
      << "\ndt = " << s.dt << "\nroll_stop = " << s.roll_stop << "\n\n";
  const SwarmConfig& w = c.swarm;
  out << "[swarm]\n"
      << "population = " << w.population << "\niterations = " << w.iterations
      << "\nw0 = " << w.w0 << "\nw_decay = " << w.w_decay << "\nc1 = " << w.c1
      << "\nc2 = " << w.c2 << "\nseed = " << w.seed << "\nmpso = " << w.mpso_enabled
      << "\nelim_percent = " << w.elim_percent << "\nelim_period = " << w.elim_period
      << "\nsaturation_percent = " << w.saturation_percent << "\nthreads = " << w.threads
      << "\n\n";
  out << "[bounds]\nlower = " << join(c.bounds.lower) << "\nupper = " << join(c.bounds.upper)
      << "\n\n";
  out << "[pid]\n";
  for (const auto& [axis, g] : {std::pair<const char*, const PidGains&>{"roll", c.pid.roll},
                                {"yaw", c.pid.yaw},
                                {"pitch", c.pid.pitch}}) {
    out << axis << "_kp = " << g.kp << '\n'
        << axis << "_ki = " << g.ki << '\n'
        << axis << "_kd = " << g.kd << '\n'
        << axis << "_integral_limit = " << g.integral_limit << '\n';
  }
  out << "\n[controller]\nparameters = " << join(encode(c.controller)) << "\n\n";
  out << "[campaign]\nseeds = " << join(c.seeds) << "\nworkers = " << c.workers << '\n';
  return out.str();
}

}  // namespace heliopt
