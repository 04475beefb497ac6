// Copyright 2026 The parrep Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "parrep/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "parrep/error.hpp"
#include "parrep/rng.hpp"
#include "parrep/spectral.hpp"

namespace parrep {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "potential",      "beta",           "table.path",
      "wells",          "well.lo",        "well.hi",
      "well.minimum",   "dt",             "replicas",
      "fig3.replicas",  "fig3.t_phase",   "t_corr",
      "k_corr",         "t_phase",        "k_phase",
      "realizations",   "seed",           "mu0",
      "mu0_phase",      "x0",             "stop.abs",
      "spectral.grid",  "spectral.modes", "max_steps",
      "relaunch_cap",   "ci.method",      "validate.criteria",
      "fault.lambda2_scale",
  };
  return keys;
}

Config defaults_for(Experiment e) {
  Config c;
  c.set("potential", "harmonic");
  c.set("beta", "1");
  c.set("wells", "single");
  c.set("well.lo", "-1");
  c.set("well.hi", "1");
  c.set("well.minimum", "0");
  c.set("dt", "0.0001");
  c.set("seed", "1");
  c.set("spectral.grid", std::to_string(kDefaultGridIntervals));
  c.set("spectral.modes", std::to_string(kDefaultModes));
  c.set("max_steps", "200000000");
  c.set("relaunch_cap", "1000000");
  c.set("ci.method", "normal");
  c.set("realizations", "1000");
  switch (e) {
    case Experiment::kSpectrum:
      break;
    case Experiment::kSerial:
      c.set("mu0", "dirac:0.1");
      c.set("x0", "0");
      c.set("stop.abs", "9");
      break;
    case Experiment::kParRep:
      c.set("replicas", "100");
      c.set("k_corr", "5");
      c.set("k_phase", "5");
      c.set("mu0", "dirac:0.1");
      c.set("mu0_phase", "minimum");
      c.set("x0", "0");
      c.set("stop.abs", "9");
      break;
    case Experiment::kFig3:
      c.set("fig3.replicas", "100,1000");
      c.set("fig3.t_phase", "0.05,0.1,0.2");
      c.set("realizations", "2000");
      c.set("mu0_phase", "dirac:0.1");
      break;
    case Experiment::kFig4:
      c.set("potential", "cosine");
      c.set("wells", "lattice");
      c.set("replicas", "100");
      c.set("dt", "0.001");
      c.set("realizations", "500");
      c.set("k_corr", "5");
      c.set("k_phase", "5");
      c.set("x0", "0");
      c.set("stop.abs", "9");
      break;
    case Experiment::kQsdExitLaw:
      c.set("realizations", "5000");
      c.set("mu0", "qsd");
      break;
    case Experiment::kValidate:
      c.set("validate.criteria", "all");
      c.set("fault.lambda2_scale", "1");
      break;
  }
  return c;
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const char* b = v.data();
  const char* e = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(b, e, out);
  if (ec != std::errc() || ptr != e || !std::isfinite(out)) {
    throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
  }
  return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const char* b = v.data();
  const char* e = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(b, e, out);
  if (ec != std::errc() || ptr != e) {
    // Accept integral values written in floating form, e.g. 1e5.
    const double d = to_double(key, v);
    if (d < 0.0 || d != std::floor(d) || d > 1.8e19) {
      throw ConfigError("config: '" + key + "' expects a non-negative integer, got '" + v + "'");
    }
    return static_cast<std::uint64_t>(d);
  }
  return out;
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::string_view rest = v;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto item = trim(rest.substr(0, comma));
    if (item.empty()) throw ConfigError("config: empty item in list '" + key + "'");
    out.push_back(to_double(key, std::string(item)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (out.empty()) throw ConfigError("config: '" + key + "' expects a list");
  return out;
}

Potential load_table(const std::string& path, double beta) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open table.path '" + path + "'");
  std::vector<double> xs;
  std::vector<double> vs;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::string s(t);
    for (char& ch : s) {
      if (ch == ',') ch = ' ';
    }
    std::istringstream is(s);
    double x = 0.0;
    double v = 0.0;
    if (!(is >> x >> v)) throw ConfigError("config: malformed table row '" + s + "'");
    xs.push_back(x);
    vs.push_back(v);
  }
  if (xs.size() < 3) throw ConfigError("config: table needs at least 3 rows");
  const double h = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double expect = xs.front() + h * static_cast<double>(i);
    if (std::abs(xs[i] - expect) > 1e-9 * std::max(1.0, std::abs(h) * xs.size())) {
      throw ConfigError("config: table grid must be uniform");
    }
  }
  try {
    return Potential::table(
        std::make_shared<CubicTable>(xs.front(), xs.back(), std::move(vs)), beta);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ec == std::errc() ? ptr : buf.data());
}

//---------------------------------------------------------------------------//
// Config
//---------------------------------------------------------------------------//

Config Config::parse(std::string_view text, std::string_view origin) {
  Config c;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto line = trim(text.substr(0, nl));
    ++line_no;
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      std::ostringstream os;
      os << origin << ":" << line_no << ": expected key = value";
      throw ConfigError(os.str());
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) {
      std::ostringstream os;
      os << origin << ":" << line_no << ": empty key";
      throw ConfigError(os.str());
    }
    c.set(std::string(key), std::string(value));
  }
  return c;
}

Config Config::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

void Config::set(std::string key, std::string value) {
  entries_[std::move(key)] = std::move(value);
}

void Config::assign(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("config: expected key=value, got '" + std::string(assignment) + "'");
  }
  const auto key = trim(assignment.substr(0, eq));
  if (key.empty()) throw ConfigError("config: empty key in assignment");
  set(std::string(key), std::string(trim(assignment.substr(eq + 1))));
}

void Config::merge(const Config& other) {
  for (const auto& [k, v] : other.entries_) entries_[k] = v;
}

std::optional<std::string> Config::get(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

//---------------------------------------------------------------------------//
// Experiments and laws
//---------------------------------------------------------------------------//

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::kSpectrum:
      return "spectrum";
    case Experiment::kSerial:
      return "serial";
    case Experiment::kParRep:
      return "parrep";
    case Experiment::kFig3:
      return "fig3";
    case Experiment::kFig4:
      return "fig4";
    case Experiment::kQsdExitLaw:
      return "qsd-exit-law";
    case Experiment::kValidate:
      return "validate";
  }
  return "unknown";
}

Experiment parse_experiment(std::string_view name) {
  if (name == "spectrum") return Experiment::kSpectrum;
  if (name == "serial") return Experiment::kSerial;
  if (name == "parrep") return Experiment::kParRep;
  if (name == "fig3") return Experiment::kFig3;
  if (name == "fig4") return Experiment::kFig4;
  if (name == "qsd-exit-law") return Experiment::kQsdExitLaw;
  if (name == "validate" || name == "validate-all") return Experiment::kValidate;
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

LawSpec parse_law(std::string_view text) {
  const auto t = trim(text);
  if (t == "qsd") return {LawSpec::Kind::kQsd, 0.0};
  if (t == "minimum") return {LawSpec::Kind::kMinimum, 0.0};
  if (t.substr(0, 6) == "dirac:") {
    return {LawSpec::Kind::kDirac, to_double("law", std::string(t.substr(6)))};
  }
  throw ConfigError("config: law must be dirac:<x>, qsd or minimum, got '" +
                    std::string(t) + "'");
}

std::string format_law(const LawSpec& law) {
  switch (law.kind) {
    case LawSpec::Kind::kQsd:
      return "qsd";
    case LawSpec::Kind::kMinimum:
      return "minimum";
    case LawSpec::Kind::kDirac:
      return "dirac:" + format_double(law.x);
  }
  return "";
}

std::string ExperimentConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const auto& [k, v] : resolved) {
    for (char ch : k + "=" + v + "\n") {
      h ^= static_cast<unsigned char>(ch);
      h *= 0x100000001b3ull;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExperimentConfig resolve_config(Experiment experiment, const Config& user) {
  for (const auto& [k, v] : user.entries()) {
    if (!known_keys().count(k)) throw ConfigError("config: unknown key '" + k + "'");
  }
  for (const auto& [t, k] : {std::pair<std::string, std::string>{"t_corr", "k_corr"},
                             {"t_phase", "k_phase"}}) {
    if (user.has(t) && user.has(k)) {
      throw ConfigError("config: give exactly one of " + t + " and " + k);
    }
  }

  Config merged = defaults_for(experiment);
  // A user-supplied absolute time replaces a default multiplier and vice
  // versa.
  Config filtered;
  for (const auto& [k, v] : merged.entries()) {
    if ((k == "k_corr" && user.has("t_corr")) || (k == "t_corr" && user.has("k_corr")) ||
        (k == "k_phase" && user.has("t_phase")) || (k == "t_phase" && user.has("k_phase"))) {
      continue;
    }
    filtered.set(k, v);
  }
  filtered.merge(user);
  const auto& e = filtered.entries();
  const auto str = [&](const std::string& k) { return e.at(k); };
  const auto num = [&](const std::string& k) { return to_double(k, e.at(k)); };
  const auto u64 = [&](const std::string& k) { return to_u64(k, e.at(k)); };

  ExperimentConfig cfg;
  cfg.experiment = experiment;
  cfg.resolved = e;

  const double beta = num("beta");
  if (!(beta > 0.0)) throw ConfigError("config: beta must be positive");
  cfg.potential_name = str("potential");
  if (cfg.potential_name == "harmonic") {
    cfg.potential = Potential::harmonic(4.0, beta);
  } else if (cfg.potential_name == "cosine") {
    cfg.potential = Potential::cosine(2.0, std::numbers::pi, beta);
  } else if (cfg.potential_name == "flat") {
    cfg.potential = Potential::flat(beta);
  } else if (cfg.potential_name == "table") {
    if (!e.count("table.path")) throw ConfigError("config: potential=table needs table.path");
    cfg.potential = load_table(str("table.path"), beta);
  } else {
    throw ConfigError("config: unknown potential '" + cfg.potential_name + "'");
  }

  const std::string wells = str("wells");
  if (wells == "single") {
    cfg.lattice = false;
    cfg.well = WellSpec{0, num("well.lo"), num("well.hi"), num("well.minimum")};
  } else if (wells == "lattice") {
    cfg.lattice = true;
    cfg.well = WellMap::periodic_lattice().well(0);
  } else {
    throw ConfigError("config: wells must be single or lattice");
  }
  try {
    cfg.well.validate();
  } catch (const InvalidArgument& ex) {
    throw ConfigError(std::string("config: ") + ex.what());
  }

  cfg.dt = num("dt");
  if (!(cfg.dt > 0.0)) throw ConfigError("config: dt must be positive");
  cfg.seed = u64("seed");
  cfg.realizations = u64("realizations");
  if (cfg.realizations == 0 && experiment != Experiment::kSpectrum &&
      experiment != Experiment::kValidate) {
    throw ConfigError("config: realizations must be at least 1");
  }
  cfg.grid = u64("spectral.grid");
  cfg.modes = u64("spectral.modes");
  if (cfg.grid < 200) throw ConfigError("config: spectral.grid must be >= 200");
  if (cfg.modes < 2 || cfg.modes + 1 >= cfg.grid) {
    throw ConfigError("config: spectral.modes must be in [2, grid - 2]");
  }
  const auto max_steps = u64("max_steps");
  if (max_steps == 0 || max_steps > (1ull << 62)) {
    throw ConfigError("config: max_steps out of range");
  }
  cfg.max_steps = static_cast<std::int64_t>(max_steps);
  const auto cap = u64("relaunch_cap");
  if (cap > kMaxStreamAttempt) throw ConfigError("config: relaunch_cap too large");
  cfg.relaunch_cap = static_cast<std::uint32_t>(cap);
  const std::string ci = str("ci.method");
  if (ci != "normal" && ci != "wilson") {
    throw ConfigError("config: ci.method must be normal or wilson");
  }
  cfg.wilson = ci == "wilson";

  if (e.count("replicas")) {
    cfg.n_replicas = u64("replicas");
    if (cfg.n_replicas < 1 || cfg.n_replicas - 1 > kMaxStreamSlot) {
      throw ConfigError("config: replicas out of range");
    }
  }
  if (e.count("mu0")) cfg.mu0 = parse_law(str("mu0"));
  if (e.count("mu0_phase")) cfg.mu0_phase = parse_law(str("mu0_phase"));
  if (e.count("x0")) cfg.x0 = num("x0");
  if (e.count("stop.abs")) cfg.stop_abs = num("stop.abs");

  if (experiment == Experiment::kFig3) {
    for (double n : to_list("fig3.replicas", str("fig3.replicas"))) {
      if (!(n >= 1.0) || n != std::floor(n) || n - 1.0 > kMaxStreamSlot) {
        throw ConfigError("config: fig3.replicas must hold positive integers");
      }
      cfg.fig3_replicas.push_back(static_cast<std::size_t>(n));
    }
    cfg.fig3_t_phase = to_list("fig3.t_phase", str("fig3.t_phase"));
    for (double t : cfg.fig3_t_phase) {
      if (!(t > 0.0)) throw ConfigError("config: fig3.t_phase must be positive");
    }
  }

  if (experiment == Experiment::kValidate) {
    const std::string list = str("validate.criteria");
    if (list != "all" && !list.empty()) {
      for (double c : to_list("validate.criteria", list)) {
        if (c < 1 || c > 11 || c != std::floor(c)) {
          throw ConfigError("config: validate.criteria holds ids 1..11");
        }
        cfg.criteria.push_back(static_cast<int>(c));
      }
    }
    cfg.fault_lambda2_scale = num("fault.lambda2_scale");
    if (!(cfg.fault_lambda2_scale > 0.0)) {
      throw ConfigError("config: fault.lambda2_scale must be positive");
    }
  }

  const bool needs_times = experiment == Experiment::kParRep ||
                           experiment == Experiment::kFig4;
  if (needs_times) {
    if (e.count("t_corr")) cfg.t_corr_given = num("t_corr");
    if (e.count("k_corr")) cfg.k_corr_given = num("k_corr");
    if (e.count("t_phase")) cfg.t_phase_given = num("t_phase");
    if (e.count("k_phase")) cfg.k_phase_given = num("k_phase");
    if (cfg.t_corr_given.has_value() == cfg.k_corr_given.has_value() ||
        cfg.t_phase_given.has_value() == cfg.k_phase_given.has_value()) {
      throw ConfigError("config: give exactly one of t_corr/k_corr and of t_phase/k_phase");
    }
    if (cfg.k_corr_given || cfg.k_phase_given) {
      const Spectrum spec = eigensolve(cfg.potential, cfg.well, cfg.grid, 2);
      cfg.gap = spec.eigenvalue(1) - spec.eigenvalue(0);
      cfg.resolved["derived.lambda1"] = format_double(spec.eigenvalue(0));
      cfg.resolved["derived.lambda2"] = format_double(spec.eigenvalue(1));
      cfg.resolved["derived.gap"] = format_double(cfg.gap);
    }
    cfg.t_corr = cfg.t_corr_given ? *cfg.t_corr_given : *cfg.k_corr_given / cfg.gap;
    cfg.t_phase = cfg.t_phase_given ? *cfg.t_phase_given : *cfg.k_phase_given / cfg.gap;
    if (!(cfg.t_corr > 0.0) || !(cfg.t_phase > 0.0)) {
      throw ConfigError("config: t_corr and t_phase must be positive");
    }
    const auto corr_steps = std::llround(cfg.t_corr / cfg.dt);
    const auto phase_steps = std::llround(cfg.t_phase / cfg.dt);
    if (corr_steps < 1 || phase_steps < 1) {
      throw ConfigError("config: t_corr and t_phase must cover at least one step");
    }
    cfg.resolved["derived.t_corr"] = format_double(cfg.t_corr);
    cfg.resolved["derived.t_phase"] = format_double(cfg.t_phase);
    cfg.resolved["derived.corr_steps"] = std::to_string(corr_steps);
    cfg.resolved["derived.phase_steps"] = std::to_string(phase_steps);
  }
  cfg.resolved["experiment"] = std::string(to_string(experiment));
  return cfg;
}

}  // namespace parrep
