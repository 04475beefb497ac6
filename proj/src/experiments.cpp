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

#include "parrep/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <numeric>

#include "parrep/error.hpp"
#include "parrep/parallel.hpp"
#include "parrep/spectral.hpp"

namespace parrep {
namespace {

using nlohmann::json;

json config_json(const ExperimentConfig& cfg) {
  json c = json::object();
  for (const auto& [k, v] : cfg.resolved) c[k] = v;
  return c;
}

json base_report(const ExperimentConfig& cfg) {
  json j;
  j["experiment"] = std::string(to_string(cfg.experiment));
  j["config"] = config_json(cfg);
  j["config_hash"] = cfg.hash();
  return j;
}

Artifact json_artifact(std::string name, const json& j) {
  return {std::move(name), j.dump(2) + "\n"};
}

InitialLaw resolve_law(const LawSpec& spec, const ExperimentConfig& cfg) {
  switch (spec.kind) {
    case LawSpec::Kind::kDirac:
      return DiracLaw{spec.x};
    case LawSpec::Kind::kMinimum:
      return DiracLaw{cfg.well.minimum};
    case LawSpec::Kind::kQsd:
      return qsd(eigensolve(cfg.potential, cfg.well, cfg.grid, cfg.modes));
  }
  return DiracLaw{cfg.well.minimum};
}

ParRepConfig parrep_config(const ExperimentConfig& cfg, InitialLaw mu0,
                           InitialLaw mu0_phase) {
  ParRepConfig pc = ParRepConfig::make(cfg.n_replicas, cfg.t_corr, cfg.t_phase,
                                       cfg.dt, std::move(mu0),
                                       std::move(mu0_phase), cfg.seed);
  pc.relaunch_cap = cfg.relaunch_cap;
  return pc;
}

IntervalMethod ci_method(const ExperimentConfig& cfg) {
  return cfg.wilson ? IntervalMethod::kWilson : IntervalMethod::kNormal;
}

json multiwell_summary(const std::vector<MultiwellResult>& runs) {
  std::vector<double> times;
  std::size_t capped = 0;
  for (const auto& r : runs) {
    if (r.capped) {
      ++capped;
    } else {
      times.push_back(r.stop_time());
    }
  }
  json j;
  j["realizations"] = runs.size();
  j["capped"] = capped;
  if (!times.empty()) {
    const EmpiricalSample s(times);
    j["mean_stop_time"] = s.mean();
    j["median_stop_time"] = s.median();
    j["stddev_stop_time"] = s.stddev();
  }
  return j;
}

}  // namespace

//---------------------------------------------------------------------------//
// Studies
//---------------------------------------------------------------------------//

std::vector<ExitEvent> simulate_exits(const Potential& p, const WellSpec& well,
                                      const InitialLaw& start, double dt,
                                      std::size_t count, std::int64_t max_steps,
                                      const StudyOptions& opt) {
  std::vector<ExitEvent> out(count);
  parallel_for(count, opt.workers, [&](std::size_t i) {
    const StreamFactory streams(opt.seed, opt.offset + i);
    auto draw = streams(StreamKey{StreamRole::kSampling, 0, 0, 0});
    const double x0 = sample(start, draw);
    auto noise = streams(StreamKey{StreamRole::kReference, 0, 0, 0});
    out[i] = run_until_exit(x0, well, p, dt, noise, max_steps);
  });
  return out;
}

std::vector<DephasedReplica> dephase_sample(const Potential& p,
                                            const WellSpec& well,
                                            const InitialLaw& law,
                                            double t_phase, double dt,
                                            std::size_t count,
                                            std::uint32_t relaunch_cap,
                                            const StudyOptions& opt) {
  ParRepConfig cfg = ParRepConfig::make(1, t_phase, t_phase, dt, law, law, opt.seed);
  cfg.relaunch_cap = relaunch_cap;
  std::vector<DephasedReplica> out(count);
  parallel_for(count, opt.workers, [&](std::size_t i) {
    const StreamFactory streams(opt.seed, opt.offset + i);
    out[i] = dephase_replica(well, p, cfg, streams, 0, 0);
  });
  return out;
}

std::vector<ParallelStepResult> parallel_steps_from(
    const Potential& p, const WellSpec& well, const InitialLaw& law,
    std::size_t n_replicas, double dt, std::size_t count,
    const StudyOptions& opt) {
  ParRepConfig cfg;
  cfg.n_replicas = n_replicas;
  cfg.dt = dt;
  cfg.corr_steps = 1;
  cfg.phase_steps = 1;
  cfg.validate();
  std::vector<ParallelStepResult> out(count);
  parallel_for(count, opt.workers, [&](std::size_t i) {
    const StreamFactory streams(opt.seed, opt.offset + i);
    std::vector<double> positions(n_replicas);
    for (std::size_t k = 0; k < n_replicas; ++k) {
      auto draw = streams(StreamKey{StreamRole::kSampling, 0,
                                    static_cast<std::uint32_t>(k), 0});
      positions[k] = sample(law, draw);
    }
    out[i] = parallel_step(positions, well, p, cfg, streams, 0);
  });
  return out;
}

Fig3Cell fig3_cell(const Potential& p, const WellSpec& well,
                   const InitialLaw& mu0_phase, std::size_t n_replicas,
                   double t_phase, double dt, std::size_t realizations,
                   std::uint32_t relaunch_cap, bool wilson,
                   const StudyOptions& opt) {
  ParRepConfig cfg = ParRepConfig::make(n_replicas, t_phase, t_phase, dt,
                                        mu0_phase, mu0_phase, opt.seed);
  cfg.relaunch_cap = relaunch_cap;
  std::vector<unsigned char> hi(realizations, 0);
  std::vector<std::uint64_t> relaunches(realizations, 0);
  parallel_for(realizations, opt.workers, [&](std::size_t i) {
    const StreamFactory streams(opt.seed, opt.offset + i);
    std::vector<double> positions(n_replicas);
    std::uint64_t total = 0;
    for (std::size_t k = 0; k < n_replicas; ++k) {
      const auto r = dephase_replica(well, p, cfg, streams, 0,
                                     static_cast<std::uint32_t>(k));
      positions[k] = r.position;
      total += r.relaunches;
    }
    const auto step = parallel_step(positions, well, p, cfg, streams, 0);
    hi[i] = step.side == BoundarySide::kHi ? 1 : 0;
    relaunches[i] = total;
  });
  Fig3Cell cell;
  cell.n_replicas = n_replicas;
  cell.t_phase = t_phase;
  cell.realizations = realizations;
  cell.exits_hi = static_cast<std::size_t>(std::count(hi.begin(), hi.end(), 1));
  cell.p_hat = static_cast<double>(cell.exits_hi) / static_cast<double>(realizations);
  cell.ci = binomial_ci(cell.exits_hi, realizations, 0.95,
                        wilson ? IntervalMethod::kWilson : IntervalMethod::kNormal);
  const double sum = static_cast<double>(
      std::accumulate(relaunches.begin(), relaunches.end(), std::uint64_t{0}));
  cell.mean_relaunches =
      sum / static_cast<double>(realizations) / static_cast<double>(n_replicas);
  return cell;
}

std::vector<MultiwellResult> serial_lattice(const Potential& p, double x0,
                                            double stop_abs, double dt,
                                            std::size_t count,
                                            std::int64_t max_steps,
                                            const StudyOptions& opt) {
  const WellMap map = WellMap::periodic_lattice();
  const AbsThreshold stop{stop_abs};
  std::vector<MultiwellResult> out(count);
  parallel_for(count, opt.workers, [&](std::size_t i) {
    const StreamFactory streams(opt.seed, opt.offset + i);
    out[i] = serial_multiwell(x0, map, p, dt, stop, streams, max_steps);
  });
  return out;
}

std::vector<MultiwellResult> parrep_lattice(const Potential& p, double x0,
                                            double stop_abs,
                                            const ParRepConfig& cfg,
                                            std::size_t count,
                                            std::int64_t max_steps,
                                            const StudyOptions& opt) {
  const WellMap map = WellMap::periodic_lattice();
  const AbsThreshold stop{stop_abs};
  std::vector<MultiwellResult> out(count);
  parallel_for(count, opt.workers, [&](std::size_t i) {
    const StreamFactory streams(opt.seed, opt.offset + i);
    out[i] = parrep_multiwell(x0, map, p, cfg, stop, streams, max_steps);
  });
  return out;
}

Fig4Samples fig4_samples(const ExperimentConfig& cfg, unsigned workers) {
  if (!cfg.lattice) throw ConfigError("fig4: requires wells=lattice");
  const ParRepConfig pc = parrep_config(cfg, DiracLaw{cfg.x0}, DiracLaw{0.0});
  const std::size_t m = cfg.realizations;
  const auto serial = serial_lattice(cfg.potential, cfg.x0, cfg.stop_abs, cfg.dt, m,
                                     cfg.max_steps, {cfg.seed, 0, workers});
  const auto accel = parrep_lattice(cfg.potential, cfg.x0, cfg.stop_abs, pc, m,
                                    cfg.max_steps, {cfg.seed, m, workers});
  Fig4Samples s;
  for (const auto& r : serial) {
    if (r.capped) {
      ++s.serial_capped;
    } else {
      s.serial.push_back(r.stop_time());
    }
  }
  for (const auto& r : accel) {
    if (r.capped) {
      ++s.parrep_capped;
    } else {
      s.parrep.push_back(r.stop_time());
    }
  }
  std::sort(s.serial.begin(), s.serial.end());
  std::sort(s.parrep.begin(), s.parrep.end());
  if (s.serial.size() >= 10 && s.parrep.size() >= 10) {
    s.ks = ks_two_sample(EmpiricalSample(s.serial), EmpiricalSample(s.parrep));
  } else {
    s.ks.p_value = 0.0;
    s.ks.statistic = 1.0;
  }
  return s;
}

//---------------------------------------------------------------------------//
// Experiments
//---------------------------------------------------------------------------//

ExperimentResult run_spectrum(const ExperimentConfig& cfg) {
  const Spectrum spec = eigensolve(cfg.potential, cfg.well, cfg.grid, cfg.modes);
  ExperimentResult res;

  CsvWriter eig(cfg, {"k", "lambda", "lambda_over_k2"});
  for (std::size_t k = 0; k < spec.modes(); ++k) {
    const double kk = static_cast<double>(k + 1);
    eig.cell(k + 1).cell(spec.eigenvalue(k)).cell(spec.eigenvalue(k) / (kk * kk));
    eig.end_row();
  }
  res.artifacts.push_back({"spectrum.csv", eig.str()});

  const QsdDensity q = qsd(spec);
  CsvWriter qcsv(cfg, {"x", "density", "cdf"});
  for (std::size_t i = 0; i < q.grid().size(); ++i) {
    qcsv.cell(q.grid()[i]).cell(q.density()[i]).cell(q.cdf_nodes()[i]);
    qcsv.end_row();
  }
  res.artifacts.push_back({"qsd.csv", qcsv.str()});

  const ExitPointLaw law = exit_point_law(spec);
  CsvWriter lcsv(cfg, {"side", "position", "mass"});
  lcsv.cell("lo").cell(cfg.well.lo).cell(law.mass_lo);
  lcsv.end_row();
  lcsv.cell("hi").cell(cfg.well.hi).cell(law.mass_hi);
  lcsv.end_row();
  res.artifacts.push_back({"exit_law.csv", lcsv.str()});

  json j = base_report(cfg);
  j["lambda1"] = spec.eigenvalue(0);
  j["lambda2"] = spec.eigenvalue(1);
  j["gap"] = spec.eigenvalue(1) - spec.eigenvalue(0);
  j["partition_function"] = spec.partition_function();
  j["max_relative_residual"] = spec.max_relative_residual();
  j["exit_law"] = {{"mass_lo", law.mass_lo}, {"mass_hi", law.mass_hi},
                   {"sum_error", law.sum_error}};
  j["qsd_mean"] = q.mean();
  if (spec.modes() >= 10) {
    const WeylTable w = weyl_check(spec);
    j["weyl"] = {{"spread", w.spread}, {"passed", w.passed}, {"ratios", w.ratios}};
  }
  res.artifacts.push_back(json_artifact("spectrum.json", j));
  res.summary = "lambda1=" + format_double(spec.eigenvalue(0)) +
                " lambda2=" + format_double(spec.eigenvalue(1));
  return res;
}

ExperimentResult run_serial(const ExperimentConfig& cfg, unsigned workers) {
  ExperimentResult res;
  json j = base_report(cfg);
  if (cfg.lattice) {
    const auto runs = serial_lattice(cfg.potential, cfg.x0, cfg.stop_abs, cfg.dt,
                                     cfg.realizations, cfg.max_steps,
                                     {cfg.seed, 0, workers});
    CsvWriter csv(cfg, {"realization", "stop_time", "transitions", "capped"});
    for (std::size_t i = 0; i < runs.size(); ++i) {
      csv.cell(i).cell(runs[i].stop_time())
          .cell(runs[i].trajectory.events.size() - 1)
          .cell(runs[i].capped ? 1 : 0);
      csv.end_row();
    }
    res.artifacts.push_back({"serial_lattice.csv", csv.str()});
    j["summary"] = multiwell_summary(runs);
    res.artifacts.push_back(json_artifact("serial_lattice.json", j));
    return res;
  }

  const InitialLaw start = resolve_law(cfg.mu0, cfg);
  const auto events = simulate_exits(cfg.potential, cfg.well, start, cfg.dt,
                                     cfg.realizations, cfg.max_steps,
                                     {cfg.seed, 0, workers});
  CsvWriter csv(cfg, {"realization", "exit_time", "exit_point", "side", "capped"});
  std::vector<double> times;
  std::size_t hi = 0;
  std::size_t capped = 0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& ev = events[i];
    csv.cell(i).cell(ev.exit_time());
    if (ev.survived()) {
      csv.cell(ev.final_position).cell("none").cell(1);
      ++capped;
    } else {
      csv.cell(*ev.exit_point).cell(to_string(*ev.side)).cell(0);
      times.push_back(ev.exit_time());
      if (*ev.side == BoundarySide::kHi) ++hi;
    }
    csv.end_row();
  }
  res.artifacts.push_back({"serial.csv", csv.str()});
  j["realizations"] = events.size();
  j["capped"] = capped;
  if (!times.empty()) {
    const EmpiricalSample s(times);
    const auto rate = exp_rate_fit(s);
    const auto ci = binomial_ci(hi, times.size(), 0.95, ci_method(cfg));
    j["mean_exit_time"] = s.mean();
    j["rate"] = rate.rate;
    j["rate_standard_error"] = rate.standard_error;
    j["exits_hi"] = hi;
    j["p_hat_exit_hi"] = static_cast<double>(hi) / static_cast<double>(times.size());
    j["ci"] = {ci.lo, ci.hi};
  }
  res.artifacts.push_back(json_artifact("serial.json", j));
  return res;
}

ExperimentResult run_parrep(const ExperimentConfig& cfg, unsigned workers) {
  ExperimentResult res;
  json j = base_report(cfg);
  if (cfg.lattice) {
    const ParRepConfig pc = parrep_config(cfg, DiracLaw{cfg.x0}, DiracLaw{0.0});
    const auto runs = parrep_lattice(cfg.potential, cfg.x0, cfg.stop_abs, pc,
                                     cfg.realizations, cfg.max_steps,
                                     {cfg.seed, 0, workers});
    CsvWriter csv(cfg, {"realization", "stop_time", "transitions", "cycles", "capped"});
    for (std::size_t i = 0; i < runs.size(); ++i) {
      csv.cell(i).cell(runs[i].stop_time())
          .cell(runs[i].trajectory.events.size() - 1)
          .cell(runs[i].cycles)
          .cell(runs[i].capped ? 1 : 0);
      csv.end_row();
    }
    res.artifacts.push_back({"parrep_lattice.csv", csv.str()});
    j["summary"] = multiwell_summary(runs);
    res.artifacts.push_back(json_artifact("parrep_lattice.json", j));
    return res;
  }

  const ParRepConfig pc =
      parrep_config(cfg, resolve_law(cfg.mu0, cfg), resolve_law(cfg.mu0_phase, cfg));
  const WellMap map = WellMap::single(cfg.well);
  std::vector<CycleOutcome> outcomes(cfg.realizations);
  parallel_for(cfg.realizations, workers, [&](std::size_t i) {
    const StreamFactory streams(cfg.seed, i);
    auto draw = streams(StreamKey{StreamRole::kSampling, 0, 0, 0});
    const double x_enter = sample(pc.mu0, draw);
    outcomes[i] = parrep_cycle(x_enter, cfg.well, map, cfg.potential, pc, streams, 0);
  });

  CsvWriter csv(cfg, {"realization", "phase", "physical_exit_time", "exit_point",
                      "side", "replica", "relaunches"});
  std::size_t hi = 0;
  std::size_t decorrelation = 0;
  std::uint64_t relaunches = 0;
  std::size_t dephased = 0;
  std::vector<double> times;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    const auto total = std::accumulate(o.relaunch_counts.begin(),
                                       o.relaunch_counts.end(), std::uint64_t{0});
    csv.cell(i).cell(to_string(o.phase)).cell(o.physical_exit_time())
        .cell(o.exit_point).cell(to_string(o.side));
    if (o.replica_index) {
      csv.cell(*o.replica_index);
    } else {
      csv.cell("none");
    }
    csv.cell(static_cast<unsigned long long>(total));
    csv.end_row();
    if (o.side == BoundarySide::kHi) ++hi;
    if (o.phase == ExitPhase::kDecorrelation) {
      ++decorrelation;
    } else {
      relaunches += total;
      dephased += o.relaunch_counts.size();
    }
    times.push_back(o.physical_exit_time());
  }
  res.artifacts.push_back({"parrep.csv", csv.str()});
  const auto ci = binomial_ci(hi, outcomes.size(), 0.95, ci_method(cfg));
  j["realizations"] = outcomes.size();
  j["decorrelation_exits"] = decorrelation;
  j["exits_hi"] = hi;
  j["p_hat_exit_hi"] = static_cast<double>(hi) / static_cast<double>(outcomes.size());
  j["ci"] = {ci.lo, ci.hi};
  j["mean_physical_exit_time"] = EmpiricalSample(times).mean();
  j["mean_relaunches_per_replica"] =
      dephased > 0 ? static_cast<double>(relaunches) / static_cast<double>(dephased) : 0.0;
  res.artifacts.push_back(json_artifact("parrep.json", j));
  return res;
}

ExperimentResult run_fig3(const ExperimentConfig& cfg, unsigned workers) {
  if (cfg.lattice) throw ConfigError("fig3: requires wells=single");
  const InitialLaw launch = resolve_law(cfg.mu0_phase, cfg);
  ExperimentResult res;
  CsvWriter csv(cfg, {"N", "t_phase", "M", "p_hat_exit_hi", "ci_lo", "ci_hi"});
  json j = base_report(cfg);
  json cells = json::array();
  std::uint64_t cell_index = 0;
  for (const double t_phase : cfg.fig3_t_phase) {
    for (const std::size_t n : cfg.fig3_replicas) {
      const Fig3Cell c = fig3_cell(cfg.potential, cfg.well, launch, n, t_phase, cfg.dt,
                                   cfg.realizations, cfg.relaunch_cap, cfg.wilson,
                                   {cfg.seed, cell_index * cfg.realizations, workers});
      ++cell_index;
      csv.cell(n).cell(t_phase).cell(c.realizations).cell(c.p_hat).cell(c.ci.lo).cell(c.ci.hi);
      csv.end_row();
      cells.push_back({{"N", n},
                       {"t_phase", t_phase},
                       {"M", c.realizations},
                       {"exits_hi", c.exits_hi},
                       {"p_hat_exit_hi", c.p_hat},
                       {"ci", {c.ci.lo, c.ci.hi}},
                       {"mean_relaunches_per_replica", c.mean_relaunches}});
    }
  }
  res.artifacts.push_back({"fig3.csv", csv.str()});
  j["cells"] = cells;
  res.artifacts.push_back(json_artifact("fig3.json", j));
  return res;
}

ExperimentResult run_fig4(const ExperimentConfig& cfg, unsigned workers) {
  const Fig4Samples s = fig4_samples(cfg, workers);
  ExperimentResult res;
  const auto ecdf_csv = [&](const std::vector<double>& times) {
    CsvWriter csv(cfg, {"rank", "time", "ecdf"});
    for (std::size_t i = 0; i < times.size(); ++i) {
      csv.cell(i + 1).cell(times[i]).cell(static_cast<double>(i + 1) /
                                          static_cast<double>(times.size()));
      csv.end_row();
    }
    return csv.str();
  };
  res.artifacts.push_back({"fig4_serial.csv", ecdf_csv(s.serial)});
  res.artifacts.push_back({"fig4_parrep.csv", ecdf_csv(s.parrep)});
  json j = base_report(cfg);
  j["serial"] = {{"completed", s.serial.size()}, {"capped", s.serial_capped}};
  j["parrep"] = {{"completed", s.parrep.size()}, {"capped", s.parrep_capped}};
  if (!s.serial.empty()) j["serial"]["mean_time"] = EmpiricalSample(s.serial).mean();
  if (!s.parrep.empty()) j["parrep"]["mean_time"] = EmpiricalSample(s.parrep).mean();
  j["ks"] = {{"statistic", s.ks.statistic}, {"p_value", s.ks.p_value},
             {"n1", s.ks.n1}, {"n2", s.ks.n2}};
  res.artifacts.push_back(json_artifact("fig4.json", j));
  res.summary = "KS statistic=" + format_double(s.ks.statistic) +
                " p=" + format_double(s.ks.p_value);
  return res;
}

ExperimentResult run_qsd_exit_law(const ExperimentConfig& cfg, unsigned workers) {
  if (cfg.lattice) throw ConfigError("qsd-exit-law: requires wells=single");
  const Spectrum spec = eigensolve(cfg.potential, cfg.well, cfg.grid, cfg.modes);
  const QsdDensity q = qsd(spec);
  const InitialLaw start =
      cfg.mu0.kind == LawSpec::Kind::kQsd ? InitialLaw{q} : resolve_law(cfg.mu0, cfg);
  const auto events = simulate_exits(cfg.potential, cfg.well, start, cfg.dt,
                                     cfg.realizations, cfg.max_steps,
                                     {cfg.seed, 0, workers});
  std::vector<double> times;
  std::size_t hi = 0;
  for (const auto& ev : events) {
    if (ev.survived()) continue;
    times.push_back(ev.exit_time());
    if (*ev.side == BoundarySide::kHi) ++hi;
  }
  if (times.size() < 10) throw NumericError("qsd-exit-law: too few exits");
  std::sort(times.begin(), times.end());
  const double lambda1 = spec.eigenvalue(0);
  const EmpiricalSample sample_times(times);
  const KsResult ks = ks_vs_cdf(sample_times, [lambda1](double t) {
    return t <= 0.0 ? 0.0 : -std::expm1(-lambda1 * t);
  });
  const auto ci = binomial_ci(hi, times.size(), 0.95, ci_method(cfg));
  const auto rate = exp_rate_fit(sample_times);
  const ExitPointLaw law = exit_point_law(spec);

  ExperimentResult res;
  CsvWriter csv(cfg, {"rank", "exit_time", "ecdf", "exp_cdf"});
  for (std::size_t i = 0; i < times.size(); ++i) {
    csv.cell(i + 1).cell(times[i])
        .cell(static_cast<double>(i + 1) / static_cast<double>(times.size()))
        .cell(-std::expm1(-lambda1 * times[i]));
    csv.end_row();
  }
  res.artifacts.push_back({"qsd_exit_times.csv", csv.str()});
  json j = base_report(cfg);
  j["lambda1"] = lambda1;
  j["lambda2"] = spec.eigenvalue(1);
  j["exits"] = times.size();
  j["capped"] = events.size() - times.size();
  j["ks_vs_exponential"] = {{"statistic", ks.statistic}, {"p_value", ks.p_value}};
  j["rate_fit"] = {{"rate", rate.rate}, {"standard_error", rate.standard_error}};
  j["exits_hi"] = hi;
  j["p_hat_exit_hi"] = static_cast<double>(hi) / static_cast<double>(times.size());
  j["ci"] = {ci.lo, ci.hi};
  j["spectral_exit_law"] = {{"mass_lo", law.mass_lo}, {"mass_hi", law.mass_hi}};
  res.artifacts.push_back(json_artifact("qsd_exit_law.json", j));
  return res;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned workers) {
  switch (cfg.experiment) {
    case Experiment::kSpectrum:
      return run_spectrum(cfg);
    case Experiment::kSerial:
      return run_serial(cfg, workers);
    case Experiment::kParRep:
      return run_parrep(cfg, workers);
    case Experiment::kFig3:
      return run_fig3(cfg, workers);
    case Experiment::kFig4:
      return run_fig4(cfg, workers);
    case Experiment::kQsdExitLaw:
      return run_qsd_exit_law(cfg, workers);
    case Experiment::kValidate:
      return run_validate(cfg, workers);
  }
  throw ConfigError("unknown experiment");
}

}  // namespace parrep
