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

#include "parrep/parrep.h"

#include <exception>
#include <memory>
#include <new>
#include <string>

#include "parrep/config.hpp"
#include "parrep/error.hpp"
#include "parrep/experiments.hpp"
#include "parrep/output.hpp"
#include "parrep/spectral.hpp"

struct parrep_config {
  parrep::Config config;
};

struct parrep_result {
  parrep::ExperimentResult result;
  std::string hash;
};

struct parrep_spectrum {
  parrep::Potential potential;
  parrep::Spectrum spectrum;
};

namespace {

thread_local std::string g_last_error;

parrep_status status_of(parrep::ErrorKind kind) {
  switch (kind) {
    case parrep::ErrorKind::kInvalidArgument: return PARREP_ERR_INVALID_ARGUMENT;
    case parrep::ErrorKind::kConfig: return PARREP_ERR_CONFIG;
    case parrep::ErrorKind::kPrecondition: return PARREP_ERR_PRECONDITION;
    case parrep::ErrorKind::kNumeric: return PARREP_ERR_NUMERIC;
    case parrep::ErrorKind::kRunaway: return PARREP_ERR_RUNAWAY;
    case parrep::ErrorKind::kIo: return PARREP_ERR_IO;
  }
  return PARREP_ERR_INTERNAL;
}

parrep_status fail(parrep_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class Fn>
parrep_status guarded(Fn&& fn) {
  try {
    fn();
    return PARREP_OK;
  } catch (const parrep::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PARREP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PARREP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PARREP_ERR_INTERNAL, "unknown error");
  }
}

#define PARREP_REQUIRE(cond, what)                                    \
  do {                                                                \
    if (!(cond)) return fail(PARREP_ERR_INVALID_ARGUMENT, (what));    \
  } while (0)

}  // namespace

extern "C" {

const char* parrep_version(void) { return "1.0.0"; }

const char* parrep_status_name(parrep_status status) {
  switch (status) {
    case PARREP_OK: return "ok";
    case PARREP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case PARREP_ERR_CONFIG: return "configuration error";
    case PARREP_ERR_PRECONDITION: return "precondition violated";
    case PARREP_ERR_NUMERIC: return "numerical failure";
    case PARREP_ERR_RUNAWAY: return "runaway computation";
    case PARREP_ERR_IO: return "i/o error";
    case PARREP_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* parrep_last_error(void) { return g_last_error.c_str(); }

parrep_status parrep_config_create(parrep_config** out) {
  PARREP_REQUIRE(out, "parrep_config_create: null output");
  return guarded([&] { *out = new parrep_config(); });
}

void parrep_config_destroy(parrep_config* config) { delete config; }

parrep_status parrep_config_load_file(parrep_config* config, const char* path) {
  PARREP_REQUIRE(config && path, "parrep_config_load_file: null argument");
  return guarded([&] { config->config.merge(parrep::Config::load_file(path)); });
}

parrep_status parrep_config_set(parrep_config* config, const char* key,
                                const char* value) {
  PARREP_REQUIRE(config && key && value, "parrep_config_set: null argument");
  return guarded([&] { config->config.set(key, value); });
}

parrep_status parrep_config_assign(parrep_config* config, const char* assignment) {
  PARREP_REQUIRE(config && assignment, "parrep_config_assign: null argument");
  return guarded([&] { config->config.assign(assignment); });
}

parrep_status parrep_run(const parrep_config* config, const char* experiment,
                         unsigned workers, parrep_result** out) {
  PARREP_REQUIRE(config && experiment && out, "parrep_run: null argument");
  *out = nullptr;
  return guarded([&] {
    const auto cfg = parrep::resolve_config(parrep::parse_experiment(experiment),
                                            config->config);
    auto res = std::make_unique<parrep_result>();
    res->result = parrep::run_experiment(cfg, workers == 0 ? 1 : workers);
    res->hash = cfg.hash();
    *out = res.release();
  });
}

void parrep_result_destroy(parrep_result* result) { delete result; }

int parrep_result_passed(const parrep_result* result) {
  return result && result->result.passed ? 1 : 0;
}

const char* parrep_result_summary(const parrep_result* result) {
  return result ? result->result.summary.c_str() : "";
}

const char* parrep_result_config_hash(const parrep_result* result) {
  return result ? result->hash.c_str() : "";
}

size_t parrep_result_artifact_count(const parrep_result* result) {
  return result ? result->result.artifacts.size() : 0;
}

const char* parrep_result_artifact_name(const parrep_result* result, size_t index) {
  if (!result || index >= result->result.artifacts.size()) return nullptr;
  return result->result.artifacts[index].name.c_str();
}

const char* parrep_result_artifact_data(const parrep_result* result, size_t index,
                                        size_t* size) {
  if (!result || index >= result->result.artifacts.size()) return nullptr;
  const auto& a = result->result.artifacts[index];
  if (size) *size = a.content.size();
  return a.content.c_str();
}

parrep_status parrep_result_write(const parrep_result* result, const char* directory) {
  PARREP_REQUIRE(result && directory, "parrep_result_write: null argument");
  return guarded([&] { parrep::write_artifacts(result->result, directory); });
}

parrep_status parrep_spectrum_compute(const parrep_config* config,
                                      parrep_spectrum** out) {
  PARREP_REQUIRE(config && out, "parrep_spectrum_compute: null argument");
  *out = nullptr;
  return guarded([&] {
    const auto cfg =
        parrep::resolve_config(parrep::Experiment::kSpectrum, config->config);
    if (cfg.lattice) throw parrep::ConfigError("spectrum: requires wells=single");
    *out = new parrep_spectrum{cfg.potential,
                               parrep::eigensolve(cfg.potential, cfg.well,
                                                  cfg.grid, cfg.modes)};
  });
}

void parrep_spectrum_destroy(parrep_spectrum* spectrum) { delete spectrum; }

size_t parrep_spectrum_modes(const parrep_spectrum* spectrum) {
  return spectrum ? spectrum->spectrum.modes() : 0;
}

parrep_status parrep_spectrum_eigenvalue(const parrep_spectrum* spectrum, size_t k,
                                         double* out) {
  PARREP_REQUIRE(spectrum && out, "parrep_spectrum_eigenvalue: null argument");
  PARREP_REQUIRE(k >= 1 && k <= spectrum->spectrum.modes(),
                 "parrep_spectrum_eigenvalue: mode index out of range");
  *out = spectrum->spectrum.eigenvalue(k - 1);
  return PARREP_OK;
}

parrep_status parrep_spectrum_exit_law(const parrep_spectrum* spectrum,
                                       double* mass_lo, double* mass_hi) {
  PARREP_REQUIRE(spectrum && mass_lo && mass_hi,
                 "parrep_spectrum_exit_law: null argument");
  return guarded([&] {
    const auto law = parrep::exit_point_law(spectrum->spectrum);
    *mass_lo = law.mass_lo;
    *mass_hi = law.mass_hi;
  });
}

parrep_status parrep_spectrum_survival(const parrep_spectrum* spectrum, double x0,
                                       double t, double* out, int* reliable) {
  PARREP_REQUIRE(spectrum && out, "parrep_spectrum_survival: null argument");
  return guarded([&] {
    const auto v = parrep::survival_oracle(spectrum->spectrum, parrep::DiracLaw{x0}, t);
    *out = v.probability;
    if (reliable) *reliable = v.reliable ? 1 : 0;
  });
}

parrep_status parrep_spectrum_committor(const parrep_spectrum* spectrum, double x0,
                                        double* out) {
  PARREP_REQUIRE(spectrum && out, "parrep_spectrum_committor: null argument");
  return guarded([&] {
    *out = parrep::committor(spectrum->potential, spectrum->spectrum.well(), x0);
  });
}

}  // extern "C"
