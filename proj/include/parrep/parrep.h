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

/* C interface to the parrep library.
 *
 * Every function that can fail returns a parrep_status; on failure a
 * description is available from parrep_last_error() on the calling thread
 * until the next failing call. Handles are opaque and owned by the caller,
 * who releases them with the matching *_destroy function. Strings returned
 * by the library stay valid for the lifetime of the handle they came from.
 */
#ifndef PARREP_PARREP_H_
#define PARREP_PARREP_H_

#include <stddef.h>

#if defined(PARREP_BUILDING_LIBRARY)
#define PARREP_API __attribute__((visibility("default")))
#else
#define PARREP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum parrep_status {
  PARREP_OK = 0,
  PARREP_ERR_INVALID_ARGUMENT = 1,
  PARREP_ERR_CONFIG = 2,
  PARREP_ERR_PRECONDITION = 3,
  PARREP_ERR_NUMERIC = 4,
  PARREP_ERR_RUNAWAY = 5,
  PARREP_ERR_IO = 6,
  PARREP_ERR_INTERNAL = 7
} parrep_status;

typedef struct parrep_config parrep_config;
typedef struct parrep_result parrep_result;
typedef struct parrep_spectrum parrep_spectrum;

PARREP_API const char* parrep_version(void);
PARREP_API const char* parrep_status_name(parrep_status status);
PARREP_API const char* parrep_last_error(void);

/* Configuration: an ordered set of key=value settings. */
PARREP_API parrep_status parrep_config_create(parrep_config** out);
PARREP_API void parrep_config_destroy(parrep_config* config);
PARREP_API parrep_status parrep_config_load_file(parrep_config* config,
                                                 const char* path);
PARREP_API parrep_status parrep_config_set(parrep_config* config,
                                           const char* key, const char* value);
/* "key=value" */
PARREP_API parrep_status parrep_config_assign(parrep_config* config,
                                              const char* assignment);

/* Runs a named experiment (spectrum, serial, parrep, fig3, fig4,
 * qsd-exit-law, validate). Output does not depend on `workers`. */
PARREP_API parrep_status parrep_run(const parrep_config* config,
                                    const char* experiment, unsigned workers,
                                    parrep_result** out);
PARREP_API void parrep_result_destroy(parrep_result* result);
/* 1 when every check of the experiment passed, else 0. */
PARREP_API int parrep_result_passed(const parrep_result* result);
PARREP_API const char* parrep_result_summary(const parrep_result* result);
PARREP_API const char* parrep_result_config_hash(const parrep_result* result);
PARREP_API size_t parrep_result_artifact_count(const parrep_result* result);
PARREP_API const char* parrep_result_artifact_name(const parrep_result* result,
                                                   size_t index);
PARREP_API const char* parrep_result_artifact_data(const parrep_result* result,
                                                   size_t index, size_t* size);
PARREP_API parrep_status parrep_result_write(const parrep_result* result,
                                             const char* directory);

/* Dirichlet spectrum of the single well described by `config` (potential,
 * beta, well.*, spectral.grid, spectral.modes). */
PARREP_API parrep_status parrep_spectrum_compute(const parrep_config* config,
                                                 parrep_spectrum** out);
PARREP_API void parrep_spectrum_destroy(parrep_spectrum* spectrum);
PARREP_API size_t parrep_spectrum_modes(const parrep_spectrum* spectrum);
/* k is 1-based. */
PARREP_API parrep_status parrep_spectrum_eigenvalue(
    const parrep_spectrum* spectrum, size_t k, double* out);
PARREP_API parrep_status parrep_spectrum_exit_law(
    const parrep_spectrum* spectrum, double* mass_lo, double* mass_hi);
/* P[T > t] from a Dirac start at x0; *reliable is set to 0 when the
 * truncated series cannot be trusted at this t. */
PARREP_API parrep_status parrep_spectrum_survival(
    const parrep_spectrum* spectrum, double x0, double t, double* out,
    int* reliable);
/* Probability of leaving through the upper end starting from x0. */
PARREP_API parrep_status parrep_spectrum_committor(
    const parrep_spectrum* spectrum, double x0, double* out);

#ifdef __cplusplus
}
#endif

#endif /* PARREP_PARREP_H_ */
