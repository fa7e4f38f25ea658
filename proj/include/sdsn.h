/* C interface to the sensor-network DDoS defense simulator. */
#ifndef SDSN_H
#define SDSN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Values match the command-line exit codes. */
typedef enum sdsn_status {
  SDSN_OK = 0,
  SDSN_ERR_CONFIG = 1,
  SDSN_ERR_RUNTIME = 2,
  SDSN_ERR_INTEGRITY = 3,
  SDSN_ERR_ARGUMENT = 4
} sdsn_status;

typedef struct sdsn_config sdsn_config;
typedef struct sdsn_run_result sdsn_run_result;

/* Message for the last failed call on this thread; "" if none. */
const char* sdsn_last_error(void);
const char* sdsn_version(void);

sdsn_status sdsn_config_load(const char* path, sdsn_config** out);
sdsn_status sdsn_config_parse(const char* json_text, sdsn_config** out);
void sdsn_config_free(sdsn_config* config);

/* Overrides. Each one re-validates the whole config. */
sdsn_status sdsn_config_set_seed(sdsn_config* config, uint64_t seed);
sdsn_status sdsn_config_set_output_dir(sdsn_config* config, const char* dir);
sdsn_status sdsn_config_set_defense(sdsn_config* config, const char* mode); /* none|greedy|automl */
sdsn_status sdsn_config_set_buffer_s(sdsn_config* config, double seconds);
/* Owned by the config; valid until the next setter call or free. */
const char* sdsn_config_output_dir(const sdsn_config* config);

/* Writes baseline_<payload>_<speed>.csv (nine files) to the output dir. */
sdsn_status sdsn_gen_data(const sdsn_config* config);
/* Writes evaluation.csv (54 rows) to the output dir. */
sdsn_status sdsn_train_eval(const sdsn_config* config);
/* Runs the scenario and writes its logs. `out` may be NULL. */
sdsn_status sdsn_run(const sdsn_config* config, sdsn_run_result** out);
/* Checks a run directory; on success *text_out (free with sdsn_string_free)
   holds the summary. SDSN_ERR_INTEGRITY when logs and summary disagree. */
sdsn_status sdsn_report(const char* run_dir, char** text_out);
void sdsn_string_free(char* s);

size_t sdsn_run_result_summary_size(const sdsn_run_result* result);
const char* sdsn_run_result_summary_key(const sdsn_run_result* result, size_t index);
const char* sdsn_run_result_summary_value(const sdsn_run_result* result, size_t index);
/* Value for `key`, or NULL. */
const char* sdsn_run_result_get(const sdsn_run_result* result, const char* key);
uint64_t sdsn_run_result_holddown_forwards(const sdsn_run_result* result);
uint64_t sdsn_run_result_collateral_deletes(const sdsn_run_result* result);
void sdsn_run_result_free(sdsn_run_result* result);

#ifdef __cplusplus
}
#endif

#endif
