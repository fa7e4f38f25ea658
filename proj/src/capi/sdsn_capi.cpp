#include "sdsn.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>

#include "sdsn/core/error.hpp"
#include "sdsn/harness/commands.hpp"

struct sdsn_config {
  sdsn::harness::ScenarioConfig config;
};

struct sdsn_run_result {
  sdsn::harness::RunResult result;
};

namespace {

thread_local std::string last_error;

sdsn_status fail(sdsn_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <typename Fn>
sdsn_status guarded(Fn fn) {
  try {
    last_error.clear();
    fn();
    return SDSN_OK;
  } catch (const sdsn::ConfigError& e) {
    return fail(SDSN_ERR_CONFIG, e.what());
  } catch (const sdsn::IntegrityError& e) {
    return fail(SDSN_ERR_INTEGRITY, e.what());
  } catch (const std::exception& e) {
    return fail(SDSN_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(SDSN_ERR_RUNTIME, "unknown error");
  }
}

/// Applies `change` to a copy and keeps it only if the result validates.
template <typename Fn>
sdsn_status update(sdsn_config* c, Fn change) {
  if (!c) return fail(SDSN_ERR_ARGUMENT, "null config");
  return guarded([&] {
    auto copy = c->config;
    change(copy);
    sdsn::harness::validate(copy);
    c->config = std::move(copy);
  });
}

}  // namespace

extern "C" {

const char* sdsn_last_error(void) { return last_error.c_str(); }
const char* sdsn_version(void) { return "1.0.0"; }

sdsn_status sdsn_config_load(const char* path, sdsn_config** out) {
  if (!path || !out) return fail(SDSN_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new sdsn_config{sdsn::harness::load_config(path)}; });
}

sdsn_status sdsn_config_parse(const char* json_text, sdsn_config** out) {
  if (!json_text || !out) return fail(SDSN_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new sdsn_config{sdsn::harness::parse_config(json_text, "<string>")}; });
}

void sdsn_config_free(sdsn_config* config) { delete config; }

sdsn_status sdsn_config_set_seed(sdsn_config* config, uint64_t seed) {
  return update(config, [&](auto& c) { c.seed = seed; });
}

sdsn_status sdsn_config_set_output_dir(sdsn_config* config, const char* dir) {
  if (!dir) return fail(SDSN_ERR_ARGUMENT, "null directory");
  return update(config, [&](auto& c) { c.output_dir = dir; });
}

sdsn_status sdsn_config_set_defense(sdsn_config* config, const char* mode) {
  if (!mode) return fail(SDSN_ERR_ARGUMENT, "null mode");
  return update(config, [&](auto& c) {
    auto m = sdsn::harness::parse_defense_mode(mode);
    if (!m) throw sdsn::ConfigError(std::string("defense.mode: unknown value '") + mode + "' (none, greedy, automl)");
    c.defense.mode = *m;
  });
}

sdsn_status sdsn_config_set_buffer_s(sdsn_config* config, double seconds) {
  return update(config, [&](auto& c) { c.automl.buffer_s = seconds; });
}

const char* sdsn_config_output_dir(const sdsn_config* config) {
  return config ? config->config.output_dir.c_str() : nullptr;
}

sdsn_status sdsn_gen_data(const sdsn_config* config) {
  if (!config) return fail(SDSN_ERR_ARGUMENT, "null config");
  return guarded([&] { sdsn::harness::cmd_gen_data(config->config); });
}

sdsn_status sdsn_train_eval(const sdsn_config* config) {
  if (!config) return fail(SDSN_ERR_ARGUMENT, "null config");
  return guarded([&] { sdsn::harness::cmd_train_eval(config->config); });
}

sdsn_status sdsn_run(const sdsn_config* config, sdsn_run_result** out) {
  if (!config) return fail(SDSN_ERR_ARGUMENT, "null config");
  if (out) *out = nullptr;
  return guarded([&] {
    auto r = sdsn::harness::cmd_run(config->config);
    if (out) *out = new sdsn_run_result{std::move(r)};
  });
}

sdsn_status sdsn_report(const char* run_dir, char** text_out) {
  if (!run_dir) return fail(SDSN_ERR_ARGUMENT, "null run directory");
  if (text_out) *text_out = nullptr;
  return guarded([&] {
    const auto text = sdsn::harness::cmd_report(run_dir);
    if (text_out) {
      *text_out = static_cast<char*>(std::malloc(text.size() + 1));
      if (!*text_out) throw std::bad_alloc();
      std::memcpy(*text_out, text.c_str(), text.size() + 1);
    }
  });
}

void sdsn_string_free(char* s) { std::free(s); }

size_t sdsn_run_result_summary_size(const sdsn_run_result* r) { return r ? r->result.summary.size() : 0; }

const char* sdsn_run_result_summary_key(const sdsn_run_result* r, size_t i) {
  if (!r || i >= r->result.summary.size()) return nullptr;
  return r->result.summary[i].first.c_str();
}

const char* sdsn_run_result_summary_value(const sdsn_run_result* r, size_t i) {
  if (!r || i >= r->result.summary.size()) return nullptr;
  return r->result.summary[i].second.c_str();
}

const char* sdsn_run_result_get(const sdsn_run_result* r, const char* key) {
  if (!r || !key) return nullptr;
  for (const auto& [k, v] : r->result.summary)
    if (k == key) return v.c_str();
  return nullptr;
}

uint64_t sdsn_run_result_holddown_forwards(const sdsn_run_result* r) {
  return r ? r->result.audit.holddown_forwards : 0;
}

uint64_t sdsn_run_result_collateral_deletes(const sdsn_run_result* r) {
  return r ? r->result.audit.collateral_deletes : 0;
}

void sdsn_run_result_free(sdsn_run_result* r) { delete r; }

}  // extern "C"
