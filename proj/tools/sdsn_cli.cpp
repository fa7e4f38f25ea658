// Command-line front end; talks to the simulator only through sdsn.h.
#include <cstdio>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sdsn.h"

namespace {

int report_failure(sdsn_status s) {
  std::fprintf(stderr, "error: %s\n", sdsn_last_error());
  return static_cast<int>(s == SDSN_ERR_ARGUMENT ? SDSN_ERR_RUNTIME : s);
}

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> defense;
  std::optional<double> buffer_s;
};

void add_overrides(CLI::App* cmd, Overrides& o, bool scenario) {
  cmd->add_option("--seed", o.seed, "Override the scenario seed");
  cmd->add_option("--out", o.out, "Override the output directory");
  if (scenario) {
    cmd->add_option("--defense", o.defense, "Override the defense mode (none, greedy, automl)");
    cmd->add_option("--buffer-s", o.buffer_s, "Override the AutoML buffer period in seconds");
  }
}

/// Loads the config and applies overrides; returns the exit code on failure.
int load(const std::string& path, const Overrides& o, sdsn_config** cfg) {
  sdsn_status s = sdsn_config_load(path.c_str(), cfg);
  if (s == SDSN_OK && o.seed) s = sdsn_config_set_seed(*cfg, *o.seed);
  if (s == SDSN_OK && o.out) s = sdsn_config_set_output_dir(*cfg, o.out->c_str());
  if (s == SDSN_OK && o.defense) s = sdsn_config_set_defense(*cfg, o.defense->c_str());
  if (s == SDSN_OK && o.buffer_s) s = sdsn_config_set_buffer_s(*cfg, *o.buffer_s);
  return s == SDSN_OK ? 0 : report_failure(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensor-network DDoS defense simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sdsn_version()));

  std::string config_path, run_dir;
  Overrides gen_o, eval_o, run_o;

  auto* gen = app.add_subcommand("gen-data", "Generate the nine baseline datasets");
  gen->add_option("config", config_path, "Config file")->required();
  add_overrides(gen, gen_o, false);

  auto* eval = app.add_subcommand("train-eval", "Train and evaluate six algorithms on the nine datasets");
  eval->add_option("config", config_path, "Config file")->required();
  add_overrides(eval, eval_o, false);

  auto* run = app.add_subcommand("run", "Run a scenario and write its logs");
  run->add_option("config", config_path, "Config file")->required();
  add_overrides(run, run_o, true);

  auto* rep = app.add_subcommand("report", "Check a run directory and print its summary");
  rep->add_option("run_dir", run_dir, "Run output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  sdsn_config* cfg = nullptr;
  int code = 0;
  if (*gen) {
    if ((code = load(config_path, gen_o, &cfg)) == 0) {
      if (sdsn_status s = sdsn_gen_data(cfg); s != SDSN_OK) code = report_failure(s);
      else std::printf("wrote 9 datasets to %s\n", sdsn_config_output_dir(cfg));
    }
  } else if (*eval) {
    if ((code = load(config_path, eval_o, &cfg)) == 0) {
      if (sdsn_status s = sdsn_train_eval(cfg); s != SDSN_OK) code = report_failure(s);
      else std::printf("wrote %s/evaluation.csv\n", sdsn_config_output_dir(cfg));
    }
  } else if (*run) {
    if ((code = load(config_path, run_o, &cfg)) == 0) {
      sdsn_run_result* result = nullptr;
      if (sdsn_status s = sdsn_run(cfg, &result); s != SDSN_OK) {
        code = report_failure(s);
      } else {
        for (size_t i = 0; i < sdsn_run_result_summary_size(result); ++i)
          std::printf("%s: %s\n", sdsn_run_result_summary_key(result, i), sdsn_run_result_summary_value(result, i));
        std::printf("logs written to %s\n", sdsn_config_output_dir(cfg));
      }
      sdsn_run_result_free(result);
    }
  } else if (*rep) {
    char* text = nullptr;
    if (sdsn_status s = sdsn_report(run_dir.c_str(), &text); s != SDSN_OK) code = report_failure(s);
    else std::fputs(text, stdout);
    sdsn_string_free(text);
  }
  sdsn_config_free(cfg);
  return code;
}
