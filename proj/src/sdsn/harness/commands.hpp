#pragma once

#include <string>
#include <vector>

#include "sdsn/harness/config.hpp"
#include "sdsn/harness/scenario.hpp"
#include "sdsn/ml/evaluate.hpp"
#include "sdsn/monitor/baseline.hpp"

namespace sdsn::harness {

/// Builds the nine baseline datasets and writes them to output_dir.
std::vector<std::string> cmd_gen_data(const ScenarioConfig& config);

struct EvalRow {
  std::string dataset;  // payload_speed
  ml::Evaluation evaluation;
};

inline constexpr const char* kEvaluationHeader = "dataset,algorithm,accuracy,detection_time_s,n_test";

/// Six algorithms on each of the nine cells: stratified 70/30 split, train,
/// evaluate on the held-out part. Rows are cell-major, algorithm-minor.
std::vector<EvalRow> train_eval(const monitor::BaselineSet& set, const ml::Hyperparameters& hp,
                                const TrainEvalConfig& params);
std::string evaluation_to_csv(const std::vector<EvalRow>& rows);
std::vector<EvalRow> evaluation_from_csv(const std::string& text, const std::string& source);

/// Loads the datasets (train_eval.datasets_dir, else output_dir) and writes
/// evaluation.csv to output_dir. Returns the rows.
std::vector<EvalRow> cmd_train_eval(const ScenarioConfig& config);

/// Scenario run with every log written to output_dir.
RunResult cmd_run(const ScenarioConfig& config);

/// Recomputes the summary from the raw logs in `run_dir`, compares it with
/// summary.csv (IntegrityError on any difference), writes plot_rtt.csv and
/// plot_phases.csv, and returns a printable summary.
std::string cmd_report(const std::string& run_dir);

}  // namespace sdsn::harness
