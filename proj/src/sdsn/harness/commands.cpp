#include "sdsn/harness/commands.hpp"

#include <filesystem>
#include <set>

#include "sdsn/core/error.hpp"
#include "sdsn/core/format.hpp"

namespace sdsn::harness {

namespace fs = std::filesystem;

std::vector<std::string> cmd_gen_data(const ScenarioConfig& config) {
  validate(config);
  const auto set = monitor::build_baseline_datasets(config.baseline_config());
  return monitor::write_baseline(set, config.output_dir);
}

std::vector<EvalRow> train_eval(const monitor::BaselineSet& set, const ml::Hyperparameters& hp,
                                const TrainEvalConfig& params) {
  std::vector<EvalRow> rows;
  for (std::size_t i = 0; i < set.size(); ++i) {
    auto [p, s] = monitor::cell_classes(i);
    const std::string name = std::string(traffic::to_string(p)) + "_" + traffic::to_string(s);
    auto [train_set, test_set] = ml::stratified_split(set[i], 0.7, params.split_seed);
    const auto train_m = ml::SampleMatrix::from_dataset(train_set);
    const auto test_m = ml::SampleMatrix::from_dataset(test_set);
    for (auto id : ml::kAllAlgorithms) {
      const auto model = ml::train(id, train_m, hp, params.split_seed);
      auto clock = ml::make_clock(params.timing);
      rows.push_back({name, ml::evaluate(model, test_m, *clock, params.timing_repeats)});
    }
  }
  return rows;
}

std::string evaluation_to_csv(const std::vector<EvalRow>& rows) {
  std::string out = std::string(kEvaluationHeader) + "\n";
  for (const auto& r : rows) {
    out += r.dataset + "," + ml::to_string(r.evaluation.algorithm) + "," + format_double(r.evaluation.accuracy) + "," +
           format_double(r.evaluation.detection_time_s) + "," + std::to_string(r.evaluation.n_test) + "\n";
  }
  return out;
}

std::vector<EvalRow> evaluation_from_csv(const std::string& text, const std::string& source) {
  std::vector<EvalRow> rows;
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    const std::string_view line = strip_cr(std::string_view(text).substr(pos, nl - pos));
    pos = nl + 1;
    ++n;
    if (n == 1) {
      if (line != kEvaluationHeader) throw ParseError(source, 1, "unexpected header");
      continue;
    }
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 5) throw ParseError(source, n, "expected 5 fields");
    EvalRow r;
    r.dataset = std::string(f[0]);
    auto alg = ml::parse_algorithm(std::string(f[1]));
    auto acc = parse_double(f[2]);
    auto t = parse_double(f[3]);
    auto nt = parse_int(f[4]);
    if (!alg || !acc || !t || !nt || *nt < 1) throw ParseError(source, n, "malformed row");
    r.evaluation = {*alg, *acc, *t, static_cast<std::size_t>(*nt)};
    rows.push_back(r);
  }
  return rows;
}

std::vector<EvalRow> cmd_train_eval(const ScenarioConfig& config) {
  validate(config);
  const std::string dir = config.train_eval.datasets_dir.empty() ? config.output_dir : config.train_eval.datasets_dir;
  const auto set = monitor::load_baseline(dir);
  auto rows = train_eval(set, config.automl.hyperparameters, config.train_eval);
  write_file((fs::path(config.output_dir) / "evaluation.csv").string(), evaluation_to_csv(rows));
  return rows;
}

RunResult cmd_run(const ScenarioConfig& config) { return run_and_write(config); }

std::string cmd_report(const std::string& run_dir) {
  const fs::path dir(run_dir);
  auto path = [&](const char* name) { return (dir / name).string(); };
  auto load = [&](const char* name) {
    if (!fs::exists(dir / name)) throw RuntimeError("run directory lacks " + path(name));
    return read_file(path(name));
  };
  const auto stored = summary_from_csv(load("summary.csv"), path("summary.csv"));
  const auto ctx = summary_context(stored, path("summary.csv"));
  const auto rtt = sim::RttSeries::from_csv(load("rtt.csv"), path("rtt.csv"));
  const auto alerts = defense::AlertLog::from_csv(load("alerts.csv"), path("alerts.csv"));
  const auto detections = detections_from_csv(load("detections.csv"), path("detections.csv"));
  const auto selection = selection_from_csv(load("selection_log.csv"), path("selection_log.csv"));
  const auto fresh = compute_summary(ctx, rtt, alerts, detections, selection);

  std::string mismatch;
  for (const auto& [k, v] : fresh) {
    const auto s = summary_value(stored, k);
    if (!s) mismatch += "\n  " + k + ": missing from summary.csv";
    else if (*s != v) mismatch += "\n  " + k + ": stored " + *s + ", recomputed " + v;
  }
  std::set<std::string> seen;
  for (const auto& [k, v] : stored) {
    if (!summary_value(fresh, k)) mismatch += "\n  " + k + ": unexpected key in summary.csv";
    if (!seen.insert(k).second) mismatch += "\n  " + k + ": repeated in summary.csv";
  }
  if (!mismatch.empty()) throw IntegrityError("summary does not match the raw logs in " + run_dir + ":" + mismatch);

  std::string plot = "t_s,rtt_ms,timeout\n";
  for (const auto& p : rtt.probes) {
    plot += format_fixed(p.sent_at.seconds(), 6) + "," +
            (p.rtt ? format_fixed(static_cast<double>(p.rtt->us()) / 1000.0, 3) : std::string("")) + "," +
            (p.rtt ? "0" : "1") + "\n";
  }
  write_file(path("plot_rtt.csv"), plot);
  std::string phases = "phase,mean_rtt_ms\n";
  for (const char* k : {"pre", "during", "post"})
    phases += std::string(k) + "," + *summary_value(fresh, std::string("rtt_mean_") + k + "_ms") + "\n";
  write_file(path("plot_phases.csv"), phases);

  std::string text;
  for (const auto& [k, v] : fresh) text += k + ": " + v + "\n";
  return text;
}

}  // namespace sdsn::harness
