#include "sdsn/harness/scenario.hpp"

#include <filesystem>
#include <future>
#include <optional>
#include <set>

#include "sdsn/automl/selector.hpp"
#include "sdsn/core/format.hpp"
#include "sdsn/defense/defense.hpp"
#include "sdsn/monitor/baseline.hpp"
#include "sdsn/monitor/testbed.hpp"

namespace sdsn::harness {

namespace {

class Auditor final : public sim::DataPlaneObserver, public control::ControlObserver {
public:
  Auditor(const control::Controller& controller, const std::set<control::FlowKey>& alerted, Audit& audit)
      : controller_(&controller), alerted_(&alerted), audit_(&audit) {}

  void on_forward(sim::NodeId, const sim::Packet& p, SimTime t) override {
    ++audit_->forwards_total;
    if (controller_->hold_down_expiry(control::FlowKey::of(p), t)) ++audit_->holddown_forwards;
  }
  void on_delete(sim::NodeId, const control::FlowKey& key, SimTime) override {
    if (!alerted_->count(key)) ++audit_->collateral_deletes;
  }

private:
  const control::Controller* controller_;
  const std::set<control::FlowKey>* alerted_;
  Audit* audit_;
};

std::vector<SelectionRow> selection_rows(double t_s, const automl::CycleResult& r) {
  std::vector<SelectionRow> rows;
  for (const auto& s : r.scores)
    rows.push_back({t_s, s.algorithm, s.accuracy, s.detection_time_s, s.total, s.algorithm == r.winner});
  return rows;
}

}  // namespace

monitor::Dataset bootstrap_dataset(const ScenarioConfig& config) {
  const auto set = config.automl.baseline_dir.empty() ? monitor::build_baseline_datasets(config.baseline_config())
                                                      : monitor::load_baseline(config.automl.baseline_dir);
  return monitor::merge(std::vector<monitor::Dataset>(set.begin(), set.end()));
}

RunResult run_scenario(const ScenarioConfig& config) {
  validate(config);
  RunResult result;

  monitor::TestbedParams tp;
  tp.poll_interval = SimTime::from_s(config.poll_interval_s);
  tp.monitor.window_polls = config.window_polls;
  monitor::Testbed bed(config.topology_spec(), tp);
  const auto& topo = bed.topology();

  sim::FlowId next_id = 0;
  for (std::size_t i = 0; i < config.normal_flows.size(); ++i) {
    const auto& f = config.normal_flows[i];
    traffic::FlowSpec spec;
    spec.id = next_id++;
    spec.src = topo.require(f.src);
    spec.dst = topo.require(f.dst);
    spec.profile = {f.payload_class, f.speed_class, config.flow_seed(i)};
    spec.start = SimTime::from_s(f.start_s);
    spec.stop = SimTime::from_s(f.stop_s);
    spec.label = 0;
    bed.add_flow(spec);
  }
  for (std::size_t i = 0; i < config.attacks.size(); ++i) {
    const auto& a = config.attacks[i];
    traffic::AttackScenario sc;
    sc.target = topo.require(a.target);
    for (const auto& b : a.bots) sc.bot_sources.push_back(topo.require(b));
    sc.profile = {a.payload_class, a.speed_class, config.attack_seed(i)};
    sc.start = SimTime::from_s(a.start_s);
    sc.stop = SimTime::from_s(a.stop_s);
    for (const auto& f : traffic::attack_flows(sc, topo, next_id)) bed.add_flow(f);
    next_id += static_cast<sim::FlowId>(a.bots.size());
  }
  std::optional<std::size_t> probe;
  if (config.ping) {
    sim::PingParams p;
    p.src = topo.require(config.ping->src);
    p.dst = topo.require(config.ping->dst);
    p.interval = SimTime::from_s(config.ping->interval_s);
    p.timeout = SimTime::from_s(config.ping->timeout_s);
    p.start = SimTime::from_s(config.ping->start_s);
    p.stop = SimTime::from_s(config.ping->stop_s);
    p.payload = config.ping->payload;
    p.flow_id = next_id++;
    probe = bed.add_ping(p);
  }

  std::set<control::FlowKey> alerted;
  Auditor auditor(bed.controller(), alerted, result.audit);
  bed.network().set_observer(&auditor);
  bed.controller().set_observer(&auditor);

  const auto mode = config.defense.mode;
  const SimTime hold = SimTime::from_s(mode == DefenseMode::greedy ? config.defense.greedy_hold_down_s
                                                                   : config.defense.hold_down_s);
  defense::Mitigator mitigator(bed.controller(), bed.engine(), result.alerts, hold);
  auto log = [&](SimTime t, const std::string& msg) { result.log.push_back(format_fixed(t.seconds(), 6) + " " + msg); };
  auto act = [&](const defense::AlertEvent& a) {
    result.alerts.add(a.at, a.key, a.model, defense::AlertAction::alert);
    alerted.insert(a.key);
    mitigator.mitigate(a);
  };

  // AutoML state
  automl::ModelSlot slot;
  automl::SelectorParams sp;
  sp.hyperparameters = config.automl.hyperparameters;
  sp.seed = config.automl.split_seed;
  sp.timing = config.automl.timing;
  sp.timing_repeats = config.automl.timing_repeats;
  const auto buffer = automl::BufferSchedule::make(config.automl.buffer_s);
  automl::CalibratedWeights weights;
  weights.global = automl::SelectionWeights::uniform(config.automl.weights);
  monitor::Dataset boot;
  if (mode == DefenseMode::automl) {
    boot = bootstrap_dataset(config);
    if (config.automl.per_state_weights) {
      const auto set = config.automl.baseline_dir.empty() ? monitor::build_baseline_datasets(config.baseline_config())
                                                          : monitor::load_baseline(config.automl.baseline_dir);
      std::vector<automl::HistoryEntry> history;
      for (std::size_t i = 0; i < set.size(); ++i) {
        auto r = automl::reselect_cycle(set[i], weights.global, sp);
        if (!r) continue;
        auto [p, s] = monitor::cell_classes(i);
        history.push_back({{p, s}, r->evaluations});
      }
      automl::CalibrationParams cp;
      cp.per_state = true;
      cp.global = config.automl.weights;
      weights = automl::calibrate_weights(history, cp);
    }
  }
  struct Pending {
    SimTime at;
    std::future<std::optional<automl::CycleResult>> result;
  };
  std::optional<Pending> pending;
  auto launch = [&](SimTime t, monitor::Dataset data, const automl::SelectionWeights& w) {
    pending = Pending{t, std::async(std::launch::async, [data = std::move(data), w, sp] {
                        return automl::reselect_cycle(data, w, sp);
                      })};
  };
  monitor::Dataset window;
  std::vector<monitor::FlowVector> window_vectors;
  bool booted = false;
  SimTime next_cycle = buffer.period();

  std::vector<control::FlowStatsRecord> previous;
  const SimTime end = SimTime::from_s(config.duration_s);

  bed.run(end, [&](SimTime t, const std::vector<control::FlowStatsRecord>& records,
                   const std::vector<monitor::FlowVector>& vectors) {
    std::vector<std::optional<monitor::Label>> predicted(vectors.size());
    if (mode == DefenseMode::automl) {
      // a cycle launched on the previous tick swaps in before this tick's detection
      if (pending) {
        auto r = pending->result.get();
        if (r) {
          auto rows = selection_rows(pending->at.seconds(), *r);
          result.selection.insert(result.selection.end(), rows.begin(), rows.end());
          slot.store(r->model);
          log(t, std::string("installed ") + ml::to_string(r->winner));
        } else {
          log(t, "selection window is single-label; keeping the incumbent detector");
        }
        pending.reset();
      }
      const auto model = slot.load();
      std::string warning;
      for (const auto& a : defense::detect_tick(model.get(), vectors, t, &warning)) act(a);
      if (model)
        for (std::size_t i = 0; i < vectors.size(); ++i) predicted[i] = model->predict(vectors[i].features);
      for (const auto& v : vectors) {
        window.samples.push_back({v.features, bed.label_or_normal(v.key)});
        window_vectors.push_back(v);
      }
      if (!booted) {
        booted = true;
        launch(t, boot, weights.global);
      } else if (t >= next_cycle) {
        const auto state = automl::describe_traffic(window_vectors);
        log(t, "reselect on " + std::to_string(window.size()) + " window samples, state " +
                   (state ? automl::to_string(*state) : std::string("unknown")));
        launch(t, std::move(window), weights.for_state(state));
        window = {};
        window_vectors.clear();
        next_cycle += buffer.period();
      }
    } else if (mode == DefenseMode::greedy) {
      const auto alerts = defense::greedy_detect(previous, records, config.defense.greedy_threshold_pps);
      std::set<control::FlowKey> hit;
      for (const auto& a : alerts) {
        hit.insert(a.key);
        act(a);
      }
      for (std::size_t i = 0; i < vectors.size(); ++i) predicted[i] = hit.count(vectors[i].key) ? 1 : 0;
    }
    for (std::size_t i = 0; i < vectors.size(); ++i)
      result.detections.push_back({t, vectors[i].key, bed.label_or_normal(vectors[i].key), predicted[i]});
    previous = records;
  });
  if (pending) pending->result.wait();

  if (probe) result.rtt = bed.network().rtt(*probe);
  for (const auto& r : monitor::poll_cycle(bed.controller(), end))
    result.final_flows.emplace_back(topo.node(r.switch_id).name, r);
  result.audit.mitigated_keys = mitigator.mitigated().size();
  result.audit.packet_ins = bed.controller().total_packet_ins();
  result.events = bed.engine().total_processed();

  // derive the summary from the serialized logs so a re-read reproduces it
  SummaryContext ctx{to_string(mode), config.duration_s, config.attack_window()};
  result.summary = compute_summary(ctx, sim::RttSeries::from_csv(result.rtt.to_csv()),
                                   defense::AlertLog::from_csv(result.alerts.to_csv(), "alerts.csv"),
                                   detections_from_csv(detections_to_csv(result.detections), "detections.csv"),
                                   selection_from_csv(selection_to_csv(result.selection), "selection_log.csv"));
  return result;
}

RunResult run_and_write(const ScenarioConfig& config) {
  auto r = run_scenario(config);
  const std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);
  write_file((dir / "rtt.csv").string(), r.rtt.to_csv());
  write_file((dir / "selection_log.csv").string(), selection_to_csv(r.selection));
  write_file((dir / "alerts.csv").string(), r.alerts.to_csv());
  write_file((dir / "detections.csv").string(), detections_to_csv(r.detections));
  write_file((dir / "flow_table.csv").string(), flow_table_to_csv(r.final_flows));
  std::string audit = "key,value\n";
  audit += "holddown_forwards," + std::to_string(r.audit.holddown_forwards) + "\n";
  audit += "collateral_deletes," + std::to_string(r.audit.collateral_deletes) + "\n";
  audit += "mitigated_keys," + std::to_string(r.audit.mitigated_keys) + "\n";
  audit += "forwards_total," + std::to_string(r.audit.forwards_total) + "\n";
  audit += "packet_ins," + std::to_string(r.audit.packet_ins) + "\n";
  write_file((dir / "audit.csv").string(), audit);
  std::string log;
  for (const auto& l : r.log) log += l + "\n";
  write_file((dir / "run.log").string(), log);
  write_file((dir / "summary.csv").string(), summary_to_csv(r.summary));
  return r;
}

}  // namespace sdsn::harness
