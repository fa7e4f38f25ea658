#include "sdsn/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "sdsn/core/error.hpp"
#include "sdsn/core/rng.hpp"

namespace sdsn::harness {

using nlohmann::json;

const char* to_string(DefenseMode m) {
  switch (m) {
    case DefenseMode::none: return "none";
    case DefenseMode::greedy: return "greedy";
    case DefenseMode::automl: return "automl";
  }
  return "?";
}

std::optional<DefenseMode> parse_defense_mode(const std::string& s) {
  if (s == "none") return DefenseMode::none;
  if (s == "greedy") return DefenseMode::greedy;
  if (s == "automl") return DefenseMode::automl;
  return std::nullopt;
}

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

/// Typed access to one JSON object that reports errors by field path and
/// rejects keys nobody asked for.
class Obj {
public:
  Obj(const json& j, std::string path) : j_(&j), path_(std::move(path)) {
    if (!j.is_object()) fail(path_.empty() ? "(root)" : path_, "expected an object");
  }
  ~Obj() = default;

  [[noreturn]] static void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
  }
  std::string path(const std::string& key) const { return join(path_, key); }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = j_->find(key);
    return it == j_->end() || it->is_null() ? nullptr : &*it;
  }

  double number(const std::string& key, std::optional<double> def = std::nullopt) {
    const json* v = find(key);
    if (!v) return def ? *def : missing(key);
    if (!v->is_number()) fail(path(key), "expected a number");
    const double d = v->get<double>();
    if (!std::isfinite(d)) fail(path(key), "must be finite");
    return d;
  }
  std::uint64_t uint(const std::string& key, std::optional<std::uint64_t> def = std::nullopt) {
    const json* v = find(key);
    if (!v) return def ? *def : static_cast<std::uint64_t>(missing(key));
    if (!v->is_number_integer() || (v->is_number_integer() && !v->is_number_unsigned() && v->get<std::int64_t>() < 0))
      fail(path(key), "expected a non-negative integer");
    return v->get<std::uint64_t>();
  }
  std::optional<std::uint64_t> opt_uint(const std::string& key) {
    if (!find(key)) return std::nullopt;
    return uint(key);
  }
  std::string str(const std::string& key, std::optional<std::string> def = std::nullopt) {
    const json* v = find(key);
    if (!v) {
      if (def) return *def;
      missing(key);
    }
    if (!v->is_string()) fail(path(key), "expected a string");
    return v->get<std::string>();
  }
  bool boolean(const std::string& key, bool def) {
    const json* v = find(key);
    if (!v) return def;
    if (!v->is_boolean()) fail(path(key), "expected true or false");
    return v->get<bool>();
  }
  std::vector<std::string> strings(const std::string& key) {
    const json* v = find(key);
    if (!v) missing(key);
    if (!v->is_array()) fail(path(key), "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
      if (!(*v)[i].is_string()) fail(path(key) + "[" + std::to_string(i) + "]", "expected a string");
      out.push_back((*v)[i].get<std::string>());
    }
    return out;
  }

  void reject_unknown() const {
    for (auto it = j_->begin(); it != j_->end(); ++it)
      if (!seen_.count(it.key())) fail(path(it.key()), "unknown field");
  }

private:
  [[noreturn]] double missing(const std::string& key) const { fail(path(key), "required field is missing"); }

  const json* j_;
  std::string path_;
  std::set<std::string> seen_;
};

traffic::PayloadClass payload_class(Obj& o, const std::string& key, std::optional<traffic::PayloadClass> def) {
  if (!o.find(key)) {
    if (def) return *def;
    Obj::fail(o.path(key), "required field is missing");
  }
  const auto s = o.str(key);
  auto v = traffic::parse_payload_class(s);
  if (!v) Obj::fail(o.path(key), "unknown payload class '" + s + "' (small, medium, large)");
  return *v;
}

traffic::SpeedClass speed_class(Obj& o, const std::string& key, std::optional<traffic::SpeedClass> def) {
  if (!o.find(key)) {
    if (def) return *def;
    Obj::fail(o.path(key), "required field is missing");
  }
  const auto s = o.str(key);
  auto v = traffic::parse_speed_class(s);
  if (!v) Obj::fail(o.path(key), "unknown speed class '" + s + "' (low, moderate, fast)");
  return *v;
}

ml::TimingMode timing_mode(Obj& o, const std::string& key, ml::TimingMode def) {
  const auto s = o.str(key, ml::to_string(def));
  auto v = ml::parse_timing(s);
  if (!v) Obj::fail(o.path(key), "unknown timing '" + s + "' (wall, work)");
  return *v;
}

sim::LinkParams link_params(const json& j, const std::string& path, sim::LinkParams def) {
  Obj o(j, path);
  const double prop_us = o.number("propagation_us", static_cast<double>(def.propagation_delay.ns()) / 1000.0);
  if (prop_us < 0.0) Obj::fail(o.path("propagation_us"), "must be >= 0");
  def.propagation_delay = SimTime::from_ns(std::llround(prop_us * 1000.0));
  def.capacity_pps = o.number("capacity_pps", def.capacity_pps);
  def.queue_capacity = static_cast<std::size_t>(o.uint("queue_packets", def.queue_capacity));
  o.reject_unknown();
  if (!(def.capacity_pps > 0.0)) Obj::fail(o.path("capacity_pps"), "must be > 0");
  if (def.queue_capacity == 0) Obj::fail(o.path("queue_packets"), "must be >= 1");
  return def;
}

void parse_topology(const json& j, TopologyConfig& t) {
  Obj o(j, "topology");
  t.preset = o.str("preset", t.preset);
  t.sensors = static_cast<std::size_t>(o.uint("sensors", t.sensors));
  if (auto* v = o.find("core")) t.links.core = link_params(*v, "topology.core", t.links.core);
  if (auto* v = o.find("access")) t.links.access = link_params(*v, "topology.access", t.links.access);
  if (auto* v = o.find("target_access"))
    t.links.target_access = link_params(*v, "topology.target_access", t.links.target_access);
  t.links.target = o.str("target", t.links.target);
  o.reject_unknown();
}

void parse_hyperparameters(const json& j, ml::Hyperparameters& hp) {
  Obj o(j, "automl.hyperparameters");
  if (auto* v = o.find("decision_tree")) {
    Obj t(*v, "automl.hyperparameters.decision_tree");
    hp.decision_tree.max_depth = static_cast<int>(t.uint("max_depth", static_cast<std::uint64_t>(hp.decision_tree.max_depth)));
    hp.decision_tree.min_split = static_cast<std::size_t>(t.uint("min_split", hp.decision_tree.min_split));
    t.reject_unknown();
  }
  if (auto* v = o.find("random_forest")) {
    Obj t(*v, "automl.hyperparameters.random_forest");
    hp.random_forest.trees = static_cast<std::size_t>(t.uint("trees", hp.random_forest.trees));
    hp.random_forest.max_depth = static_cast<int>(t.uint("max_depth", static_cast<std::uint64_t>(hp.random_forest.max_depth)));
    hp.random_forest.min_split = static_cast<std::size_t>(t.uint("min_split", hp.random_forest.min_split));
    hp.random_forest.bootstrap = t.boolean("bootstrap", hp.random_forest.bootstrap);
    t.reject_unknown();
    if (hp.random_forest.trees == 0) Obj::fail("automl.hyperparameters.random_forest.trees", "must be >= 1");
  }
  if (auto* v = o.find("knn")) {
    Obj t(*v, "automl.hyperparameters.knn");
    hp.knn.k = static_cast<std::size_t>(t.uint("k", hp.knn.k));
    t.reject_unknown();
    if (hp.knn.k == 0) Obj::fail("automl.hyperparameters.knn.k", "must be >= 1");
  }
  if (auto* v = o.find("naive_bayes")) {
    Obj t(*v, "automl.hyperparameters.naive_bayes");
    hp.naive_bayes.variance_floor = t.number("variance_floor", hp.naive_bayes.variance_floor);
    t.reject_unknown();
    if (!(hp.naive_bayes.variance_floor > 0.0))
      Obj::fail("automl.hyperparameters.naive_bayes.variance_floor", "must be > 0");
  }
  if (auto* v = o.find("logistic_regression")) {
    Obj t(*v, "automl.hyperparameters.logistic_regression");
    hp.logistic_regression.epochs = static_cast<std::size_t>(t.uint("epochs", hp.logistic_regression.epochs));
    hp.logistic_regression.step = t.number("step", hp.logistic_regression.step);
    t.reject_unknown();
  }
  if (auto* v = o.find("linear_svm")) {
    Obj t(*v, "automl.hyperparameters.linear_svm");
    hp.linear_svm.epochs = static_cast<std::size_t>(t.uint("epochs", hp.linear_svm.epochs));
    hp.linear_svm.step = t.number("step", hp.linear_svm.step);
    hp.linear_svm.lambda = t.number("lambda", hp.linear_svm.lambda);
    t.reject_unknown();
  }
  o.reject_unknown();
}

}  // namespace

sim::TopologySpec ScenarioConfig::topology_spec() const {
  if (topology.preset == "test") return sim::test_preset(topology.links);
  if (topology.preset == "minimal") return sim::minimal_preset(topology.links);
  if (topology.preset == "scaling") return sim::scaling_preset(topology.sensors, topology.links);
  throw ConfigError("topology.preset: unknown preset '" + topology.preset + "' (test, minimal, scaling)");
}

monitor::BaselineConfig ScenarioConfig::baseline_config() const {
  monitor::BaselineConfig b = baseline;
  b.topology = topology_spec();
  b.seed = baseline_seed.value_or(seed);
  b.testbed.poll_interval = SimTime::from_s(poll_interval_s);
  b.testbed.monitor.window_polls = window_polls;
  return b;
}

std::uint64_t ScenarioConfig::flow_seed(std::size_t i) const {
  return normal_flows.at(i).seed.value_or(mix_seed(seed, 0x1000 + i));
}

std::uint64_t ScenarioConfig::attack_seed(std::size_t i) const {
  return attacks.at(i).seed.value_or(mix_seed(seed, 0x2000 + i));
}

std::optional<std::pair<double, double>> ScenarioConfig::attack_window() const {
  if (attacks.empty()) return std::nullopt;
  double lo = attacks.front().start_s, hi = attacks.front().stop_s;
  for (const auto& a : attacks) {
    lo = std::min(lo, a.start_s);
    hi = std::max(hi, a.stop_s);
  }
  return std::make_pair(lo, hi);
}

ScenarioConfig parse_config(const std::string& json_text, const std::string& source) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ": invalid JSON: " + e.what());
  }
  ScenarioConfig c;
  Obj root(j, "");
  c.name = root.str("name", c.name);
  c.seed = root.uint("seed");
  c.duration_s = root.number("duration_s", c.duration_s);
  c.poll_interval_s = root.number("poll_interval_s", c.poll_interval_s);
  c.window_polls = static_cast<std::size_t>(root.uint("window_polls", c.window_polls));
  c.output_dir = root.str("output_dir", c.output_dir);
  if (auto* v = root.find("topology")) parse_topology(*v, c.topology);

  if (auto* v = root.find("normal_flows")) {
    if (!v->is_array()) Obj::fail("normal_flows", "expected an array");
    for (std::size_t i = 0; i < v->size(); ++i) {
      Obj o((*v)[i], "normal_flows[" + std::to_string(i) + "]");
      FlowConfig f;
      f.src = o.str("src");
      f.dst = o.str("dst");
      f.payload_class = payload_class(o, "payload_class", std::nullopt);
      f.speed_class = speed_class(o, "speed_class", std::nullopt);
      f.start_s = o.number("start_s", 0.0);
      f.stop_s = o.number("stop_s", c.duration_s);
      f.seed = o.opt_uint("seed");
      o.reject_unknown();
      c.normal_flows.push_back(f);
    }
  }
  if (auto* v = root.find("attacks")) {
    if (!v->is_array()) Obj::fail("attacks", "expected an array");
    for (std::size_t i = 0; i < v->size(); ++i) {
      Obj o((*v)[i], "attacks[" + std::to_string(i) + "]");
      AttackConfig a;
      a.target = o.str("target");
      a.bots = o.strings("bots");
      a.payload_class = payload_class(o, "payload_class", std::nullopt);
      a.speed_class = speed_class(o, "speed_class", std::nullopt);
      a.start_s = o.number("start_s");
      a.stop_s = o.number("stop_s");
      a.seed = o.opt_uint("seed");
      o.reject_unknown();
      c.attacks.push_back(a);
    }
  }
  if (auto* v = root.find("ping")) {
    Obj o(*v, "ping");
    PingConfig p;
    p.src = o.str("src");
    p.dst = o.str("dst");
    p.interval_s = o.number("interval_s", p.interval_s);
    p.timeout_s = o.number("timeout_s", p.timeout_s);
    p.start_s = o.number("start_s", p.start_s);
    p.stop_s = o.number("stop_s", c.duration_s - p.timeout_s);
    p.payload = static_cast<std::uint32_t>(o.uint("payload", p.payload));
    o.reject_unknown();
    c.ping = p;
  }
  if (auto* v = root.find("defense")) {
    Obj o(*v, "defense");
    const auto m = o.str("mode", to_string(c.defense.mode));
    auto mode = parse_defense_mode(m);
    if (!mode) Obj::fail("defense.mode", "unknown value '" + m + "' (none, greedy, automl)");
    c.defense.mode = *mode;
    c.defense.hold_down_s = o.number("hold_down_s", c.defense.hold_down_s);
    c.defense.greedy_threshold_pps = o.number("greedy_threshold_pps", c.defense.greedy_threshold_pps);
    c.defense.greedy_hold_down_s = o.number("greedy_hold_down_s", c.defense.greedy_hold_down_s);
    o.reject_unknown();
  }
  if (auto* v = root.find("automl")) {
    Obj o(*v, "automl");
    c.automl.buffer_s = o.number("buffer_s", c.automl.buffer_s);
    if (auto* w = o.find("weights")) {
      Obj wo(*w, "automl.weights");
      c.automl.weights.alpha = wo.number("alpha", c.automl.weights.alpha);
      c.automl.weights.beta = wo.number("beta", c.automl.weights.beta);
      wo.reject_unknown();
    }
    const auto cal = o.str("calibration", c.automl.per_state_weights ? "per_state" : "global");
    if (cal != "global" && cal != "per_state")
      Obj::fail("automl.calibration", "unknown value '" + cal + "' (global, per_state)");
    c.automl.per_state_weights = cal == "per_state";
    c.automl.baseline_dir = o.str("baseline_dir", c.automl.baseline_dir);
    c.automl.split_seed = o.uint("split_seed", c.automl.split_seed);
    c.automl.timing = timing_mode(o, "timing", c.automl.timing);
    c.automl.timing_repeats = static_cast<std::size_t>(o.uint("timing_repeats", c.automl.timing_repeats));
    if (auto* h = o.find("hyperparameters")) parse_hyperparameters(*h, c.automl.hyperparameters);
    o.reject_unknown();
  }
  if (auto* v = root.find("baseline")) {
    Obj o(*v, "baseline");
    auto& b = c.baseline;
    b.target = o.str("target", b.target);
    if (o.find("bots")) b.bots = o.strings("bots");
    b.ping_source = o.str("ping_source", b.ping_source);
    b.normal_flows = static_cast<std::size_t>(o.uint("normal_flows", b.normal_flows));
    b.max_normal_fanin = static_cast<std::size_t>(o.uint("max_normal_fanin", b.max_normal_fanin));
    b.duration_s = o.number("duration_s", b.duration_s);
    b.attack_start_s = o.number("attack_start_s", b.attack_start_s);
    c.baseline_seed = o.opt_uint("seed");
    o.reject_unknown();
  }
  if (auto* v = root.find("train_eval")) {
    Obj o(*v, "train_eval");
    c.train_eval.datasets_dir = o.str("datasets_dir", c.train_eval.datasets_dir);
    c.train_eval.timing = timing_mode(o, "timing", c.train_eval.timing);
    c.train_eval.timing_repeats = static_cast<std::size_t>(o.uint("timing_repeats", c.train_eval.timing_repeats));
    c.train_eval.split_seed = o.uint("split_seed", c.train_eval.split_seed);
    o.reject_unknown();
  }
  root.reject_unknown();
  validate(c);
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

namespace {

void check_window(const std::string& path, double start, double stop, double duration) {
  if (start < 0.0) Obj::fail(path + ".start_s", "must be >= 0");
  if (!(stop > start)) Obj::fail(path + ".stop_s", "must be greater than start_s");
  if (stop > duration) Obj::fail(path + ".stop_s", "must not exceed duration_s");
}

}  // namespace

void validate(const ScenarioConfig& c) {
  if (!(c.duration_s > 0.0)) Obj::fail("duration_s", "must be > 0");
  if (!(c.poll_interval_s > 0.0)) Obj::fail("poll_interval_s", "must be > 0");
  if (c.window_polls < 2) Obj::fail("window_polls", "must be >= 2");
  if (c.output_dir.empty()) Obj::fail("output_dir", "must not be empty");

  const auto topo = sim::Topology::build(c.topology_spec());
  auto end_node = [&](const std::string& path, const std::string& name) {
    auto id = topo.find(name);
    if (!id) Obj::fail(path, "unknown node '" + name + "'");
    const auto role = topo.node(*id).role;
    if (role != sim::NodeRole::host && role != sim::NodeRole::sensor)
      Obj::fail(path, "node '" + name + "' is not a host or sensor");
  };

  for (std::size_t i = 0; i < c.normal_flows.size(); ++i) {
    const auto p = "normal_flows[" + std::to_string(i) + "]";
    const auto& f = c.normal_flows[i];
    end_node(p + ".src", f.src);
    end_node(p + ".dst", f.dst);
    if (f.src == f.dst) Obj::fail(p + ".dst", "must differ from src");
    check_window(p, f.start_s, f.stop_s, c.duration_s);
  }
  for (std::size_t i = 0; i < c.attacks.size(); ++i) {
    const auto p = "attacks[" + std::to_string(i) + "]";
    const auto& a = c.attacks[i];
    end_node(p + ".target", a.target);
    if (a.bots.empty()) Obj::fail(p + ".bots", "must name at least one bot");
    for (std::size_t b = 0; b < a.bots.size(); ++b) {
      end_node(p + ".bots[" + std::to_string(b) + "]", a.bots[b]);
      if (a.bots[b] == a.target) Obj::fail(p + ".bots[" + std::to_string(b) + "]", "bot cannot be the target");
    }
    check_window(p, a.start_s, a.stop_s, c.duration_s);
  }
  if (c.ping) {
    end_node("ping.src", c.ping->src);
    end_node("ping.dst", c.ping->dst);
    if (c.ping->src == c.ping->dst) Obj::fail("ping.dst", "must differ from src");
    if (!(c.ping->interval_s > 0.0)) Obj::fail("ping.interval_s", "must be > 0");
    if (!(c.ping->timeout_s > 0.0)) Obj::fail("ping.timeout_s", "must be > 0");
    check_window("ping", c.ping->start_s, c.ping->stop_s, c.duration_s);
  }
  if (!(c.defense.hold_down_s > 0.0)) Obj::fail("defense.hold_down_s", "must be > 0");
  if (!(c.defense.greedy_hold_down_s > 0.0)) Obj::fail("defense.greedy_hold_down_s", "must be > 0");
  if (!(c.defense.greedy_threshold_pps > 0.0)) Obj::fail("defense.greedy_threshold_pps", "must be > 0");
  if (!(c.automl.buffer_s >= automl::BufferSchedule::kMinPeriod && c.automl.buffer_s <= automl::BufferSchedule::kMaxPeriod))
    Obj::fail("automl.buffer_s", "must be within [60, 300]");
  try {
    automl::SelectionWeights::uniform(c.automl.weights).validate();
  } catch (const std::invalid_argument&) {
    Obj::fail("automl.weights", "alpha and beta must be finite, >= 0 and not both zero");
  }
  if (c.automl.timing_repeats == 0) Obj::fail("automl.timing_repeats", "must be >= 1");
  if (c.train_eval.timing_repeats == 0) Obj::fail("train_eval.timing_repeats", "must be >= 1");
  if (!(c.baseline.duration_s > c.baseline.attack_start_s) || c.baseline.attack_start_s < 0.0)
    Obj::fail("baseline.attack_start_s", "must be within [0, duration_s)");
}

}  // namespace sdsn::harness
