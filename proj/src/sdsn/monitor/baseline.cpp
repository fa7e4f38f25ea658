#include "sdsn/monitor/baseline.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>

#include "sdsn/core/error.hpp"
#include "sdsn/core/rng.hpp"

namespace sdsn::monitor {

std::size_t cell_index(traffic::PayloadClass p, traffic::SpeedClass s) {
  return static_cast<std::size_t>(p) * 3 + static_cast<std::size_t>(s);
}

std::pair<traffic::PayloadClass, traffic::SpeedClass> cell_classes(std::size_t index) {
  return {traffic::kPayloadClasses[index / 3], traffic::kSpeedClasses[index % 3]};
}

std::vector<std::pair<std::string, std::string>> normal_flow_endpoints(const BaselineConfig& config) {
  const auto topo = sim::Topology::build(config.topology);
  std::set<std::string> excluded(config.bots.begin(), config.bots.end());
  excluded.insert(config.target);

  std::vector<std::string> sources, sinks;
  for (const auto& n : topo.nodes()) {
    if (excluded.count(n.name)) continue;
    if (n.role == sim::NodeRole::host || n.role == sim::NodeRole::sensor) sources.push_back(n.name);
    // ping replies already reach the ping source; keep its fan-in below the attack's
    if (n.role == sim::NodeRole::host && n.name != config.ping_source) sinks.push_back(n.name);
  }

  std::vector<std::pair<std::string, std::string>> candidates;
  for (const auto& s : sources)
    for (const auto& d : sinks)
      if (s != d) candidates.emplace_back(s, d);

  // Seeded Fisher-Yates, then greedy acceptance under the fan-in cap.
  Rng rng(mix_seed(config.seed, 0xF10));
  for (std::size_t i = candidates.size(); i > 1; --i)
    std::swap(candidates[i - 1], candidates[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1))]);

  std::map<std::string, std::size_t> fanin;
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& c : candidates) {
    if (out.size() == config.normal_flows) break;
    if (fanin[c.second] >= config.max_normal_fanin) continue;
    ++fanin[c.second];
    out.push_back(c);
  }
  if (out.size() < config.normal_flows)
    throw ConfigError("baseline.normal_flows: only " + std::to_string(out.size()) +
                      " endpoint pairs fit under max_normal_fanin");
  return out;
}

Dataset capture_cell(const BaselineConfig& config, traffic::PayloadClass p, traffic::SpeedClass s) {
  const std::uint64_t cell_seed = mix_seed(config.seed, cell_index(p, s));
  Testbed bed(config.topology, config.testbed);
  const auto& topo = bed.topology();
  const SimTime end = SimTime::from_s(config.duration_s);

  sim::FlowId next_id = 0;
  const auto endpoints = normal_flow_endpoints(config);
  for (std::size_t i = 0; i < endpoints.size(); ++i) {
    traffic::FlowSpec f;
    f.id = next_id++;
    f.src = topo.require(endpoints[i].first);
    f.dst = topo.require(endpoints[i].second);
    f.profile = {p, s, mix_seed(cell_seed, i)};
    f.start = SimTime{};
    f.stop = end;
    f.label = 0;
    bed.add_flow(f);
  }

  traffic::AttackScenario attack;
  attack.target = topo.require(config.target);
  for (const auto& b : config.bots) attack.bot_sources.push_back(topo.require(b));
  attack.profile = {p, s, mix_seed(cell_seed, 0xA77AC)};
  attack.start = SimTime::from_s(config.attack_start_s);
  attack.stop = end;
  for (const auto& f : traffic::attack_flows(attack, topo, next_id)) bed.add_flow(f);
  next_id += static_cast<sim::FlowId>(config.bots.size());

  sim::PingParams ping;
  ping.src = topo.require(config.ping_source);
  ping.dst = attack.target;
  ping.stop = end;
  ping.flow_id = next_id++;
  bed.add_ping(ping);

  Dataset d;
  d.provenance = DatasetProvenance{p, s, cell_seed};
  bed.run(end, [&](SimTime, const auto&, const std::vector<FlowVector>& vectors) {
    for (const auto& v : vectors) d.samples.push_back({v.features, bed.label_or_normal(v.key)});
  });
  if (!d.has_both_labels())
    throw RuntimeError(std::string("baseline cell ") + traffic::to_string(p) + "/" + traffic::to_string(s) +
                       " produced single-label data");
  return d;
}

BaselineSet build_baseline_datasets(const BaselineConfig& config) {
  BaselineSet out;
  for (std::size_t i = 0; i < kCellCount; ++i) {
    auto [p, s] = cell_classes(i);
    out[i] = capture_cell(config, p, s);
  }
  return out;
}

std::vector<std::string> write_baseline(const BaselineSet& set, const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> paths;
  for (std::size_t i = 0; i < kCellCount; ++i) {
    auto [p, s] = cell_classes(i);
    const auto path = (std::filesystem::path(dir) / baseline_file_name(p, s)).string();
    export_csv(set[i], path);
    paths.push_back(path);
  }
  return paths;
}

BaselineSet load_baseline(const std::string& dir) {
  std::vector<std::string> missing;
  for (std::size_t i = 0; i < kCellCount; ++i) {
    auto [p, s] = cell_classes(i);
    if (!std::filesystem::exists(std::filesystem::path(dir) / baseline_file_name(p, s)))
      missing.push_back(baseline_file_name(p, s));
  }
  if (!missing.empty()) {
    std::string msg = "missing baseline datasets in " + dir + ":";
    for (const auto& m : missing) msg += " " + m;
    throw RuntimeError(msg);
  }
  BaselineSet out;
  for (std::size_t i = 0; i < kCellCount; ++i) {
    auto [p, s] = cell_classes(i);
    out[i] = load_csv((std::filesystem::path(dir) / baseline_file_name(p, s)).string());
    out[i].provenance = DatasetProvenance{p, s, 0};
  }
  return out;
}

}  // namespace sdsn::monitor
