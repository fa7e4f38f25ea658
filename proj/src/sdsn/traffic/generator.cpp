#include "sdsn/traffic/generator.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

#include "sdsn/core/error.hpp"
#include "sdsn/sim/network.hpp"

namespace sdsn::traffic {

FlowGenerator::FlowGenerator(const TrafficProfile& profile, SimTime start, SimTime stop)
    : profile_(profile), rng_(profile.seed), start_(start), stop_(stop) {
  const Range r = profile.rate();
  rate_ = rng_.uniform_int(r.lo, r.hi);
}

std::optional<std::pair<SimTime, std::uint32_t>> FlowGenerator::next() {
  // 128-bit product: k * 1e9 overflows 64 bits only after ~580 years at 1 pps,
  // but fast flows index far higher than slow ones.
  const auto offset = static_cast<std::int64_t>(static_cast<unsigned __int128>(index_) * 1'000'000'000u /
                                                static_cast<unsigned __int128>(rate_));
  const SimTime at = start_ + SimTime::from_ns(offset);
  if (at >= stop_) return std::nullopt;
  ++index_;
  const Range p = profile_.payload();
  return std::make_pair(at, static_cast<std::uint32_t>(rng_.uniform_int(p.lo, p.hi)));
}

std::vector<PacketEvent> sample_flow(const TrafficProfile& profile, NodeId src, NodeId dst, SimTime duration,
                                     FlowId flow, SimTime start) {
  if (duration <= SimTime{}) throw std::invalid_argument("sample_flow: duration must be > 0");
  FlowGenerator gen(profile, start, start + duration);
  std::vector<PacketEvent> out;
  while (auto ev = gen.next()) out.push_back({ev->first, src, dst, ev->second, flow});
  return out;
}

std::vector<FlowSpec> attack_flows(const AttackScenario& scenario, const sim::Topology& topology, FlowId first_id) {
  auto is_end_node = [&](NodeId id) {
    if (id >= topology.nodes().size()) return false;
    const auto role = topology.node(id).role;
    return role == sim::NodeRole::host || role == sim::NodeRole::sensor;
  };
  if (!is_end_node(scenario.target)) throw ConfigError("attack: unknown target node " + std::to_string(scenario.target));
  if (scenario.bot_sources.empty()) throw ConfigError("attack: no bot sources");
  if (scenario.stop < scenario.start) throw ConfigError("attack: stop precedes start");
  std::vector<FlowSpec> out;
  for (std::size_t i = 0; i < scenario.bot_sources.size(); ++i) {
    const NodeId bot = scenario.bot_sources[i];
    if (!is_end_node(bot)) throw ConfigError("attack: unknown bot node " + std::to_string(bot));
    if (bot == scenario.target) throw ConfigError("attack: bot '" + topology.node(bot).name + "' is the target");
    if (topology.path(bot, scenario.target).empty())
      throw ConfigError("attack: target unreachable from bot '" + topology.node(bot).name + "'");
    FlowSpec f;
    f.id = first_id + static_cast<FlowId>(i);
    f.src = bot;
    f.dst = scenario.target;
    f.profile = scenario.profile;
    f.profile.seed = mix_seed(scenario.profile.seed, i);
    f.start = scenario.start;
    f.stop = scenario.stop;
    f.label = 1;
    out.push_back(f);
  }
  return out;
}

std::vector<PacketEvent> build_attack(const AttackScenario& scenario, const sim::Topology& topology,
                                      FlowId first_id) {
  std::vector<PacketEvent> out;
  for (const auto& f : attack_flows(scenario, topology, first_id)) {
    FlowGenerator gen(f.profile, f.start, f.stop);
    while (auto ev = gen.next()) out.push_back({ev->first, f.src, f.dst, ev->second, f.id});
  }
  std::stable_sort(out.begin(), out.end(), [](const PacketEvent& a, const PacketEvent& b) {
    return a.at != b.at ? a.at < b.at : a.flow < b.flow;
  });
  return out;
}

namespace {

void schedule_next(sim::Network& net, std::shared_ptr<FlowGenerator> gen, FlowSpec flow) {
  auto ev = gen->next();
  if (!ev) return;
  const auto [at, payload] = *ev;
  net.engine().schedule(at, [&net, gen = std::move(gen), flow, payload = payload]() mutable {
    net.send(flow.src, net.make_packet(flow.src, flow.dst, payload, sim::PacketKind::udp_data, flow.id));
    schedule_next(net, std::move(gen), flow);
  });
}

}  // namespace

void drive_flow(sim::Network& network, const FlowSpec& flow) {
  if (flow.stop <= flow.start) return;
  schedule_next(network, std::make_shared<FlowGenerator>(flow.profile, flow.start, flow.stop), flow);
}

}  // namespace sdsn::traffic
