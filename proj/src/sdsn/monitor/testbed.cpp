#include "sdsn/monitor/testbed.hpp"

#include "sdsn/core/error.hpp"

namespace sdsn::monitor {

Testbed::Testbed(const sim::TopologySpec& spec, TestbedParams params)
    : params_(params),
      topology_(sim::Topology::build(spec)),
      controller_(topology_),
      network_(engine_, topology_, controller_, params.network),
      monitor_(topology_, params.monitor) {}

void Testbed::add_flow(const traffic::FlowSpec& flow) {
  const FlowKey key{topology_.node(flow.src).mac, topology_.node(flow.dst).mac};
  auto [it, inserted] = truth_.emplace(key, flow.label);
  if (!inserted && it->second != flow.label)
    throw ConfigError("flow " + topology_.node(flow.src).name + "->" + topology_.node(flow.dst).name +
                      " carries both normal and attack traffic");
  traffic::drive_flow(network_, flow);
}

std::size_t Testbed::add_ping(const sim::PingParams& params) {
  for (const FlowKey key : {FlowKey{topology_.node(params.src).mac, topology_.node(params.dst).mac},
                            FlowKey{topology_.node(params.dst).mac, topology_.node(params.src).mac}}) {
    auto [it, inserted] = truth_.emplace(key, 0);
    if (!inserted && it->second != 0) throw ConfigError("ping path overlaps an attack flow key");
  }
  return network_.start_ping(params);
}

std::optional<Label> Testbed::label_of(const FlowKey& key) const {
  auto it = truth_.find(key);
  if (it == truth_.end()) return std::nullopt;
  return it->second;
}

void Testbed::run(SimTime end, const TickHandler& on_tick) {
  for (SimTime t = engine_.now() + params_.poll_interval; t <= end; t += params_.poll_interval) {
    engine_.run_until(t);
    auto records = poll_cycle(controller_, t);
    auto vectors = monitor_.ingest(records, t);
    if (on_tick) on_tick(t, records, vectors);
  }
  engine_.run_until(end);
}

}  // namespace sdsn::monitor
