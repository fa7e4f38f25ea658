#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "sdsn/control/controller.hpp"
#include "sdsn/monitor/dataset.hpp"
#include "sdsn/monitor/features.hpp"
#include "sdsn/sim/engine.hpp"
#include "sdsn/sim/network.hpp"
#include "sdsn/sim/topology.hpp"
#include "sdsn/traffic/generator.hpp"

namespace sdsn::monitor {

struct TestbedParams {
  MonitorParams monitor;
  sim::NetworkParams network;
  SimTime poll_interval = SimTime::from_s(1.0);
};

/// A simulated network with its controller and the once-per-tick flow
/// statistics loop. Also records which flow keys carry attack traffic, the
/// ground truth used for labels.
class Testbed {
public:
  using TickHandler =
      std::function<void(SimTime, const std::vector<FlowStatsRecord>&, const std::vector<FlowVector>&)>;

  Testbed(const sim::TopologySpec& spec, TestbedParams params = {});
  Testbed(const Testbed&) = delete;
  Testbed& operator=(const Testbed&) = delete;

  /// Registers ground truth and schedules the flow. A key that would carry
  /// both normal and attack traffic is a ConfigError.
  void add_flow(const traffic::FlowSpec& flow);
  /// Starts a ping; both directions are registered as normal keys.
  std::size_t add_ping(const sim::PingParams& params);

  std::optional<Label> label_of(const FlowKey& key) const;
  /// Label for a key with no registered flow (e.g. stray replies): normal.
  Label label_or_normal(const FlowKey& key) const { return label_of(key).value_or(0); }

  /// Polls every poll_interval (first poll at one interval) through `end`,
  /// calling `on_tick` after each poll, then drains events up to `end`.
  void run(SimTime end, const TickHandler& on_tick);

  const sim::Topology& topology() const { return topology_; }
  sim::Engine& engine() { return engine_; }
  control::Controller& controller() { return controller_; }
  sim::Network& network() { return network_; }
  Monitor& monitor() { return monitor_; }
  const TestbedParams& params() const { return params_; }

private:
  TestbedParams params_;
  sim::Topology topology_;
  sim::Engine engine_;
  control::Controller controller_;
  sim::Network network_;
  Monitor monitor_;
  std::map<FlowKey, Label> truth_;
};

}  // namespace sdsn::monitor
