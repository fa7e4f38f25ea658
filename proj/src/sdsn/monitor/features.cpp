#include "sdsn/monitor/features.hpp"

#include <set>
#include <stdexcept>

namespace sdsn::monitor {

FeatureVector FeatureVector::from_array(std::span<const double> v) {
  if (v.size() != kFeatureCount) throw std::invalid_argument("feature arity mismatch");
  return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

std::vector<FlowStatsRecord> poll_cycle(const control::Controller& controller, SimTime t) {
  std::vector<FlowStatsRecord> out;
  for (auto sw : controller.topology().switches()) {
    auto recs = controller.request_flow_stats(sw, t);
    out.insert(out.end(), recs.begin(), recs.end());
  }
  return out;
}

std::optional<FeatureVector> featurize(std::span<const FlowStatsRecord> window, double src_fanout,
                                       double dst_fanin) {
  if (window.size() < 2) throw std::invalid_argument("featurize: window needs at least two polls");
  for (std::size_t i = 1; i < window.size(); ++i) {
    const auto& a = window[i - 1];
    const auto& b = window[i];
    if (b.installed_at != a.installed_at || b.pckt_count < a.pckt_count || b.byte_count < a.byte_count)
      return std::nullopt;
  }
  const auto& first = window.front();
  const auto& last = window.back();
  const double span = (last.polled_at - first.polled_at).seconds();
  if (!(span > 0.0)) throw std::invalid_argument("featurize: polls must be strictly increasing in time");
  const auto dp = static_cast<double>(last.pckt_count - first.pckt_count);
  const auto db = static_cast<double>(last.byte_count - first.byte_count);
  FeatureVector f;
  f.pckt_rate = dp / span;
  f.byte_rate = db / span;
  f.mean_pckt_size = dp > 0 ? db / dp : 0.0;
  f.flow_duration = last.duration_s;
  f.src_fanout = src_fanout;
  f.dst_fanin = dst_fanin;
  return f;
}

Monitor::Monitor(const sim::Topology& topology, MonitorParams params) : topology_(&topology), params_(params) {
  if (params_.window_polls < 2) throw std::invalid_argument("monitor: window must cover at least two polls");
}

std::vector<FlowVector> Monitor::ingest(const std::vector<FlowStatsRecord>& records, SimTime t) {
  // Keep only the ingress-switch view of each flow.
  std::map<FlowKey, FlowStatsRecord> current;
  for (const auto& r : records) {
    auto src = topology_->find_by_mac(r.key.eth_src);
    if (!src || topology_->attachment_switch(*src) != r.switch_id) continue;
    current[r.key] = r;
  }

  for (auto it = history_.begin(); it != history_.end();) {
    if (!current.count(it->first))
      it = history_.erase(it);  // entry deleted: the next window starts fresh
    else
      ++it;
  }
  for (const auto& [key, rec] : current) {
    auto& h = history_[key];
    if (!h.empty()) {
      const auto& prev = h.back();
      if (rec.installed_at != prev.installed_at || rec.pckt_count < prev.pckt_count) h.clear();
    }
    h.push_back(rec);
    while (h.size() > params_.window_polls) h.pop_front();
  }

  // Fan-out / fan-in over flows that moved packets within their window.
  std::map<sim::MacAddress, std::set<sim::MacAddress>> fanout, fanin;
  for (const auto& [key, h] : history_) {
    const bool active = h.size() >= 2 ? h.back().pckt_count > h.front().pckt_count : h.back().pckt_count > 0;
    if (!active) continue;
    fanout[key.eth_src].insert(key.eth_dst);
    fanin[key.eth_dst].insert(key.eth_src);
  }

  std::vector<FlowVector> out;
  for (const auto& [key, h] : history_) {
    if (h.size() < 2) continue;
    auto outs = fanout[key.eth_src];
    outs.insert(key.eth_dst);
    auto ins = fanin[key.eth_dst];
    ins.insert(key.eth_src);
    std::vector<FlowStatsRecord> window(h.begin(), h.end());
    if (auto f = featurize(window, static_cast<double>(outs.size()), static_cast<double>(ins.size())))
      out.push_back({key, t, *f});
  }
  return out;
}

}  // namespace sdsn::monitor
