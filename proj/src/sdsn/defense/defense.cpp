#include "sdsn/defense/defense.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

#include "sdsn/core/error.hpp"
#include "sdsn/core/format.hpp"

namespace sdsn::defense {

const char* to_string(AlertAction a) {
  switch (a) {
    case AlertAction::alert: return "ALERT";
    case AlertAction::del: return "DEL";
    case AlertAction::readmit: return "READMIT";
  }
  return "?";
}

std::size_t AlertLog::count(AlertAction a) const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.action == a ? 1 : 0;
  return n;
}

std::string AlertLog::to_csv() const {
  std::string out = std::string(kAlertLogHeader) + "\n";
  for (const auto& e : entries) {
    out += format_fixed(e.at.seconds(), 6) + "," + e.key.eth_src.to_string() + "," +
           e.key.eth_dst.to_string() + "," + e.model + "," + to_string(e.action) + "\n";
  }
  return out;
}

AlertLog AlertLog::from_csv(const std::string& text, const std::string& source) {
  AlertLog log;
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const std::string_view row = strip_cr(line);
    if (n == 1) {
      if (row != kAlertLogHeader) throw ParseError(source, n, "unexpected header");
      continue;
    }
    if (row.empty()) continue;
    const auto f = split_csv_line(row);
    if (f.size() != 5) throw ParseError(source, n, "expected 5 fields");
    AlertLogEntry e;
    const auto t = parse_double(f[0]);
    const auto src = sim::MacAddress::parse(std::string(f[1]));
    const auto dst = sim::MacAddress::parse(std::string(f[2]));
    if (!t || !src || !dst) throw ParseError(source, n, "malformed field");
    e.at = SimTime::from_s(*t);
    e.key = FlowKey{*src, *dst};
    e.model = std::string(f[3]);
    if (f[4] == "ALERT") e.action = AlertAction::alert;
    else if (f[4] == "DEL") e.action = AlertAction::del;
    else if (f[4] == "READMIT") e.action = AlertAction::readmit;
    else throw ParseError(source, n, "unknown action '" + std::string(f[4]) + "'");
    log.entries.push_back(std::move(e));
  }
  if (n == 0) throw ParseError(source, 1, "missing header");
  return log;
}

std::vector<AlertEvent> detect_tick(const ml::TrainedModel* model, const std::vector<monitor::FlowVector>& vectors,
                                    SimTime now, std::string* warning) {
  std::vector<AlertEvent> out;
  if (!model) {
    if (warning) *warning = "no detection model installed";
    return out;
  }
  for (const auto& v : vectors) {
    if (model->predict(v.features) != 1) continue;
    out.push_back(AlertEvent{now, v.key, 1, ml::to_string(model->algorithm), v.features});
  }
  return out;
}

std::vector<AlertEvent> greedy_detect(const std::vector<control::FlowStatsRecord>& previous,
                                      const std::vector<control::FlowStatsRecord>& current, double threshold_pps) {
  if (!(threshold_pps > 0.0)) throw std::invalid_argument("greedy_detect: threshold must be > 0");
  std::map<std::pair<sim::NodeId, FlowKey>, const control::FlowStatsRecord*> prev;
  for (const auto& r : previous) prev[{r.switch_id, r.key}] = &r;
  std::vector<AlertEvent> out;
  std::set<FlowKey> alerted;
  for (const auto& r : current) {
    auto it = prev.find({r.switch_id, r.key});
    if (it == prev.end()) continue;
    const auto& p = *it->second;
    if (p.installed_at != r.installed_at || r.pckt_count < p.pckt_count) continue;
    const double span = (r.polled_at - p.polled_at).seconds();
    if (span <= 0.0) continue;
    const double rate = static_cast<double>(r.pckt_count - p.pckt_count) / span;
    if (rate <= threshold_pps || !alerted.insert(r.key).second) continue;
    AlertEvent a;
    a.at = r.polled_at;
    a.key = r.key;
    a.model = "greedy";
    a.features.pckt_rate = rate;
    out.push_back(a);
  }
  return out;
}

Mitigator::Mitigator(control::Controller& controller, sim::Engine& engine, AlertLog& log, SimTime hold_down)
    : controller_(&controller), engine_(&engine), log_(&log), hold_down_(hold_down) {}

MitigationAction Mitigator::mitigate(const AlertEvent& alert) {
  const SimTime now = engine_->now();
  MitigationAction act;
  act.key = alert.key;
  act.extended = controller_->hold_down_expiry(alert.key, now).has_value();
  act.hold_until = now + hold_down_;
  controller_->hold_down(alert.key, act.hold_until);
  for (sim::NodeId sw : controller_->switches_holding(alert.key)) {
    if (controller_->delete_flow(sw, alert.key, now) == control::DeleteResult::deleted) act.deleted_on.push_back(sw);
  }
  log_->add(now, alert.key, alert.model, AlertAction::del);
  expiry_[alert.key] = act.hold_until;
  const FlowKey key = alert.key;
  const std::string model = alert.model;
  const SimTime until = act.hold_until;
  engine_->schedule(until, [this, key, model, until] {
    // a later mitigation moved the expiry; that one logs the readmission
    if (expiry_[key] == until) log_->add(until, key, model, AlertAction::readmit);
  });
  return act;
}

}  // namespace sdsn::defense
