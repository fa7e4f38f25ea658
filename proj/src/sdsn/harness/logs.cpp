#include "sdsn/harness/logs.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sdsn/core/error.hpp"
#include "sdsn/core/format.hpp"

namespace sdsn::harness {

namespace {

/// Yields (line number, fields) for every data row after checking the header.
template <typename Fn>
void for_each_row(const std::string& text, const std::string& source, const char* header, std::size_t arity, Fn fn) {
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const std::string_view row = strip_cr(line);
    if (n == 1) {
      if (row != header) throw ParseError(source, 1, "expected header '" + std::string(header) + "'");
      continue;
    }
    if (row.empty()) continue;
    const auto f = split_csv_line(row);
    if (f.size() != arity) throw ParseError(source, n, "expected " + std::to_string(arity) + " fields");
    fn(n, f);
  }
  if (n == 0) throw ParseError(source, 1, "missing header");
}

double need_double(std::string_view s, const std::string& source, std::size_t line) {
  auto v = parse_double(s);
  if (!v) throw ParseError(source, line, "malformed number '" + std::string(s) + "'");
  return *v;
}

sim::MacAddress need_mac(std::string_view s, const std::string& source, std::size_t line) {
  auto v = sim::MacAddress::parse(std::string(s));
  if (!v) throw ParseError(source, line, "malformed MAC '" + std::string(s) + "'");
  return *v;
}

monitor::Label need_label(std::string_view s, const std::string& source, std::size_t line) {
  if (s == "0") return 0;
  if (s == "1") return 1;
  throw ParseError(source, line, "label must be 0 or 1");
}

std::string fixed_or_na(std::optional<double> v, int precision) {
  return v ? format_fixed(*v, precision) : std::string("NA");
}

}  // namespace

std::string selection_to_csv(const std::vector<SelectionRow>& rows) {
  std::string out = std::string(kSelectionHeader) + "\n";
  for (const auto& r : rows) {
    out += format_fixed(r.cycle_t_s, 6) + "," + ml::to_string(r.algorithm) + "," + format_double(r.accuracy) + "," +
           format_double(r.detection_time_s) + "," + format_double(r.total_score) + "," + (r.selected ? "1" : "0") +
           "\n";
  }
  return out;
}

std::vector<SelectionRow> selection_from_csv(const std::string& text, const std::string& source) {
  std::vector<SelectionRow> rows;
  for_each_row(text, source, kSelectionHeader, 6, [&](std::size_t n, const auto& f) {
    SelectionRow r;
    r.cycle_t_s = need_double(f[0], source, n);
    auto alg = ml::parse_algorithm(std::string(f[1]));
    if (!alg) throw ParseError(source, n, "unknown algorithm '" + std::string(f[1]) + "'");
    r.algorithm = *alg;
    r.accuracy = need_double(f[2], source, n);
    r.detection_time_s = need_double(f[3], source, n);
    r.total_score = need_double(f[4], source, n);
    r.selected = need_label(f[5], source, n) == 1;
    rows.push_back(r);
  });
  return rows;
}

std::string detections_to_csv(const std::vector<DetectionRow>& rows) {
  std::string out = std::string(kDetectionHeader) + "\n";
  for (const auto& r : rows) {
    out += format_fixed(r.at.seconds(), 6) + "," + r.key.eth_src.to_string() + "," + r.key.eth_dst.to_string() + "," +
           std::to_string(r.label) + "," + (r.predicted ? std::to_string(*r.predicted) : std::string("-")) + "\n";
  }
  return out;
}

std::vector<DetectionRow> detections_from_csv(const std::string& text, const std::string& source) {
  std::vector<DetectionRow> rows;
  for_each_row(text, source, kDetectionHeader, 5, [&](std::size_t n, const auto& f) {
    DetectionRow r;
    r.at = SimTime::from_s(need_double(f[0], source, n));
    r.key = control::FlowKey{need_mac(f[1], source, n), need_mac(f[2], source, n)};
    r.label = need_label(f[3], source, n);
    if (f[4] != "-") r.predicted = need_label(f[4], source, n);
    rows.push_back(r);
  });
  return rows;
}

std::string flow_table_to_csv(const std::vector<std::pair<std::string, control::FlowStatsRecord>>& rows) {
  std::string out = std::string(kFlowTableHeader) + "\n";
  for (const auto& [sw, r] : rows) {
    out += sw + "," + r.key.eth_src.to_string() + "," + r.key.eth_dst.to_string() + "," + std::to_string(r.pckt_count) +
           "," + std::to_string(r.byte_count) + "," + format_fixed(r.duration_s, 6) + "\n";
  }
  return out;
}

std::string summary_to_csv(const Summary& s) {
  std::string out = "key,value\n";
  for (const auto& [k, v] : s) out += k + "," + v + "\n";
  return out;
}

Summary summary_from_csv(const std::string& text, const std::string& source) {
  Summary s;
  for_each_row(text, source, "key,value", 2, [&](std::size_t, const auto& f) {
    s.emplace_back(std::string(f[0]), std::string(f[1]));
  });
  return s;
}

std::optional<std::string> summary_value(const Summary& s, const std::string& key) {
  for (const auto& [k, v] : s)
    if (k == key) return v;
  return std::nullopt;
}

Summary compute_summary(const SummaryContext& ctx, const sim::RttSeries& rtt, const defense::AlertLog& alerts,
                        const std::vector<DetectionRow>& detections, const std::vector<SelectionRow>& selection) {
  Summary s;
  s.emplace_back("mode", ctx.mode);
  s.emplace_back("duration_s", format_fixed(ctx.duration_s, 6));
  const double inf = 1e300;
  const double a0 = ctx.attack_window ? ctx.attack_window->first : inf;
  const double a1 = ctx.attack_window ? ctx.attack_window->second : inf;
  s.emplace_back("attack_start_s", ctx.attack_window ? format_fixed(a0, 6) : "NA");
  s.emplace_back("attack_stop_s", ctx.attack_window ? format_fixed(a1, 6) : "NA");

  // RTT phases by send time: pre [0, a0), during [a0, a1), post [a1, end)
  double sum[3] = {0, 0, 0};
  std::size_t cnt[3] = {0, 0, 0};
  std::size_t timeouts_during = 0;
  for (const auto& p : rtt.probes) {
    const double t = p.sent_at.seconds();
    const int phase = t < a0 ? 0 : (t < a1 ? 1 : 2);
    if (p.rtt) {
      sum[phase] += static_cast<double>(p.rtt->us()) / 1000.0;
      ++cnt[phase];
    } else if (phase == 1) {
      ++timeouts_during;
    }
  }
  auto mean = [&](int ph) -> std::optional<double> {
    if (cnt[ph] == 0) return std::nullopt;
    return sum[ph] / static_cast<double>(cnt[ph]);
  };
  s.emplace_back("probes", std::to_string(rtt.probes.size()));
  s.emplace_back("timeouts", std::to_string(rtt.timeouts()));
  s.emplace_back("timeouts_during_attack", std::to_string(timeouts_during));
  const std::size_t max_consec =
      ctx.attack_window ? rtt.max_consecutive_timeouts(SimTime::from_s(a0), SimTime::from_s(a1)) : 0;
  s.emplace_back("max_consecutive_timeouts_during_attack", std::to_string(max_consec));
  s.emplace_back("rtt_mean_pre_ms", fixed_or_na(mean(0), 3));
  s.emplace_back("rtt_mean_during_ms", fixed_or_na(mean(1), 3));
  s.emplace_back("rtt_mean_post_ms", fixed_or_na(mean(2), 3));

  s.emplace_back("alerts", std::to_string(alerts.count(defense::AlertAction::alert)));
  s.emplace_back("deletions", std::to_string(alerts.count(defense::AlertAction::del)));
  s.emplace_back("readmissions", std::to_string(alerts.count(defense::AlertAction::readmit)));

  std::optional<double> first_detect;
  std::size_t judged[2] = {0, 0}, correct[2] = {0, 0};
  for (const auto& d : detections) {
    if (!d.predicted) continue;
    ++judged[d.label];
    if (*d.predicted == d.label) ++correct[d.label];
    if (d.label == 1 && *d.predicted == 1 && !first_detect) first_detect = d.at.seconds();
  }
  s.emplace_back("first_attack_detection_s", fixed_or_na(first_detect, 6));
  std::optional<double> latency;
  if (first_detect && ctx.attack_window) latency = *first_detect - a0;
  s.emplace_back("detection_latency_s", fixed_or_na(latency, 6));
  auto acc = [&](int c) -> std::optional<double> {
    if (judged[c] == 0) return std::nullopt;
    return static_cast<double>(correct[c]) / static_cast<double>(judged[c]);
  };
  s.emplace_back("live_accuracy_type0", fixed_or_na(acc(0), 6));
  s.emplace_back("live_accuracy_type1", fixed_or_na(acc(1), 6));

  std::size_t cycles = 0;
  std::string last_selected = "NA";
  double last_cycle = -1.0;
  for (const auto& r : selection) {
    if (r.cycle_t_s != last_cycle) {
      ++cycles;
      last_cycle = r.cycle_t_s;
    }
    if (r.selected) last_selected = ml::to_string(r.algorithm);
  }
  s.emplace_back("selection_cycles", std::to_string(cycles));
  s.emplace_back("final_algorithm", last_selected);
  return s;
}

SummaryContext summary_context(const Summary& s, const std::string& source) {
  auto need = [&](const std::string& k) {
    auto v = summary_value(s, k);
    if (!v) throw IntegrityError(source + ": summary lacks '" + k + "'");
    return *v;
  };
  auto num = [&](const std::string& k) {
    auto v = parse_double(need(k));
    if (!v) throw IntegrityError(source + ": summary '" + k + "' is not a number");
    return *v;
  };
  SummaryContext c;
  c.mode = need("mode");
  c.duration_s = num("duration_s");
  if (need("attack_start_s") != "NA") c.attack_window = std::make_pair(num("attack_start_s"), num("attack_stop_s"));
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RuntimeError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RuntimeError("cannot write " + path);
  out << text;
  if (!out) throw RuntimeError("write failed for " + path);
}

}  // namespace sdsn::harness
