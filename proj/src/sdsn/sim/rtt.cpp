#include "sdsn/sim/rtt.hpp"

#include <algorithm>
#include <sstream>

#include "sdsn/core/error.hpp"
#include "sdsn/core/format.hpp"

namespace sdsn::sim {

namespace {
constexpr const char* kHeader = "t_sent_us,rtt_us_or_TIMEOUT";
}

std::size_t RttSeries::timeouts() const {
  std::size_t n = 0;
  for (const auto& p : probes) n += p.timed_out() ? 1 : 0;
  return n;
}

std::size_t RttSeries::max_consecutive_timeouts(SimTime from, SimTime to) const {
  std::size_t best = 0;
  std::size_t run = 0;
  for (const auto& p : probes) {
    if (p.sent_at < from || p.sent_at >= to) {
      run = 0;
      continue;
    }
    run = p.timed_out() ? run + 1 : 0;
    best = std::max(best, run);
  }
  return best;
}

std::string RttSeries::to_csv() const {
  std::string out = kHeader;
  out += '\n';
  for (const auto& p : probes) {
    out += std::to_string(p.sent_at.us());
    out += ',';
    out += p.rtt ? std::to_string(p.rtt->us()) : std::string("TIMEOUT");
    out += '\n';
  }
  return out;
}

RttSeries RttSeries::from_csv(const std::string& text, const std::string& source) {
  RttSeries s;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto row = strip_cr(line);
    if (lineno == 1) {
      if (row != kHeader) throw ParseError(source, 1, "expected header '" + std::string(kHeader) + "'");
      continue;
    }
    if (row.empty()) continue;
    auto cols = split_csv_line(row);
    if (cols.size() != 2) throw ParseError(source, lineno, "expected 2 columns");
    auto sent = parse_int(cols[0]);
    if (!sent || *sent < 0) throw ParseError(source, lineno, "bad t_sent_us");
    RttSample sample{SimTime::from_us(*sent), std::nullopt};
    if (cols[1] != "TIMEOUT") {
      auto rtt = parse_int(cols[1]);
      if (!rtt || *rtt < 0) throw ParseError(source, lineno, "bad rtt_us");
      sample.rtt = SimTime::from_us(*rtt);
    }
    if (!s.probes.empty() && sample.sent_at <= s.probes.back().sent_at)
      throw ParseError(source, lineno, "t_sent_us not strictly increasing");
    s.probes.push_back(sample);
  }
  if (lineno == 0) throw ParseError(source, 1, "empty file");
  return s;
}

}  // namespace sdsn::sim
