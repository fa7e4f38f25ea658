#include "sdsn/traffic/profile.hpp"

namespace sdsn::traffic {

const char* to_string(PayloadClass c) {
  switch (c) {
    case PayloadClass::small: return "small";
    case PayloadClass::medium: return "medium";
    case PayloadClass::large: return "large";
  }
  return "?";
}

const char* to_string(SpeedClass c) {
  switch (c) {
    case SpeedClass::low: return "low";
    case SpeedClass::moderate: return "moderate";
    case SpeedClass::fast: return "fast";
  }
  return "?";
}

std::optional<PayloadClass> parse_payload_class(const std::string& s) {
  for (auto c : kPayloadClasses)
    if (s == to_string(c)) return c;
  return std::nullopt;
}

std::optional<SpeedClass> parse_speed_class(const std::string& s) {
  for (auto c : kSpeedClasses)
    if (s == to_string(c)) return c;
  return std::nullopt;
}

PayloadClass classify_payload(double mean_bytes) {
  if (mean_bytes < static_cast<double>(payload_range(PayloadClass::medium).lo)) return PayloadClass::small;
  if (mean_bytes < static_cast<double>(payload_range(PayloadClass::large).lo)) return PayloadClass::medium;
  return PayloadClass::large;
}

SpeedClass classify_speed(double pps) {
  if (pps < static_cast<double>(rate_range(SpeedClass::moderate).lo)) return SpeedClass::low;
  if (pps < static_cast<double>(rate_range(SpeedClass::fast).lo)) return SpeedClass::moderate;
  return SpeedClass::fast;
}

}  // namespace sdsn::traffic
