#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace sdsn::traffic {

enum class PayloadClass { small, medium, large };
enum class SpeedClass { low, moderate, fast };

inline constexpr PayloadClass kPayloadClasses[] = {PayloadClass::small, PayloadClass::medium, PayloadClass::large};
inline constexpr SpeedClass kSpeedClasses[] = {SpeedClass::low, SpeedClass::moderate, SpeedClass::fast};

/// Closed integer interval.
struct Range {
  std::int64_t lo;
  std::int64_t hi;
  bool contains(double v) const { return v >= static_cast<double>(lo) && v <= static_cast<double>(hi); }
};

/// Payload bytes per class: 100-999, 1000-9999, 10000-99999.
constexpr Range payload_range(PayloadClass c) {
  switch (c) {
    case PayloadClass::small: return {100, 999};
    case PayloadClass::medium: return {1000, 9999};
    case PayloadClass::large: return {10000, 99999};
  }
  return {0, 0};
}

/// Packets per second per class: 1-100, 101-1000, 1001-10000.
constexpr Range rate_range(SpeedClass c) {
  switch (c) {
    case SpeedClass::low: return {1, 100};
    case SpeedClass::moderate: return {101, 1000};
    case SpeedClass::fast: return {1001, 10000};
  }
  return {0, 0};
}

const char* to_string(PayloadClass c);
const char* to_string(SpeedClass c);
std::optional<PayloadClass> parse_payload_class(const std::string& s);
std::optional<SpeedClass> parse_speed_class(const std::string& s);

/// Class of an observed mean payload / per-flow rate; values outside the
/// grid clamp to the nearest class.
PayloadClass classify_payload(double mean_bytes);
SpeedClass classify_speed(double pps);

struct TrafficProfile {
  PayloadClass payload_class = PayloadClass::small;
  SpeedClass speed_class = SpeedClass::low;
  std::uint64_t seed = 0;

  Range payload() const { return payload_range(payload_class); }
  Range rate() const { return rate_range(speed_class); }
};

}  // namespace sdsn::traffic
