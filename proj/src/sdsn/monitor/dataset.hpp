#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdsn/monitor/features.hpp"
#include "sdsn/traffic/profile.hpp"

namespace sdsn::monitor {

/// 1 = DDoS (Type 1), 0 = normal (Type 0).
using Label = int;

struct LabeledSample {
  FeatureVector features;
  Label label = 0;
  bool operator==(const LabeledSample&) const = default;
};

struct DatasetProvenance {
  traffic::PayloadClass payload_class = traffic::PayloadClass::small;
  traffic::SpeedClass speed_class = traffic::SpeedClass::low;
  std::uint64_t seed = 0;
};

struct Dataset {
  std::vector<LabeledSample> samples;
  std::optional<DatasetProvenance> provenance;

  std::size_t size() const { return samples.size(); }
  std::size_t count_label(Label l) const;
  bool has_both_labels() const { return count_label(0) > 0 && count_label(1) > 0; }

  /// Equality covers the samples only; provenance is not persisted in CSV.
  bool operator==(const Dataset& o) const { return samples == o.samples; }
};

inline constexpr const char* kDatasetHeader =
    "pckt_rate,byte_rate,mean_pckt_size,flow_duration,src_fanout,dst_fanin,label";

std::string to_csv(const Dataset& dataset);
/// Throws RuntimeError for an empty dataset.
void export_csv(const Dataset& dataset, const std::string& path);
/// Throws ParseError naming the line for a bad header or malformed row.
Dataset parse_csv(const std::string& text, const std::string& source);
Dataset load_csv(const std::string& path);

/// Concatenation in argument order.
Dataset merge(const std::vector<Dataset>& parts);

std::string baseline_file_name(traffic::PayloadClass p, traffic::SpeedClass s);

}  // namespace sdsn::monitor
