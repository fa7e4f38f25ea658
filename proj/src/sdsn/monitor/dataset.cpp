#include "sdsn/monitor/dataset.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "sdsn/core/error.hpp"
#include "sdsn/core/format.hpp"

namespace sdsn::monitor {

std::size_t Dataset::count_label(Label l) const {
  std::size_t n = 0;
  for (const auto& s : samples) n += s.label == l ? 1 : 0;
  return n;
}

std::string to_csv(const Dataset& dataset) {
  std::string out = kDatasetHeader;
  out += '\n';
  for (const auto& s : dataset.samples) {
    for (double v : s.features.to_array()) {
      out += format_double(v);
      out += ',';
    }
    out += s.label == 1 ? '1' : '0';
    out += '\n';
  }
  return out;
}

void export_csv(const Dataset& dataset, const std::string& path) {
  if (dataset.samples.empty()) throw RuntimeError("refusing to export empty dataset to " + path);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw RuntimeError("cannot open " + path + " for writing");
  f << to_csv(dataset);
  if (!f) throw RuntimeError("write failed: " + path);
}

Dataset parse_csv(const std::string& text, const std::string& source) {
  Dataset d;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto row = strip_cr(line);
    if (lineno == 1) {
      if (row != kDatasetHeader) throw ParseError(source, 1, "header mismatch, expected '" + std::string(kDatasetHeader) + "'");
      continue;
    }
    if (row.empty()) continue;
    auto cols = split_csv_line(row);
    if (cols.size() != kFeatureCount + 1)
      throw ParseError(source, lineno, "expected " + std::to_string(kFeatureCount + 1) + " columns, got " +
                                           std::to_string(cols.size()));
    std::array<double, kFeatureCount> values{};
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      auto v = parse_double(cols[i]);
      if (!v || !std::isfinite(*v) || *v < 0.0)
        throw ParseError(source, lineno, "bad value '" + std::string(cols[i]) + "' in column " + std::to_string(i + 1));
      values[i] = *v;
    }
    if (cols[kFeatureCount] != "0" && cols[kFeatureCount] != "1")
      throw ParseError(source, lineno, "label must be 0 or 1");
    d.samples.push_back({FeatureVector::from_array(values), cols[kFeatureCount] == "1" ? 1 : 0});
  }
  if (lineno == 0) throw ParseError(source, 1, "empty file, missing header");
  if (d.samples.empty()) throw ParseError(source, lineno, "dataset has no samples");
  return d;
}

Dataset load_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw RuntimeError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_csv(ss.str(), path);
}

Dataset merge(const std::vector<Dataset>& parts) {
  Dataset out;
  for (const auto& p : parts) out.samples.insert(out.samples.end(), p.samples.begin(), p.samples.end());
  return out;
}

std::string baseline_file_name(traffic::PayloadClass p, traffic::SpeedClass s) {
  return std::string("baseline_") + traffic::to_string(p) + "_" + traffic::to_string(s) + ".csv";
}

}  // namespace sdsn::monitor
