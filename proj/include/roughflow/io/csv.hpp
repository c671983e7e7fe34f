#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "roughflow/driver/metrics.hpp"
#include "roughflow/lift/brownian_field.hpp"

namespace roughflow {

// CSV with a versioned schema tag on the first line and all floats at
// 17 significant digits; reruns with the same inputs are byte-identical.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::string& schema,
            const std::vector<std::string>& header);

  void row(const std::vector<double>& values);
  void row_mixed(const std::vector<std::string>& values);

  static std::string format(double v);

 private:
  std::ofstream out_;
  size_t columns_;
};

// (s, t, x..., V..., W...) over a time-pair x space-sample grid
void write_driver_dump(const RoughDriver& drv, const TimePairs& pairs,
                       const SpaceSample& sample, const std::string& path);

// coefficient paths and cumulative areas of a simulated field
void write_brownian_field_csv(const BrownianModeField& field, const std::string& path);

}  // namespace roughflow
