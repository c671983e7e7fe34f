#include "roughflow/io/csv.hpp"

#include <cstdio>

#include "roughflow/core/errors.hpp"

namespace roughflow {

CsvWriter::CsvWriter(const std::string& path, const std::string& schema,
                     const std::vector<std::string>& header)
    : out_(path), columns_(header.size()) {
  if (!out_) throw ConfigError("CsvWriter: cannot open " + path);
  out_ << "# schema: " << schema << "\n";
  for (size_t i = 0; i < header.size(); ++i)
    out_ << header[i] << (i + 1 < header.size() ? "," : "\n");
}

std::string CsvWriter::format(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_) throw ConfigError("CsvWriter: column count mismatch");
  for (size_t i = 0; i < values.size(); ++i)
    out_ << format(values[i]) << (i + 1 < values.size() ? "," : "\n");
}

void CsvWriter::row_mixed(const std::vector<std::string>& values) {
  if (values.size() != columns_) throw ConfigError("CsvWriter: column count mismatch");
  for (size_t i = 0; i < values.size(); ++i)
    out_ << values[i] << (i + 1 < values.size() ? "," : "\n");
}

void write_driver_dump(const RoughDriver& drv, const TimePairs& pairs,
                       const SpaceSample& sample, const std::string& path) {
  const int d = drv.dim();
  std::vector<std::string> header{"s", "t"};
  for (int i = 0; i < d; ++i) header.push_back("x" + std::to_string(i));
  for (int i = 0; i < d; ++i) header.push_back("v" + std::to_string(i));
  for (int i = 0; i < d; ++i) header.push_back("w" + std::to_string(i));
  CsvWriter csv(path, "roughflow.driver_dump.v1", header);
  for (const auto& [s, t] : pairs) {
    FieldPtr v = drv.v_field(s, t);
    FieldPtr w = drv.w_field(s, t);
    for (const auto& x : sample.points) {
      std::vector<double> row{s, t};
      Vec vv = v->value(x), wv = w->value(x);
      for (int i = 0; i < d; ++i) row.push_back(x[i]);
      for (int i = 0; i < d; ++i) row.push_back(vv[i]);
      for (int i = 0; i < d; ++i) row.push_back(wv[i]);
      csv.row(row);
    }
  }
}

void write_brownian_field_csv(const BrownianModeField& field, const std::string& path) {
  const size_t e = field.modes();
  std::vector<std::string> header{"t"};
  for (size_t k = 0; k < e; ++k) header.push_back("b" + std::to_string(k));
  for (size_t j = 0; j < e; ++j)
    for (size_t k = 0; k < e; ++k)
      header.push_back("a" + std::to_string(j) + std::to_string(k));
  CsvWriter csv(path, "roughflow.brownian_field.v1", header);
  for (int i = 0; i <= field.grid.steps; ++i) {
    std::vector<double> row{field.grid.time(i)};
    for (size_t k = 0; k < e; ++k) row.push_back(field.b(i, k));
    for (size_t j = 0; j < e; ++j)
      for (size_t k = 0; k < e; ++k)
        row.push_back(field.cum_area[(static_cast<size_t>(i) * e + j) * e + k]);
    csv.row(row);
  }
}

}  // namespace roughflow
