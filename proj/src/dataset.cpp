#include "kgen/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <string_view>
#include <vector>

namespace kgen::io {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  const auto is_sep = [](char c) { return c == ',' || c == ';' || c == '\t' || c == ' ' || c == '\r'; };
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !is_sep(line[j])) ++j;
    fields.push_back(line.substr(i, j - i));
    // Consume trailing blanks and at most one hard separator.
    while (j < line.size() && (line[j] == ' ' || line[j] == '\t' || line[j] == '\r')) ++j;
    if (j < line.size() && (line[j] == ',' || line[j] == ';')) ++j;
    i = j;
  }
  return fields;
}

std::optional<double> parse_number(std::string_view field) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) return std::nullopt;
  return v;
}

}  // namespace

Dataset parse_dataset(std::istream& in, const std::string& name, bool no_header) {
  std::vector<double> values;
  std::vector<double> weights;
  bool had_header = false;
  bool weighted = false;
  bool first_record = true;
  std::string line;
  std::size_t line_no = 0;
  const auto fail = [&](const std::string& what) {
    throw InputError(name + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.empty() || fields.front().front() == '#') continue;
    const auto value = parse_number(fields.front());
    if (first_record) {
      first_record = false;
      if (!value && !no_header) {
        had_header = true;
        continue;
      }
    }
    if (!value) fail("malformed value '" + std::string(fields.front()) + "'");
    if (fields.size() > 2) fail("expected 1 or 2 fields, found " + std::to_string(fields.size()));
    if (!std::isfinite(*value)) fail("value is not finite");
    double w = 1.0;
    if (fields.size() == 2) {
      const auto parsed = parse_number(fields[1]);
      if (!parsed) fail("malformed weight '" + std::string(fields[1]) + "'");
      if (!std::isfinite(*parsed) || *parsed < 0.0) fail("weight must be finite and >= 0");
      w = *parsed;
      weighted = true;
    }
    values.push_back(*value);
    weights.push_back(w);
  }
  if (in.bad()) throw InputError(name + ": read error");
  if (values.empty()) throw InputError(name + ": no data records");
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) throw InputError(name + ": all weights are zero");
  return {WeightedSample(std::move(values), std::move(weights)), name, had_header, weighted};
}

Dataset read_dataset(const std::string& path, bool no_header) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  return parse_dataset(in, path, no_header);
}

}  // namespace kgen::io
