#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "kgen/sample.hpp"

namespace kgen::io {

// Malformed or unreadable input. The message carries the file name and line.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Dataset {
  WeightedSample sample;
  std::string path;
  bool had_header = false;
  bool weighted = false;
};

// One record per line: value, then an optional weight (default 1). Fields may
// be separated by commas, semicolons, tabs or spaces. Blank lines and lines
// starting with '#' are skipped. A first record whose leading field is not a
// number is taken as a header unless no_header is set.
Dataset parse_dataset(std::istream& in, const std::string& name, bool no_header = false);
Dataset read_dataset(const std::string& path, bool no_header = false);

}  // namespace kgen::io
