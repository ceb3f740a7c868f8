#pragma once

// Minimal CSV input for the command-line tools: numeric values separated by
// commas and/or whitespace, one or more per line, with '#' comments and blank
// lines skipped. Errors carry the 1-based line number.

#include <string>
#include <vector>

namespace subw::io {

// All values in file order, flattened.
std::vector<double> read_csv_values(const std::string& path);

// One vector per non-empty line (row-per-vector layout).
std::vector<std::vector<double>> read_csv_rows(const std::string& path);

}  // namespace subw::io
