#include "subw/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "subw/errors.hpp"

namespace subw::io {

namespace {

std::vector<double> parse_line(const std::string& line, long line_no) {
  std::string cleaned = line;
  const std::size_t hash = cleaned.find('#');
  if (hash != std::string::npos) cleaned.erase(hash);
  for (char& c : cleaned) {
    if (c == ',' || c == ';' || c == '\t' || c == '\r') c = ' ';
  }
  std::vector<double> out;
  std::istringstream ss(cleaned);
  std::string token;
  while (ss >> token) {
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0') {
      throw InputError("csv line " + std::to_string(line_no) + ": bad number '" +
                       token + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<std::vector<double>> read_rows_impl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<double> row = parse_line(line, line_no);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError("file '" + path + "' contains no values");
  return rows;
}

}  // namespace

std::vector<double> read_csv_values(const std::string& path) {
  std::vector<double> out;
  for (const std::vector<double>& row : read_rows_impl(path)) {
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

std::vector<std::vector<double>> read_csv_rows(const std::string& path) {
  return read_rows_impl(path);
}

}  // namespace subw::io
