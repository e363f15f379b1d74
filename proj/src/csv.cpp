#include "cev/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace cev {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

bool parse_number(const std::string& field, double* out) {
  if (field.empty()) return false;
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end != field.c_str() + field.size()) return false;
  if (!std::isfinite(v)) return false;
  *out = v;
  return true;
}

[[noreturn]] void parse_fail(std::size_t row, std::size_t col, const std::string& what) {
  fail(errc::parse,
       "row " + std::to_string(row) + ", column " + std::to_string(col) + ": " + what);
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

SubgroupMatrix parse_csv(const std::string& text, double threshold, int subgroup_size) {
  if (!std::isfinite(threshold)) fail(errc::domain, "threshold must be finite");
  if (subgroup_size < 2) fail(errc::domain, "subgroup size must be >= 2");

  std::vector<double> cells;
  std::size_t data_rows = 0;
  std::size_t line_no = 0;
  bool first_content_row = true;

  std::stringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    ++line_no;
    const std::string content = trim(line);
    if (content.empty()) continue;
    std::vector<std::string> fields = split_fields(content);

    if (first_content_row) {
      first_content_row = false;
      bool header = false;
      for (const auto& f : fields) {
        double v;
        if (f != "<" && !parse_number(f, &v)) {
          header = true;
          break;
        }
      }
      if (header) continue;  // skip a labelled header row
    }

    if (fields.size() != static_cast<std::size_t>(subgroup_size))
      parse_fail(line_no, fields.size(),
                 "expected " + std::to_string(subgroup_size) + " fields, found " +
                     std::to_string(fields.size()));

    for (std::size_t c = 0; c < fields.size(); ++c) {
      const std::string& f = fields[c];
      if (f == "<") {
        cells.push_back(threshold);
        continue;
      }
      double v;
      if (!parse_number(f, &v)) parse_fail(line_no, c + 1, "not a number: '" + f + "'");
      cells.push_back(v <= threshold ? threshold : v);
    }
    ++data_rows;
  }

  if (data_rows == 0) fail(errc::parse, "no data rows found");
  return SubgroupMatrix(static_cast<int>(data_rows), subgroup_size, std::move(cells),
                        CensoringScheme(threshold));
}

SubgroupMatrix ingest_csv(const std::string& path, double threshold, int subgroup_size) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str(), threshold, subgroup_size);
}

std::string matrix_to_csv(const SubgroupMatrix& matrix) {
  std::string out;
  for (int i = 0; i < matrix.k(); ++i) {
    for (int j = 0; j < matrix.n(); ++j) {
      if (j) out += ',';
      out += format_double(matrix.at(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace cev
