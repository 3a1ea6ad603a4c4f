#include "freqband/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <vector>

namespace freqband {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

bool parse_double(std::string_view field, double& out) {
  if (field.empty()) return false;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last;
}

}  // namespace

TimeSeries read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw CsvError("cannot open '" + path.string() + "'", 0);

  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> names;
  std::vector<std::vector<double>> rows;
  std::size_t width = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) {
      if (rows.empty() && names.empty()) continue;  // leading blank lines
      // A blank line is only tolerated at the end of the file.
      std::string rest;
      std::size_t blank_at = line_no;
      bool trailing = true;
      while (std::getline(in, rest)) {
        ++line_no;
        if (!trim(rest).empty()) {
          trailing = false;
          break;
        }
      }
      if (trailing) break;
      throw CsvError("blank line " + std::to_string(blank_at) +
                         " inside the data table",
                     blank_at);
    }
    const auto fields = split_fields(line);
    if (width == 0) {
      width = fields.size();
    } else if (fields.size() != width) {
      throw CsvError("row " + std::to_string(line_no) + " has " +
                         std::to_string(fields.size()) + " fields, expected " +
                         std::to_string(width),
                     line_no);
    }
    std::vector<double> row(fields.size());
    bool numeric = true;
    std::size_t bad_col = 0;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (!parse_double(fields[c], row[c])) {
        numeric = false;
        bad_col = c + 1;
        break;
      }
    }
    if (!numeric) {
      if (rows.empty() && names.empty() && line_no == 1) {
        for (const auto& f : fields) names.emplace_back(f);
        continue;
      }
      throw CsvError("non-numeric value at row " + std::to_string(line_no) +
                         ", column " + std::to_string(bad_col),
                     line_no, bad_col);
    }
    rows.push_back(std::move(row));
  }

  if (rows.empty()) throw CsvError("no data rows in '" + path.string() + "'", 0);

  Eigen::MatrixXd values(static_cast<Eigen::Index>(rows.size()),
                         static_cast<Eigen::Index>(width));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < width; ++c)
      values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          rows[r][c];

  TimeSeries ts(std::move(values));
  ts.channel_names = std::move(names);
  return ts;
}

void write_csv(const std::filesystem::path& path, const Eigen::MatrixXd& values,
               const std::vector<std::string>& header) {
  std::ofstream out(path);
  if (!out)
    throw CsvError("cannot write '" + path.string() + "'", 0);
  if (!header.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c)
      out << (c ? "," : "") << header[c];
    out << '\n';
  }
  char buf[64];
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", values(r, c));
      out << (c ? "," : "") << buf;
    }
    out << '\n';
  }
  if (!out)
    throw CsvError("failed while writing '" + path.string() + "'", 0);
}

}  // namespace freqband
