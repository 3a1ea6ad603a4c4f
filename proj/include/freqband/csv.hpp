#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "freqband/types.hpp"

namespace freqband {

class CsvError : public std::runtime_error {
 public:
  CsvError(const std::string& message, std::size_t row, std::size_t column = 0)
      : std::runtime_error(message), row(row), column(column) {}
  std::size_t row;     // 1-based file line
  std::size_t column;  // 1-based field, 0 when not applicable
};

// Rows are time, columns are channels. A non-numeric first row is treated
// as a header and its names are retained.
TimeSeries read_csv(const std::filesystem::path& path);

// Writes values with 17 significant digits so a round-trip through
// read_csv reproduces them exactly.
void write_csv(const std::filesystem::path& path, const Eigen::MatrixXd& values,
               const std::vector<std::string>& header = {});

}  // namespace freqband
