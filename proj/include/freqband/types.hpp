#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace freqband {

// Multivariate time series: rows are time points, columns are channels.
struct TimeSeries {
  Eigen::MatrixXd values;  // T x p
  std::optional<double> sampling_rate;       // samples per second, if known
  std::vector<std::string> channel_names;    // optional, e.g. from CSV header

  TimeSeries() = default;
  explicit TimeSeries(Eigen::MatrixXd v,
                      std::optional<double> rate = std::nullopt);

  Eigen::Index length() const { return values.rows(); }
  Eigen::Index channels() const { return values.cols(); }
};

// Local analysis window. A zero length requests the default
// floor(T^0.7), decremented by one when odd so the half-window offset
// stays integral.
struct WindowConfig {
  int length = 0;
  int stride = 1;
};

int default_window_length(Eigen::Index n_samples);

// Validates the window against the series (even length, 2 <= N <= T,
// T >= 2N, 1 <= stride <= N) and returns the resolved length.
int resolve_window_length(const TimeSeries& ts, const WindowConfig& cfg);

}  // namespace freqband
