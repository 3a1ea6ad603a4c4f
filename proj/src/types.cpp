#include "freqband/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace freqband {

TimeSeries::TimeSeries(Eigen::MatrixXd v, std::optional<double> rate)
    : values(std::move(v)), sampling_rate(rate) {
  if (values.cols() < 1)
    throw std::domain_error("TimeSeries: at least one channel is required");
  if (values.rows() < 1)
    throw std::domain_error("TimeSeries: at least one observation is required");
  if (!values.allFinite()) {
    for (Eigen::Index t = 0; t < values.rows(); ++t)
      for (Eigen::Index c = 0; c < values.cols(); ++c)
        if (!std::isfinite(values(t, c)))
          throw std::domain_error("TimeSeries: non-finite value at row " +
                                  std::to_string(t + 1) + ", channel " +
                                  std::to_string(c + 1));
  }
  if (sampling_rate && *sampling_rate <= 0.0)
    throw std::domain_error("TimeSeries: sampling rate must be positive");
}

int default_window_length(Eigen::Index n_samples) {
  int n = static_cast<int>(std::floor(std::pow(static_cast<double>(n_samples), 0.7)));
  if (n % 2 != 0) --n;
  return n;
}

int resolve_window_length(const TimeSeries& ts, const WindowConfig& cfg) {
  const auto T = ts.length();
  int n = cfg.length > 0 ? cfg.length : default_window_length(T);
  if (n < 2) throw std::domain_error("window length must be at least 2 (got " +
                                     std::to_string(n) + ")");
  if (n % 2 != 0)
    throw std::domain_error("window length must be even (got " +
                            std::to_string(n) + ")");
  if (n > T)
    throw std::domain_error("window length " + std::to_string(n) +
                            " exceeds series length " + std::to_string(T));
  if (T < 2 * static_cast<Eigen::Index>(n))
    throw std::domain_error("series length " + std::to_string(T) +
                            " is below twice the window length " +
                            std::to_string(n));
  if (cfg.stride < 1 || cfg.stride > n)
    throw std::domain_error("stride must lie in [1, N] (got " +
                            std::to_string(cfg.stride) + ")");
  return n;
}

}  // namespace freqband
