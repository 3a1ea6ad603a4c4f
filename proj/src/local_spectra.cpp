#include "freqband/local_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "freqband/parallel.hpp"

namespace freqband {

namespace {

constexpr int kAnchorInterval = 512;  // samples between direct recomputations

// Direct window sum with an incrementally rotated phasor.
std::complex<double> window_sum(const double* x, int n, double theta) {
  const std::complex<double> rot = std::polar(1.0, -theta);
  std::complex<double> phase(1.0, 0.0);
  std::complex<double> acc(0.0, 0.0);
  for (int s = 0; s < n; ++s) {
    acc += x[s] * phase;
    phase *= rot;
  }
  return acc;
}

void validate_bin(int k, int window) {
  if (k < 1 || k > window / 2 - 1)
    throw std::domain_error("frequency bin " + std::to_string(k) +
                            " outside [1, N/2 - 1] for N = " +
                            std::to_string(window));
}

}  // namespace

std::vector<int> all_bins(int window) {
  std::vector<int> bins;
  for (int k = 1; k <= window / 2 - 1; ++k) bins.push_back(k);
  return bins;
}

int LocalSpectra::bin_index(int k) const {
  const auto it = std::lower_bound(bins.begin(), bins.end(), k);
  if (it == bins.end() || *it != k) return -1;
  return static_cast<int>(it - bins.begin());
}

Eigen::MatrixXcd LocalSpectra::matrix(int grid_idx, int k) const {
  const int bi = bin_index(k);
  if (bi < 0)
    throw std::domain_error("bin " + std::to_string(k) + " not stored");
  if (grid_idx < 0 || grid_idx >= grid_size())
    throw std::domain_error("time-grid index " + std::to_string(grid_idx) +
                            " out of range");
  const std::complex<double>* j = transform(grid_idx, bi);
  const int p = n_channels;
  Eigen::MatrixXcd m(p, p);
  for (int b = 0; b < p; ++b) {
    for (int a = 0; a <= b; ++a) {
      m(a, b) = j[a] * std::conj(j[b]);
      if (a != b) m(b, a) = std::conj(m(a, b));
    }
  }
  if (demeaned) m -= bin_means[bi];
  return m;
}

Eigen::VectorXcd local_dft(const TimeSeries& ts, int t, const WindowConfig& cfg,
                           int k) {
  const int n = resolve_window_length(ts, cfg);
  const int T = static_cast<int>(ts.length());
  const int half = n / 2;
  if (t < half || t > T - half)
    throw std::domain_error("time index " + std::to_string(t) +
                            " has no interior window (valid range [" +
                            std::to_string(half) + ", " +
                            std::to_string(T - half) + "])");
  validate_bin(k, n);
  const double theta = 2.0 * std::numbers::pi * k / n;
  const double scale = 1.0 / std::sqrt(2.0 * std::numbers::pi * n);
  const int start = t - half;  // 0-based first row of the window
  Eigen::VectorXcd out(ts.channels());
  for (Eigen::Index c = 0; c < ts.channels(); ++c)
    out(c) = scale * window_sum(ts.values.col(c).data() + start, n, theta);
  return out;
}

LocalSpectra sliding_spectra(const TimeSeries& ts, const WindowConfig& cfg,
                             std::vector<int> bins, unsigned threads) {
  const int n = resolve_window_length(ts, cfg);
  if (bins.empty())
    throw std::domain_error("sliding_spectra: empty frequency bin set");
  std::sort(bins.begin(), bins.end());
  bins.erase(std::unique(bins.begin(), bins.end()), bins.end());
  for (int k : bins) validate_bin(k, n);

  const int T = static_cast<int>(ts.length());
  const int p = static_cast<int>(ts.channels());
  const int half = n / 2;

  LocalSpectra spec;
  spec.window = n;
  spec.stride = cfg.stride;
  spec.n_channels = p;
  spec.bins = std::move(bins);
  for (int t = half; t <= T - half; t += cfg.stride) spec.time_grid.push_back(t);

  const std::size_t g_count = spec.time_grid.size();
  const std::size_t b_count = spec.bins.size();
  auto data = std::make_shared<std::vector<std::complex<double>>>(
      g_count * b_count * static_cast<std::size_t>(p));

  const double scale = 1.0 / std::sqrt(2.0 * std::numbers::pi * n);
  const auto& grid = spec.time_grid;
  const int stride = cfg.stride;

  parallel_for(b_count, threads, [&](std::size_t bi) {
    const int k = spec.bins[bi];
    const double theta = 2.0 * std::numbers::pi * k / n;
    const std::complex<double> rot = std::polar(1.0, theta);
    for (int c = 0; c < p; ++c) {
      const double* x = ts.values.col(c).data();
      auto put = [&](std::size_t g, std::complex<double> v) {
        (*data)[(g * b_count + bi) * p + c] = v * scale;
      };
      std::complex<double> s = window_sum(x + (grid[0] - half), n, theta);
      put(0, s);
      int since_anchor = 0;
      for (std::size_t g = 1; g < g_count; ++g) {
        const int prev_start = grid[g - 1] - half;
        for (int off = 0; off < stride; ++off)
          s = rot * (s - x[prev_start + off] + x[prev_start + off + n]);
        since_anchor += stride;
        if (since_anchor >= kAnchorInterval) {
          s = window_sum(x + (grid[g] - half), n, theta);
          since_anchor = 0;
        }
        put(g, s);
      }
    }
  });

  spec.transforms = std::move(data);
  return spec;
}

LocalSpectra demean(const LocalSpectra& spec, unsigned threads) {
  if (spec.demeaned)
    throw std::logic_error("demean: spectra are already demeaned");
  if (spec.grid_size() == 0)
    throw std::domain_error("demean: empty time grid");

  LocalSpectra out = spec;
  out.demeaned = true;
  out.bin_means.assign(spec.bins.size(), Eigen::MatrixXcd());

  const int p = spec.n_channels;
  const int g_count = spec.grid_size();
  parallel_for(spec.bins.size(), threads, [&](std::size_t bi) {
    Eigen::MatrixXcd mean = Eigen::MatrixXcd::Zero(p, p);
    for (int g = 0; g < g_count; ++g) {
      const std::complex<double>* j = spec.transform(g, static_cast<int>(bi));
      for (int b = 0; b < p; ++b)
        for (int a = 0; a <= b; ++a) mean(a, b) += j[a] * std::conj(j[b]);
    }
    mean /= static_cast<double>(g_count);
    for (int b = 0; b < p; ++b)
      for (int a = 0; a < b; ++a) mean(b, a) = std::conj(mean(a, b));
    out.bin_means[bi] = std::move(mean);
  });
  return out;
}

}  // namespace freqband
