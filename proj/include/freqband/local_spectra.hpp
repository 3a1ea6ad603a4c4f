#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "freqband/types.hpp"

namespace freqband {

// Local periodogram estimates on a sliding time window. The rank-one
// matrices I(t, k) = J(t, k) J(t, k)* are stored through their factor
// vectors J; full matrices are materialized on demand. After demean(),
// matrix(g, k) returns I(t, k) minus the grid average for that bin.
struct LocalSpectra {
  int window = 0;   // N
  int stride = 1;
  int n_channels = 0;
  std::vector<int> bins;       // ascending, subset of [1, N/2 - 1]
  std::vector<int> time_grid;  // 1-based window centers t, ascending
  bool demeaned = false;

  // layout: ((g * bins.size()) + bin_index) * n_channels + channel
  std::shared_ptr<const std::vector<std::complex<double>>> transforms;
  // per-bin grid averages of J J*, filled by demean()
  std::vector<Eigen::MatrixXcd> bin_means;

  int grid_size() const { return static_cast<int>(time_grid.size()); }
  int channels() const { return n_channels; }
  int bin_index(int k) const;  // -1 when the bin is not stored
  bool has_bin(int k) const { return bin_index(k) >= 0; }

  const std::complex<double>* transform(int grid_idx, int bin_idx) const {
    return transforms->data() +
           (static_cast<std::size_t>(grid_idx) * bins.size() + bin_idx) *
               n_channels;
  }

  // p x p Hermitian matrix at (time-grid index, bin number)
  Eigen::MatrixXcd matrix(int grid_idx, int k) const;
};

// All admissible bin numbers for a window of length N: 1 .. N/2 - 1.
std::vector<int> all_bins(int window);

// Windowed Fourier transform at bin k for the window centered at the
// 1-based time index t: (2 pi N)^{-1/2} sum_{s=0}^{N-1} X[t - N/2 + s]
// exp(-i 2 pi (k/N) s), one complex value per channel.
Eigen::VectorXcd local_dft(const TimeSeries& ts, int t, const WindowConfig& cfg,
                           int k);

// Local periodograms over the interior time grid t = N/2, N/2 + stride,
// ..., T - N/2, computed with a sliding-DFT recurrence (O(1) update per
// one-sample shift per channel/bin, re-anchored periodically).
LocalSpectra sliding_spectra(const TimeSeries& ts, const WindowConfig& cfg,
                             std::vector<int> bins, unsigned threads = 0);

// Subtracts, per bin and matrix entry, the average over the time grid.
LocalSpectra demean(const LocalSpectra& spec, unsigned threads = 0);

}  // namespace freqband
