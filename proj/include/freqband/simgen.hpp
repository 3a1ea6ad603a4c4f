#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "freqband/search.hpp"
#include "freqband/types.hpp"

namespace freqband {

// One frequency band with a time-varying spectral level. Interval
// endpoint ownership is explicit because the named schemes mix open and
// closed boundaries.
struct Band {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = false;
  bool hi_closed = false;
  std::function<double(double)> amplitude;  // of rescaled time u in [0, 1]
};

// Piecewise-banded time-varying spectrum on (0, 1/2).
struct BandSpec {
  std::vector<Band> bands;
  void validate() const;  // contiguous partition of (0, 1/2)
  double operator()(double u, double omega) const;
  std::vector<double> partition_points() const;  // interior boundaries
};

double true_spectrum(const BandSpec& spec, double u, double omega);

// The five scheme spectra: flat unit level; linear three-band; sinusoidal
// three-band; linear low band with flat remainder; sinusoidal two-band.
BandSpec bands_flat();
BandSpec bands_linear3();
BandSpec bands_sin3();
BandSpec bands_linear_low();
BandSpec bands_sin2();

struct LatentGroup {
  BandSpec bands;
  int first_channel = 0;  // 0-based
  int count = 0;
};

struct SchemeSpec {
  std::string name;
  int channels = 0;
  int length = 0;
  std::vector<LatentGroup> latents;
  std::vector<double> truth;  // true partition points
};

// WN1B, L3B, S3B, M3B-1, M3B-2 (names case-insensitive).
SchemeSpec make_scheme(const std::string& name, int channels, int length);
const std::vector<std::string>& scheme_names();

// Harmonic synthesis with time-varying amplitudes:
//   z_t = sum_{k=1}^{floor(M/2)-1} s_k(t) [A_k cos(2 pi k t / M)
//                                          + B_k sin(2 pi k t / M)],
// A_k, B_k i.i.d. standard Gaussian and s_k(t)^2 = 4 pi f(t/M, k/M) / M,
// so that a unit flat spectrum yields series variance 2 pi.
Eigen::VectorXd synth_banded(const BandSpec& bands, int length,
                             std::uint64_t seed, unsigned threads = 0);

// Builds each latent once and assigns channels as lagged copies,
// X[k, t] = z[t + k - first - 1] within its group.
TimeSeries generate(const SchemeSpec& scheme, std::uint64_t seed,
                    unsigned threads = 0);

// True when the estimated count matches and, after sorting both lists,
// every estimated point is within zeta of its matched true point.
bool correct_detection(std::vector<double> estimated,
                       std::vector<double> truth, double zeta);
bool correct_detection(const PartitionResult& result,
                       const std::vector<double>& truth, double zeta);

}  // namespace freqband
