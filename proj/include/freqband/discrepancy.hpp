#pragma once

#include <vector>

#include "freqband/local_spectra.hpp"

namespace freqband {

// Candidate partition points for half-width W on the 1/N lattice:
// {W/N, (W+1)/N, ..., 1/2 - W/N}, kept as integer bin numbers m.
struct CandidateGrid {
  int denominator = 0;  // N
  int half_width = 0;   // W
  std::vector<int> all_bins;       // m = W .. N/2 - W
  std::vector<int> excluded_bins;  // removed during search, ascending

  // Candidates whose full mirrored neighborhood m +- k, k = 1..W lies in
  // the admissible bin range [1, N/2 - 1], minus exclusions. The grid
  // endpoints would need bins 0 and N/2 and are not evaluable.
  std::vector<int> evaluable_bins() const;
  double frequency(int m) const { return static_cast<double>(m) / denominator; }
};

CandidateGrid candidate_grid(int denominator, int half_width);

struct DiscrepancyCurve {
  int half_width = 0;
  std::vector<double> frequencies;
  std::vector<double> values;
};

// Mirrored-neighborhood discrepancy
//   D(omega) = (1/|grid|) sum_t (1/W) sum_{k=1..W}
//              || g(t, omega - k/N) - g(t, omega + k/N) ||_F^2
// evaluated on demeaned local spectra. omega must lie on the 1/N lattice.
double dhat(const LocalSpectra& g, double omega, int half_width);
double dhat_at_bin(const LocalSpectra& g, int m, int half_width);

// Single-entry version for channel pair (a, b), 1-based, a <= b.
double dhat_component(const LocalSpectra& g, double omega, int half_width,
                      int a, int b);
// All channel pairs at once; the result is symmetric.
Eigen::MatrixXd dhat_component_table(const LocalSpectra& g, int m,
                                     int half_width);

DiscrepancyCurve dhat_curve(const LocalSpectra& g, const CandidateGrid& grid,
                            unsigned threads = 0);

}  // namespace freqband
