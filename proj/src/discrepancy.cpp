#include "freqband/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "freqband/parallel.hpp"

namespace freqband {

namespace {

int snap_bin(double omega, int denominator) {
  const double scaled = omega * denominator;
  const int m = static_cast<int>(std::llround(scaled));
  if (std::abs(scaled - m) > 1e-6)
    throw std::domain_error("frequency " + std::to_string(omega) +
                            " is not on the 1/" + std::to_string(denominator) +
                            " grid");
  return m;
}

void require_demeaned(const LocalSpectra& g) {
  if (!g.demeaned)
    throw std::logic_error("discrepancy: demeaned spectra are required");
}

int require_bin(const LocalSpectra& g, int k) {
  const int idx = g.bin_index(k);
  if (idx < 0)
    throw std::domain_error("discrepancy: bin " + std::to_string(k) +
                            " unavailable (insufficient bins for this "
                            "frequency/half-width)");
  return idx;
}

}  // namespace

CandidateGrid candidate_grid(int denominator, int half_width) {
  if (denominator < 4 || denominator % 2 != 0)
    throw std::domain_error("candidate grid needs an even denominator >= 4");
  if (half_width < 1 || 4 * half_width > denominator)
    throw std::domain_error(
        "half-width W = " + std::to_string(half_width) +
        " leaves no candidates in [W/N, 1/2 - W/N] for N = " +
        std::to_string(denominator));
  CandidateGrid grid;
  grid.denominator = denominator;
  grid.half_width = half_width;
  for (int m = half_width; m <= denominator / 2 - half_width; ++m)
    grid.all_bins.push_back(m);
  return grid;
}

std::vector<int> CandidateGrid::evaluable_bins() const {
  std::vector<int> out;
  for (int m : all_bins) {
    if (m - half_width < 1) continue;
    if (m + half_width > denominator / 2 - 1) continue;
    if (std::binary_search(excluded_bins.begin(), excluded_bins.end(), m))
      continue;
    out.push_back(m);
  }
  return out;
}

double dhat_at_bin(const LocalSpectra& g, int m, int half_width) {
  require_demeaned(g);
  if (half_width < 1)
    throw std::domain_error("half-width must be positive");
  const int p = g.channels();
  const int g_count = g.grid_size();

  double acc = 0.0;
  double max_imag = 0.0;
  double ref_scale = 0.0;
  std::vector<std::complex<double>> delta(static_cast<std::size_t>(p) * p);

  for (int k = 1; k <= half_width; ++k) {
    const int lo_idx = require_bin(g, m - k);
    const int hi_idx = require_bin(g, m + k);
    const Eigen::MatrixXcd& mean_lo = g.bin_means[lo_idx];
    const Eigen::MatrixXcd& mean_hi = g.bin_means[hi_idx];

    // delta is Hermitian; stored row-major as delta[b*p + a] = (b, a)
    double delta_sq = 0.0;
    for (int b = 0; b < p; ++b) {
      for (int a = 0; a < p; ++a) {
        const std::complex<double> d = mean_lo(b, a) - mean_hi(b, a);
        delta[static_cast<std::size_t>(b) * p + a] = d;
        delta_sq += std::norm(d);
      }
    }

    double sum_k = 0.0;
    for (int t = 0; t < g_count; ++t) {
      const std::complex<double>* jlo = g.transform(t, lo_idx);
      const std::complex<double>* jhi = g.transform(t, hi_idx);
      double s_lo = 0.0, s_hi = 0.0;
      std::complex<double> ip(0.0, 0.0);
      for (int a = 0; a < p; ++a) {
        s_lo += std::norm(jlo[a]);
        s_hi += std::norm(jhi[a]);
        ip += jlo[a] * std::conj(jhi[a]);
      }
      std::complex<double> q_lo(0.0, 0.0), q_hi(0.0, 0.0);
      for (int b = 0; b < p; ++b) {
        const std::complex<double>* row = delta.data() + static_cast<std::size_t>(b) * p;
        std::complex<double> acc_lo(0.0, 0.0), acc_hi(0.0, 0.0);
        for (int a = 0; a < p; ++a) {
          acc_lo += row[a] * jlo[a];
          acc_hi += row[a] * jhi[a];
        }
        q_lo += std::conj(jlo[b]) * acc_lo;
        q_hi += std::conj(jhi[b]) * acc_hi;
      }
      // || g-(t) - g+(t) ||_F^2 with g+- = J J* - mean expanded in terms of
      // the rank-one factors and the mean difference
      const double term = s_lo * s_lo + s_hi * s_hi + delta_sq -
                          2.0 * std::norm(ip) - 2.0 * q_lo.real() +
                          2.0 * q_hi.real();
      max_imag = std::max({max_imag, std::abs(q_lo.imag()), std::abs(q_hi.imag())});
      ref_scale = std::max({ref_scale, std::abs(term), std::abs(q_lo.real()),
                            std::abs(q_hi.real()), s_lo * s_lo});
      sum_k += term;
    }
    acc += sum_k;
  }

  if (max_imag > 1e-12 * std::max(ref_scale, 1e-300))
    throw std::logic_error("dhat: imaginary residue exceeds tolerance");

  const double value = acc / (static_cast<double>(half_width) * g_count);
  return std::max(value, 0.0);
}

double dhat(const LocalSpectra& g, double omega, int half_width) {
  require_demeaned(g);
  return dhat_at_bin(g, snap_bin(omega, g.window), half_width);
}

double dhat_component(const LocalSpectra& g, double omega, int half_width,
                      int a, int b) {
  require_demeaned(g);
  const int p = g.channels();
  if (a < 1 || b < 1 || a > b || b > p)
    throw std::domain_error("component indices must satisfy 1 <= a <= b <= p");
  const int m = snap_bin(omega, g.window);
  if (half_width < 1)
    throw std::domain_error("half-width must be positive");
  const int ai = a - 1, bi = b - 1;
  const int g_count = g.grid_size();
  double acc = 0.0;
  for (int k = 1; k <= half_width; ++k) {
    const int lo_idx = require_bin(g, m - k);
    const int hi_idx = require_bin(g, m + k);
    const std::complex<double> delta =
        g.bin_means[lo_idx](ai, bi) - g.bin_means[hi_idx](ai, bi);
    for (int t = 0; t < g_count; ++t) {
      const std::complex<double>* jlo = g.transform(t, lo_idx);
      const std::complex<double>* jhi = g.transform(t, hi_idx);
      const std::complex<double> v =
          jlo[ai] * std::conj(jlo[bi]) - jhi[ai] * std::conj(jhi[bi]) - delta;
      acc += std::norm(v);
    }
  }
  return acc / (static_cast<double>(half_width) * g_count);
}

Eigen::MatrixXd dhat_component_table(const LocalSpectra& g, int m,
                                     int half_width) {
  require_demeaned(g);
  if (half_width < 1)
    throw std::domain_error("half-width must be positive");
  const int p = g.channels();
  const int g_count = g.grid_size();
  Eigen::MatrixXd table = Eigen::MatrixXd::Zero(p, p);
  std::vector<std::complex<double>> delta(static_cast<std::size_t>(p) * p);
  for (int k = 1; k <= half_width; ++k) {
    const int lo_idx = require_bin(g, m - k);
    const int hi_idx = require_bin(g, m + k);
    const Eigen::MatrixXcd& mean_lo = g.bin_means[lo_idx];
    const Eigen::MatrixXcd& mean_hi = g.bin_means[hi_idx];
    for (int b = 0; b < p; ++b)
      for (int a = 0; a <= b; ++a)
        delta[static_cast<std::size_t>(b) * p + a] = mean_lo(a, b) - mean_hi(a, b);
    for (int t = 0; t < g_count; ++t) {
      const std::complex<double>* jlo = g.transform(t, lo_idx);
      const std::complex<double>* jhi = g.transform(t, hi_idx);
      for (int b = 0; b < p; ++b) {
        const std::complex<double> clo = std::conj(jlo[b]);
        const std::complex<double> chi = std::conj(jhi[b]);
        for (int a = 0; a <= b; ++a) {
          const std::complex<double> v =
              jlo[a] * clo - jhi[a] * chi -
              delta[static_cast<std::size_t>(b) * p + a];
          table(a, b) += std::norm(v);
        }
      }
    }
  }
  table /= static_cast<double>(half_width) * g_count;
  for (int b = 0; b < p; ++b)
    for (int a = 0; a < b; ++a) table(b, a) = table(a, b);
  return table;
}

DiscrepancyCurve dhat_curve(const LocalSpectra& g, const CandidateGrid& grid,
                            unsigned threads) {
  require_demeaned(g);
  if (grid.denominator != g.window)
    throw std::domain_error("candidate grid denominator does not match the "
                            "spectra window length");
  const std::vector<int> bins = grid.evaluable_bins();
  DiscrepancyCurve curve;
  curve.half_width = grid.half_width;
  curve.frequencies.resize(bins.size());
  curve.values.resize(bins.size());
  parallel_for(bins.size(), threads, [&](std::size_t i) {
    curve.frequencies[i] = grid.frequency(bins[i]);
    curve.values[i] = dhat_at_bin(g, bins[i], grid.half_width);
  });
  return curve;
}

}  // namespace freqband
