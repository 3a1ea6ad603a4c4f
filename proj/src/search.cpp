#include "freqband/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "freqband/parallel.hpp"
#include "freqband/rng.hpp"

namespace freqband {

namespace {

std::vector<int> sanitize_scales(const ScaleSet& scales, int window) {
  std::vector<int> widths = scales.widths;
  if (widths.empty())
    throw std::domain_error("detect: at least one half-width is required");
  std::sort(widths.begin(), widths.end());
  widths.erase(std::unique(widths.begin(), widths.end()), widths.end());
  for (int w : widths) {
    if (w < 1 || 4 * w > window)
      throw std::domain_error("half-width " + std::to_string(w) +
                              " is invalid for window length " +
                              std::to_string(window));
  }
  return widths;
}

}  // namespace

std::vector<double> PartitionResult::omegas() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& pt : points) out.push_back(pt.omega);
  return out;
}

ScaleSet default_scales(int window, int wmin_div, int wmax_div, int count) {
  if (wmax_div < 4)
    throw std::domain_error("wmax divisor must be at least 4");
  if (wmin_div <= wmax_div)
    throw std::domain_error("wmin divisor must exceed wmax divisor");
  if (count < 1) throw std::domain_error("scale count must be positive");
  const int lo = window / wmin_div;
  const int hi = window / wmax_div;
  if (lo < 1)
    throw std::domain_error("window length " + std::to_string(window) +
                            " is too short for wmin divisor " +
                            std::to_string(wmin_div));
  ScaleSet scales;
  if (count == 1) {
    scales.widths.push_back(lo);
  } else {
    for (int i = 0; i < count; ++i) {
      const double v = lo + static_cast<double>(i) * (hi - lo) / (count - 1);
      scales.widths.push_back(static_cast<int>(std::llround(v)));
    }
  }
  std::sort(scales.widths.begin(), scales.widths.end());
  scales.widths.erase(std::unique(scales.widths.begin(), scales.widths.end()),
                      scales.widths.end());
  return scales;
}

PartitionResult detect_multiscale(const TimeSeries& ts, const ScaleSet& scales,
                                  const WindowConfig& wcfg,
                                  const KernelConfig& kcfg,
                                  const BootstrapConfig& bcfg) {
  BootstrapContext ctx(ts, wcfg, kcfg, bcfg.threads);
  const int n = ctx.window();
  const int half = n / 2;
  const std::vector<int> widths = sanitize_scales(scales, n);

  PartitionResult result;
  result.window = n;

  // Base candidate set at the finest scale, as integer bins over 1/N.
  const int w_first = widths.front();
  std::vector<char> active(static_cast<std::size_t>(half) + 1, 0);
  for (int m = w_first; m <= half - w_first; ++m) active[m] = 1;

  std::vector<int> accepted_bins;
  int order = 0;

  for (std::size_t scale_idx = 0; scale_idx < widths.size(); ++scale_idx) {
    const int w = widths[scale_idx];
    // Shrink to the range where the statistic at half-width w is defined;
    // this removes the endpoints of the base grid at every scale.
    for (int m = 0; m <= half; ++m)
      if (active[m] && (m < w + 1 || m > half - w - 1)) active[m] = 0;
    for (int taken : accepted_bins)
      for (int m = std::max(0, taken - w); m <= std::min(half, taken + w); ++m)
        active[m] = 0;

    std::vector<int> candidates;
    for (int m = 0; m <= half; ++m)
      if (active[m]) candidates.push_back(m);

    // Curve over the scale's initial candidate set; values stay valid
    // through the inner loop since excision only removes candidates.
    std::vector<double> value_by_bin(static_cast<std::size_t>(half) + 1,
                                     std::numeric_limits<double>::quiet_NaN());
    DiscrepancyCurve curve;
    curve.half_width = w;
    if (!candidates.empty()) {
      curve.frequencies.resize(candidates.size());
      curve.values.resize(candidates.size());
      const unsigned threads = bcfg.threads;
      parallel_for(candidates.size(), threads, [&](std::size_t i) {
        curve.frequencies[i] = static_cast<double>(candidates[i]) / n;
        curve.values[i] = ctx.observed_dhat(candidates[i], w);
      });
      for (std::size_t i = 0; i < candidates.size(); ++i)
        value_by_bin[candidates[i]] = curve.values[i];
    }
    result.curves.push_back({w, std::move(curve)});

    for (int iteration = 0;; ++iteration) {
      int best = -1;
      double best_value = -std::numeric_limits<double>::infinity();
      for (int m : candidates) {
        if (!active[m]) continue;
        if (value_by_bin[m] > best_value) {  // ties keep the lowest frequency
          best_value = value_by_bin[m];
          best = m;
        }
      }
      if (best < 0) break;

      BootstrapConfig test_cfg = bcfg;
      test_cfg.base_seed = derive_seed(bcfg.base_seed, scale_idx,
                                       static_cast<std::uint64_t>(iteration));
      const TestResult test = ctx.test_full(best, w, test_cfg);
      const bool significant = test.p_value <= bcfg.alpha;
      result.tests.push_back({static_cast<int>(scale_idx), w,
                              static_cast<double>(best) / n, test.observed,
                              test.p_value, significant});
      if (!significant) break;

      PartitionPoint point;
      point.omega = static_cast<double>(best) / n;
      if (ts.sampling_rate) point.hz = point.omega * *ts.sampling_rate;
      point.width = w;
      point.scale_index = static_cast<int>(scale_idx);
      point.p_value = test.p_value;
      point.order = order++;
      result.points.push_back(point);
      accepted_bins.push_back(best);
      for (int m = std::max(0, best - w); m <= std::min(half, best + w); ++m)
        active[m] = 0;
    }
  }

  result.k_hat = static_cast<int>(result.points.size());
  return result;
}

PartitionResult detect_single_scale(const TimeSeries& ts, int width,
                                    const WindowConfig& wcfg,
                                    const KernelConfig& kcfg,
                                    const BootstrapConfig& bcfg) {
  return detect_multiscale(ts, ScaleSet{{width}}, wcfg, kcfg, bcfg);
}

int select_w(const PartitionResult& result, const ScaleSet& scales) {
  if (scales.widths.empty())
    throw std::domain_error("select_w: empty scale set");
  int best_index = -1;
  for (const auto& pt : result.points)
    best_index = std::max(best_index, pt.scale_index);
  if (best_index < 0) return scales.widths.back();
  if (best_index >= static_cast<int>(scales.widths.size()))
    throw std::domain_error("select_w: result does not match the scale set");
  return scales.widths[best_index];
}

ComponentAttribution attribute_components(const TimeSeries& ts, double omega_c,
                                          int width, const WindowConfig& wcfg,
                                          const KernelConfig& kcfg,
                                          const BootstrapConfig& bcfg) {
  BootstrapContext ctx(ts, wcfg, kcfg, bcfg.threads);
  const double scaled = omega_c * ctx.window();
  const int m = static_cast<int>(std::llround(scaled));
  if (std::abs(scaled - m) > 1e-6)
    throw std::domain_error("frequency " + std::to_string(omega_c) +
                            " is not on the 1/" + std::to_string(ctx.window()) +
                            " grid");
  const ComponentTests tests = ctx.test_components(m, width, bcfg);
  const int p = static_cast<int>(ts.channels());
  ComponentAttribution out;
  out.omega = static_cast<double>(m) / ctx.window();
  out.width = width;
  out.n_tests = p * (p + 1) / 2;
  out.threshold = bcfg.alpha / out.n_tests;
  out.p_values = tests.p_values;
  out.significant = tests.p_values.array() <= out.threshold;
  return out;
}

}  // namespace freqband
