#pragma once

#include <optional>
#include <string>
#include <vector>

#include "freqband/bootstrap.hpp"

namespace freqband {

struct ScaleSet {
  std::vector<int> widths;  // ascending half-widths W
};

// Equally spaced half-widths from floor(N/wmin_div) to floor(N/wmax_div)
// inclusive, rounded to integers and deduplicated.
ScaleSet default_scales(int window, int wmin_div = 8, int wmax_div = 4,
                        int count = 5);

struct PartitionPoint {
  double omega = 0.0;             // cycles per sample
  std::optional<double> hz;       // omega * sampling_rate when known
  int width = 0;                  // W at detection
  int scale_index = 0;
  double p_value = 1.0;
  int order = 0;                  // detection order within the search
};

struct TestRecord {
  int scale_index = 0;
  int width = 0;
  double omega = 0.0;
  double observed = 0.0;
  double p_value = 1.0;
  bool significant = false;
};

struct ScaleCurve {
  int width = 0;
  DiscrepancyCurve curve;
};

struct PartitionResult {
  std::vector<PartitionPoint> points;  // detection order
  int k_hat = 0;
  int window = 0;                      // N used
  std::vector<ScaleCurve> curves;      // one per scale, pre-search values
  std::vector<TestRecord> tests;       // every significance test performed
  std::vector<double> omegas() const;
};

// Iterative argmax/test/excise search at every scale, ascending. At scale
// W the candidate set is shrunk to the W-valid range, neighborhoods of
// previously accepted points are removed, and the inner loop runs until a
// non-significant maximum or an empty candidate set. Ties in the argmax
// resolve to the lowest frequency.
PartitionResult detect_multiscale(const TimeSeries& ts, const ScaleSet& scales,
                                  const WindowConfig& wcfg = {},
                                  const KernelConfig& kcfg = {},
                                  const BootstrapConfig& bcfg = {});

PartitionResult detect_single_scale(const TimeSeries& ts, int width,
                                    const WindowConfig& wcfg = {},
                                    const KernelConfig& kcfg = {},
                                    const BootstrapConfig& bcfg = {});

// Largest scale at which a point was added; the top scale when none was.
int select_w(const PartitionResult& result, const ScaleSet& scales);

struct ComponentAttribution {
  double omega = 0.0;
  int width = 0;
  Eigen::MatrixXd p_values;                      // p x p, symmetric
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> significant;
  double threshold = 0.0;                        // alpha / (p(p+1)/2)
  int n_tests = 0;
};

ComponentAttribution attribute_components(const TimeSeries& ts, double omega_c,
                                          int width,
                                          const WindowConfig& wcfg = {},
                                          const KernelConfig& kcfg = {},
                                          const BootstrapConfig& bcfg = {});

}  // namespace freqband
