#pragma once

#include <cstdint>

#include "freqband/discrepancy.hpp"
#include "freqband/local_spectra.hpp"
#include "freqband/types.hpp"

namespace freqband {

// Triangular kernel K(u) = max(0, 1 - |u|); bandwidth 0 requests the
// default T^{-0.3} in rescaled time.
struct KernelConfig {
  double bandwidth = 0.0;
};

double resolve_bandwidth(Eigen::Index n_samples, const KernelConfig& cfg);
double triangular_weight(double v);

struct BootstrapConfig {
  int resamples = 100;
  double alpha = 0.05;
  std::uint64_t base_seed = 0;
  unsigned threads = 0;
};

// (1/T) sum_t X_t X_t' K_h(u - t/T), symmetrized. Throws when every
// kernel weight vanishes (u too far outside the data support).
Eigen::MatrixXd tv_covariance(const TimeSeries& ts, double u,
                              const KernelConfig& cfg);

// Symmetric PSD square root via eigendecomposition; negative eigenvalues
// are floored at zero.
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& m);

// Cache of sigma-hat(t/T) = tv_covariance(t/T)^{1/2} for t = 1..T. The
// cache depends only on the data and kernel, and is shared across all
// resamples and candidate frequencies.
class NullModel {
 public:
  NullModel(const TimeSeries& ts, const KernelConfig& cfg,
            unsigned threads = 0);
  Eigen::Index length() const { return static_cast<Eigen::Index>(sigma_.size()); }
  Eigen::Index channels() const { return channels_; }
  const Eigen::MatrixXd& sigma(int t) const { return sigma_[t - 1]; }  // 1-based
  // X*_t = sigma-hat(t/T) Z_t with Z_t i.i.d. standard Gaussian drawn
  // from a stream keyed by seed.
  TimeSeries resample(std::uint64_t seed) const;

 private:
  std::vector<Eigen::MatrixXd> sigma_;
  Eigen::Index channels_ = 0;
  std::optional<double> rate_;
};

TimeSeries resample(const TimeSeries& ts, const KernelConfig& cfg,
                    std::uint64_t seed);

struct TestResult {
  double p_value = 1.0;
  double observed = 0.0;
  int exceed = 0;
  int resamples = 0;
};

struct ComponentTests {
  Eigen::MatrixXd p_values;  // p x p, symmetric
  Eigen::MatrixXd observed;  // p x p, symmetric
  int resamples = 0;
};

// Shared per-dataset state for bootstrap testing: the demeaned observed
// spectra over every admissible bin plus the null-model cache. All
// members are immutable after construction; tests may run concurrently.
class BootstrapContext {
 public:
  BootstrapContext(TimeSeries ts, const WindowConfig& wcfg = {},
                   const KernelConfig& kcfg = {}, unsigned threads = 0);

  const TimeSeries& series() const { return ts_; }
  int window() const { return window_; }
  int stride() const { return stride_; }
  double bandwidth() const { return bandwidth_; }
  const LocalSpectra& spectra() const { return spectra_; }
  const NullModel& null_model() const { return null_; }

  int snap_to_grid(double omega) const;  // nearest bin number
  double observed_dhat(int m, int half_width) const;

  // p-value for the full statistic at bin m: resample r uses seed
  // base_seed + r; p = #{D^(r) > D_obs} / R with strict inequality.
  TestResult test_full(int m, int half_width, const BootstrapConfig& cfg) const;

  // Component p-values computed on one shared resample ensemble.
  ComponentTests test_components(int m, int half_width,
                                 const BootstrapConfig& cfg) const;

 private:
  double resample_stat(int m, int half_width, std::uint64_t seed) const;

  TimeSeries ts_;
  int window_ = 0;
  int stride_ = 1;
  double bandwidth_ = 0.0;
  unsigned threads_ = 0;
  NullModel null_;
  LocalSpectra spectra_;
};

TestResult pvalue_full(const TimeSeries& ts, double omega, int half_width,
                       const WindowConfig& wcfg = {},
                       const KernelConfig& kcfg = {},
                       const BootstrapConfig& bcfg = {});

TestResult pvalue_component(const TimeSeries& ts, double omega_c,
                            int half_width, int a, int b,
                            const WindowConfig& wcfg = {},
                            const KernelConfig& kcfg = {},
                            const BootstrapConfig& bcfg = {});

}  // namespace freqband
