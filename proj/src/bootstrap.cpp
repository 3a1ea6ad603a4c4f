#include "freqband/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "freqband/parallel.hpp"
#include "freqband/rng.hpp"

namespace freqband {

namespace {

void validate_bootstrap(const BootstrapConfig& cfg) {
  if (cfg.resamples < 1)
    throw std::domain_error("bootstrap: at least one resample is required");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
    throw std::domain_error("bootstrap: alpha must lie in (0, 1)");
}

}  // namespace

double resolve_bandwidth(Eigen::Index n_samples, const KernelConfig& cfg) {
  const double h = cfg.bandwidth > 0.0
                       ? cfg.bandwidth
                       : std::pow(static_cast<double>(n_samples), -0.3);
  if (!(h > 0.0 && h < 1.0))
    throw std::domain_error("kernel bandwidth must lie in (0, 1), got " +
                            std::to_string(h));
  return h;
}

double triangular_weight(double v) { return std::max(0.0, 1.0 - std::abs(v)); }

Eigen::MatrixXd tv_covariance(const TimeSeries& ts, double u,
                              const KernelConfig& cfg) {
  const int T = static_cast<int>(ts.length());
  const int p = static_cast<int>(ts.channels());
  const double h = resolve_bandwidth(T, cfg);

  const int t_lo = std::max(1, static_cast<int>(std::floor((u - h) * T)));
  const int t_hi = std::min(T, static_cast<int>(std::ceil((u + h) * T)));

  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(p, p);
  bool any_weight = false;
  for (int t = t_lo; t <= t_hi; ++t) {
    const double w = triangular_weight((u - static_cast<double>(t) / T) / h) / h;
    if (w <= 0.0) continue;
    any_weight = true;
    acc.selfadjointView<Eigen::Lower>().rankUpdate(
        ts.values.row(t - 1).transpose(), w);
  }
  if (!any_weight)
    throw std::domain_error("tv_covariance: all kernel weights vanish at u = " +
                            std::to_string(u));
  acc /= static_cast<double>(T);
  acc.triangularView<Eigen::StrictlyUpper>() = acc.transpose();
  return acc;
}

Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols())
    throw std::domain_error("psd_sqrt: matrix must be square");
  const double scale = m.cwiseAbs().maxCoeff();
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-8 * std::max(scale, 1e-300))
    throw std::domain_error("psd_sqrt: input is not symmetric (asymmetry " +
                            std::to_string(asym) + ")");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("psd_sqrt: eigendecomposition failed");
  const Eigen::VectorXd roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  Eigen::MatrixXd s =
      es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().transpose();
  s.triangularView<Eigen::StrictlyUpper>() = s.transpose();
  return s;
}

NullModel::NullModel(const TimeSeries& ts, const KernelConfig& cfg,
                     unsigned threads)
    : channels_(ts.channels()), rate_(ts.sampling_rate) {
  const int T = static_cast<int>(ts.length());
  resolve_bandwidth(T, cfg);
  sigma_.resize(T);
  parallel_for(static_cast<std::size_t>(T), threads, [&](std::size_t i) {
    const double u = static_cast<double>(i + 1) / T;
    sigma_[i] = psd_sqrt(tv_covariance(ts, u, cfg));
  });
}

TimeSeries NullModel::resample(std::uint64_t seed) const {
  const int T = static_cast<int>(sigma_.size());
  const int p = static_cast<int>(channels_);
  GaussianStream stream(seed);
  Eigen::MatrixXd out(T, p);
  Eigen::VectorXd z(p);
  for (int t = 0; t < T; ++t) {
    for (int c = 0; c < p; ++c) z(c) = stream.next();
    out.row(t) = (sigma_[t] * z).transpose();
  }
  return TimeSeries(std::move(out), rate_);
}

TimeSeries resample(const TimeSeries& ts, const KernelConfig& cfg,
                    std::uint64_t seed) {
  return NullModel(ts, cfg).resample(seed);
}

BootstrapContext::BootstrapContext(TimeSeries ts, const WindowConfig& wcfg,
                                   const KernelConfig& kcfg, unsigned threads)
    : ts_(std::move(ts)),
      window_(resolve_window_length(ts_, wcfg)),
      stride_(wcfg.stride),
      bandwidth_(resolve_bandwidth(ts_.length(), kcfg)),
      threads_(threads),
      null_(ts_, KernelConfig{bandwidth_}, threads),
      spectra_(demean(
          sliding_spectra(ts_, WindowConfig{window_, stride_}, all_bins(window_),
                          threads),
          threads)) {}

int BootstrapContext::snap_to_grid(double omega) const {
  int m = static_cast<int>(std::llround(omega * window_));
  m = std::clamp(m, 1, window_ / 2 - 1);
  return m;
}

double BootstrapContext::observed_dhat(int m, int half_width) const {
  return dhat_at_bin(spectra_, m, half_width);
}

double BootstrapContext::resample_stat(int m, int half_width,
                                       std::uint64_t seed) const {
  std::vector<int> bins;
  bins.reserve(2 * static_cast<std::size_t>(half_width));
  for (int k = 1; k <= half_width; ++k) {
    bins.push_back(m - k);
    bins.push_back(m + k);
  }
  const TimeSeries draw = null_.resample(seed);
  const LocalSpectra spec = demean(
      sliding_spectra(draw, WindowConfig{window_, stride_}, std::move(bins), 1),
      1);
  return dhat_at_bin(spec, m, half_width);
}

TestResult BootstrapContext::test_full(int m, int half_width,
                                       const BootstrapConfig& cfg) const {
  validate_bootstrap(cfg);
  const double observed = observed_dhat(m, half_width);
  const int r_count = cfg.resamples;
  std::vector<double> stats(r_count);
  const unsigned threads = cfg.threads != 0 ? cfg.threads : threads_;
  parallel_for(static_cast<std::size_t>(r_count), threads, [&](std::size_t r) {
    stats[r] = resample_stat(m, half_width, cfg.base_seed + r);
  });
  int exceed = 0;
  for (double s : stats)
    if (s > observed) ++exceed;
  return {static_cast<double>(exceed) / r_count, observed, exceed, r_count};
}

ComponentTests BootstrapContext::test_components(
    int m, int half_width, const BootstrapConfig& cfg) const {
  validate_bootstrap(cfg);
  const int p = static_cast<int>(ts_.channels());
  const Eigen::MatrixXd observed = dhat_component_table(spectra_, m, half_width);
  const int r_count = cfg.resamples;
  std::vector<Eigen::MatrixXd> tables(r_count);
  const unsigned threads = cfg.threads != 0 ? cfg.threads : threads_;
  parallel_for(static_cast<std::size_t>(r_count), threads, [&](std::size_t r) {
    std::vector<int> bins;
    for (int k = 1; k <= half_width; ++k) {
      bins.push_back(m - k);
      bins.push_back(m + k);
    }
    const TimeSeries draw = null_.resample(cfg.base_seed + r);
    const LocalSpectra spec = demean(
        sliding_spectra(draw, WindowConfig{window_, stride_}, std::move(bins), 1),
        1);
    tables[r] = dhat_component_table(spec, m, half_width);
  });
  Eigen::MatrixXd p_values(p, p);
  for (int b = 0; b < p; ++b) {
    for (int a = 0; a <= b; ++a) {
      int exceed = 0;
      for (const auto& table : tables)
        if (table(a, b) > observed(a, b)) ++exceed;
      p_values(a, b) = static_cast<double>(exceed) / r_count;
      p_values(b, a) = p_values(a, b);
    }
  }
  return {std::move(p_values), observed, r_count};
}

namespace {

int grid_bin_or_throw(double omega, int window) {
  const double scaled = omega * window;
  const int m = static_cast<int>(std::llround(scaled));
  if (std::abs(scaled - m) > 1e-6)
    throw std::domain_error("frequency " + std::to_string(omega) +
                            " is not on the 1/" + std::to_string(window) +
                            " candidate grid");
  return m;
}

}  // namespace

TestResult pvalue_full(const TimeSeries& ts, double omega, int half_width,
                       const WindowConfig& wcfg, const KernelConfig& kcfg,
                       const BootstrapConfig& bcfg) {
  BootstrapContext ctx(ts, wcfg, kcfg, bcfg.threads);
  return ctx.test_full(grid_bin_or_throw(omega, ctx.window()), half_width, bcfg);
}

TestResult pvalue_component(const TimeSeries& ts, double omega_c,
                            int half_width, int a, int b,
                            const WindowConfig& wcfg, const KernelConfig& kcfg,
                            const BootstrapConfig& bcfg) {
  const int p = static_cast<int>(ts.channels());
  if (a < 1 || b < 1 || a > b || b > p)
    throw std::domain_error("component indices must satisfy 1 <= a <= b <= p");
  BootstrapContext ctx(ts, wcfg, kcfg, bcfg.threads);
  const ComponentTests all =
      ctx.test_components(grid_bin_or_throw(omega_c, ctx.window()), half_width,
                          bcfg);
  const double pv = all.p_values(a - 1, b - 1);
  return {pv, all.observed(a - 1, b - 1),
          static_cast<int>(std::llround(pv * all.resamples)), all.resamples};
}

}  // namespace freqband
