#include "freqband/bench.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "freqband/parallel.hpp"
#include "freqband/rng.hpp"

namespace freqband {

namespace {

struct CellRequest {
  std::string scheme;
  int p = 0;
  int T = 0;
  int wmin_div = 8;
  std::vector<double> zetas;
};

template <typename T>
std::vector<T> pick(const std::vector<T>& overrides, std::vector<T> defaults) {
  return overrides.empty() ? defaults : overrides;
}

std::vector<CellRequest> table_cells(int table, const BenchOverrides& o) {
  const std::vector<std::string> all = {"WN1B", "L3B", "S3B", "M3B-1", "M3B-2"};
  const std::vector<std::string> banded = {"L3B", "S3B", "M3B-1", "M3B-2"};
  std::vector<CellRequest> cells;
  auto add = [&](const std::string& scheme, int p, int T, int wmin,
                 std::vector<double> zetas) {
    cells.push_back({scheme, p, T, wmin, std::move(zetas)});
  };
  switch (table) {
    case 1:
      for (int p : pick(o.p_values, {10, 15}))
        for (int T : pick(o.T_values, {200, 500, 1000}))
          for (const auto& s : pick(o.schemes, all))
            add(s, p, T, pick(o.wmin_divisors, {8}).front(), o.zetas);
      break;
    case 2:
      for (int p : pick(o.p_values, {10, 15}))
        for (int wmin : pick(o.wmin_divisors, {8, 10, 12}))
          for (const auto& s : pick(o.schemes, all))
            add(s, p, pick(o.T_values, {1000}).front(), wmin, o.zetas);
      break;
    case 3:
      for (int p : pick(o.p_values, {10, 15}))
        for (int T : pick(o.T_values, {200, 500, 1000}))
          for (const auto& s : pick(o.schemes, banded))
            add(s, p, T, pick(o.wmin_divisors, {8}).front(),
                pick(o.zetas, {1.0 / 16}));
      break;
    case 4:
      for (int p : pick(o.p_values, {10, 15}))
        for (const auto& s : pick(o.schemes, banded))
          add(s, p, pick(o.T_values, {1000}).front(),
              pick(o.wmin_divisors, {8}).front(),
              pick(o.zetas, {1.0 / 12, 1.0 / 16, 1.0 / 24}));
      break;
    default:
      throw std::domain_error("unknown results table " + std::to_string(table) +
                              " (valid: 1, 2, 3, 4)");
  }
  return cells;
}

}  // namespace

TableSummary replicate_table(int table, int reps, const BenchOverrides& o) {
  if (reps < 1) throw std::domain_error("bench: reps must be >= 1");
  const std::vector<CellRequest> requests = table_cells(table, o);

  TableSummary summary;
  summary.table = table;
  summary.reps = reps;

  for (std::size_t ci = 0; ci < requests.size(); ++ci) {
    const CellRequest& req = requests[ci];
    TableCell cell;
    cell.scheme = req.scheme;
    cell.p = req.p;
    cell.T = req.T;
    cell.wmin_div = req.wmin_div;
    cell.zetas = req.zetas;
    cell.replications.resize(reps);

    const SchemeSpec scheme = make_scheme(req.scheme, req.p, req.T);
    const unsigned outer = effective_threads(o.threads);
    parallel_for(static_cast<std::size_t>(reps), outer, [&](std::size_t rep) {
      const std::uint64_t rep_seed = derive_seed(o.base_seed, ci, rep);
      const auto t0 = std::chrono::steady_clock::now();
      const TimeSeries ts = generate(scheme, derive_seed(rep_seed, 1), 1);
      const int n = default_window_length(ts.length());
      const ScaleSet scales =
          default_scales(n, req.wmin_div, o.wmax_div, o.scale_count);
      BootstrapConfig bcfg;
      bcfg.resamples = o.resamples;
      bcfg.alpha = o.alpha;
      bcfg.base_seed = derive_seed(rep_seed, 2);
      bcfg.threads = outer > 1 ? 1 : o.threads;
      const PartitionResult res = detect_multiscale(ts, scales, {}, {}, bcfg);
      const auto t1 = std::chrono::steady_clock::now();

      Replication& out = cell.replications[rep];
      out.seed = rep_seed;
      out.k_hat = res.k_hat;
      out.omegas = res.omegas();
      out.elapsed_ms =
          std::chrono::duration<double, std::milli>(t1 - t0).count();
      for (double zeta : req.zetas)
        out.correct.push_back(
            correct_detection(res, scheme.truth, zeta) ? 1 : 0);
      if (o.progress)
        o.progress(req.scheme + " p=" + std::to_string(req.p) +
                   " T=" + std::to_string(req.T) + " rep " +
                   std::to_string(rep + 1) + "/" + std::to_string(reps) +
                   " K=" + std::to_string(res.k_hat));
    });

    double mean = 0.0;
    for (const auto& r : cell.replications) mean += r.k_hat + 1;
    mean /= reps;
    cell.mean_bands = mean;
    if (reps >= 2) {
      double ss = 0.0;
      for (const auto& r : cell.replications) {
        const double d = (r.k_hat + 1) - mean;
        ss += d * d;
      }
      cell.sd_bands = std::sqrt(ss / (reps - 1));
    }
    for (std::size_t zi = 0; zi < req.zetas.size(); ++zi) {
      double q = 0.0;
      for (const auto& r : cell.replications) q += r.correct[zi];
      q /= reps;
      cell.proportion.push_back(q);
      cell.mc_se.push_back(std::sqrt(q * (1.0 - q) / reps));
    }
    if (!o.keep_replications) cell.replications.clear();
    summary.cells.push_back(std::move(cell));
  }
  return summary;
}

}  // namespace freqband
