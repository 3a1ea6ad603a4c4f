#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "freqband/simgen.hpp"

namespace freqband {

// Restrictions and knobs for a table run; empty vectors keep the table's
// own grid for that dimension.
struct BenchOverrides {
  std::vector<std::string> schemes;
  std::vector<int> p_values;
  std::vector<int> T_values;
  std::vector<int> wmin_divisors;
  std::vector<double> zetas;
  std::uint64_t base_seed = 0;
  int resamples = 100;
  double alpha = 0.05;
  int scale_count = 5;
  int wmax_div = 4;
  unsigned threads = 0;
  bool keep_replications = true;
  std::function<void(const std::string&)> progress;  // optional, stderr etc.
};

struct Replication {
  std::uint64_t seed = 0;
  int k_hat = 0;
  std::vector<double> omegas;
  std::vector<char> correct;  // one flag per requested zeta
  double elapsed_ms = 0.0;
};

struct TableCell {
  std::string scheme;
  int p = 0;
  int T = 0;
  int wmin_div = 8;
  std::vector<double> zetas;
  double mean_bands = 0.0;               // mean of K-hat + 1
  std::optional<double> sd_bands;        // absent when reps < 2
  std::vector<double> proportion;        // correct-detection rate per zeta
  std::vector<double> mc_se;             // binomial SE per zeta
  std::vector<Replication> replications;
};

struct TableSummary {
  int table = 0;
  int reps = 0;
  std::vector<TableCell> cells;
};

// Runs the requested results table: 1 = band counts over (p, T); 2 = band
// counts over (p, W_min divisor) at T = 1000; 3 = correct detection at
// zeta = 1/16 over (p, T); 4 = correct detection over zeta at T = 1000.
TableSummary replicate_table(int table, int reps,
                             const BenchOverrides& overrides = {});

}  // namespace freqband
