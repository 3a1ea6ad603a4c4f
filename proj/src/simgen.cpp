#include "freqband/simgen.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "freqband/parallel.hpp"
#include "freqband/rng.hpp"

namespace freqband {

namespace {

constexpr double kPi = std::numbers::pi;

std::string canonical_scheme(const std::string& name) {
  std::string up;
  for (char c : name)
    up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (up == "M3B1") up = "M3B-1";
  if (up == "M3B2") up = "M3B-2";
  return up;
}

}  // namespace

void BandSpec::validate() const {
  if (bands.empty()) throw std::domain_error("band spec: no bands");
  double cursor = 0.0;
  for (std::size_t i = 0; i < bands.size(); ++i) {
    const Band& b = bands[i];
    if (!(b.lo < b.hi))
      throw std::domain_error("band spec: empty interval");
    if (std::abs(b.lo - cursor) > 1e-12)
      throw std::domain_error("band spec: intervals must be contiguous");
    if (!b.amplitude) throw std::domain_error("band spec: missing amplitude");
    if (i > 0 && bands[i - 1].hi_closed == b.lo_closed)
      throw std::domain_error(
          "band spec: shared boundary must belong to exactly one band");
    cursor = b.hi;
  }
  if (std::abs(cursor - 0.5) > 1e-12)
    throw std::domain_error("band spec: intervals must cover (0, 1/2)");
}

double BandSpec::operator()(double u, double omega) const {
  if (u < 0.0 || u > 1.0)
    throw std::domain_error("rescaled time must lie in [0, 1]");
  if (!(omega > 0.0 && omega < 0.5))
    throw std::domain_error("frequency must lie strictly inside (0, 1/2)");
  for (const Band& b : bands) {
    const bool above_lo = b.lo_closed ? omega >= b.lo : omega > b.lo;
    const bool below_hi = b.hi_closed ? omega <= b.hi : omega < b.hi;
    if (above_lo && below_hi) return b.amplitude(u);
  }
  // Boundaries owned by neither side fall back to the right-hand band.
  for (const Band& b : bands)
    if (omega >= b.lo && omega <= b.hi) return b.amplitude(u);
  throw std::domain_error("frequency not covered by the band spec");
}

std::vector<double> BandSpec::partition_points() const {
  std::vector<double> pts;
  for (std::size_t i = 1; i < bands.size(); ++i) pts.push_back(bands[i].lo);
  return pts;
}

double true_spectrum(const BandSpec& spec, double u, double omega) {
  return spec(u, omega);
}

BandSpec bands_flat() {
  BandSpec s;
  s.bands = {{0.0, 0.5, false, false, [](double) { return 1.0; }}};
  return s;
}

BandSpec bands_linear3() {
  BandSpec s;
  s.bands = {
      {0.0, 0.15, false, false, [](double u) { return 10.0 - 9.0 * u; }},
      {0.15, 0.35, true, false, [](double) { return 1.0; }},
      {0.35, 0.5, true, false, [](double u) { return 1.0 + 9.0 * u; }},
  };
  return s;
}

BandSpec bands_sin3() {
  BandSpec s;
  s.bands = {
      {0.0, 0.15, false, true,
       [](double u) { return 10.0 + 10.0 * std::sin(4.0 * kPi * u - kPi / 2.0); }},
      {0.15, 0.35, false, true,
       [](double u) { return 5.0 + 5.0 * std::cos(4.0 * kPi * u); }},
      {0.35, 0.5, false, false,
       [](double u) {
         return 8.5 + 8.5 * std::sin(3.0 * kPi * u - kPi / 16.0);
       }},
  };
  return s;
}

BandSpec bands_linear_low() {
  BandSpec s;
  s.bands = {
      {0.0, 0.15, false, false, [](double u) { return 10.0 - 9.0 * u; }},
      {0.15, 0.5, true, false, [](double) { return 1.0; }},
  };
  return s;
}

BandSpec bands_sin2() {
  BandSpec s;
  s.bands = {
      {0.0, 0.35, false, true,
       [](double u) { return 5.0 + 5.0 * std::cos(4.0 * kPi * u); }},
      {0.35, 0.5, false, false,
       [](double u) {
         return 8.5 + 8.5 * std::sin(3.0 * kPi * u - kPi / 16.0);
       }},
  };
  return s;
}

const std::vector<std::string>& scheme_names() {
  static const std::vector<std::string> names = {"WN1B", "L3B", "S3B", "M3B-1",
                                                 "M3B-2"};
  return names;
}

SchemeSpec make_scheme(const std::string& name, int channels, int length) {
  if (channels < 1) throw std::domain_error("scheme: channels must be >= 1");
  if (length < 2) throw std::domain_error("scheme: length must be >= 2");
  const std::string id = canonical_scheme(name);
  SchemeSpec spec;
  spec.name = id;
  spec.channels = channels;
  spec.length = length;
  if (id == "WN1B") {
    spec.latents = {{bands_flat(), 0, channels}};
  } else if (id == "L3B") {
    spec.latents = {{bands_linear3(), 0, channels}};
  } else if (id == "S3B") {
    spec.latents = {{bands_sin3(), 0, channels}};
  } else if (id == "M3B-1") {
    if (channels < 2)
      throw std::domain_error("M3B-1 requires at least two channels");
    const int n_lin = channels / 2;
    spec.latents = {{bands_linear3(), 0, n_lin},
                    {bands_sin3(), n_lin, channels - n_lin}};
  } else if (id == "M3B-2") {
    const int n_low = static_cast<int>(std::floor(0.2 * channels));
    if (n_low < 1)
      throw std::domain_error(
          "M3B-2 requires at least five channels so that 20% of them is "
          "nonempty");
    spec.latents = {{bands_linear_low(), 0, n_low},
                    {bands_sin2(), n_low, channels - n_low}};
  } else {
    std::string valid;
    for (const auto& s : scheme_names()) valid += (valid.empty() ? "" : ", ") + s;
    throw std::domain_error("unknown scheme '" + name + "' (valid: " + valid +
                            ")");
  }
  for (const auto& group : spec.latents)
    for (double pt : group.bands.partition_points())
      if (std::find(spec.truth.begin(), spec.truth.end(), pt) ==
          spec.truth.end())
        spec.truth.push_back(pt);
  std::sort(spec.truth.begin(), spec.truth.end());
  return spec;
}

Eigen::VectorXd synth_banded(const BandSpec& bands, int length,
                             std::uint64_t seed, unsigned threads) {
  if (length < 2) throw std::domain_error("synth: length must be >= 2");
  bands.validate();
  const int m = length;
  const int n_harmonics = m / 2 - 1;
  Eigen::VectorXd z = Eigen::VectorXd::Zero(m);
  if (n_harmonics < 1) return z;

  std::vector<double> coef_a(n_harmonics), coef_b(n_harmonics);
  GaussianStream stream(seed);
  for (int k = 0; k < n_harmonics; ++k) {
    coef_a[k] = stream.next();
    coef_b[k] = stream.next();
  }

  // Band membership of each harmonic is time-invariant.
  std::vector<int> band_of(n_harmonics);
  for (int k = 1; k <= n_harmonics; ++k) {
    const double omega = static_cast<double>(k) / m;
    int idx = -1;
    for (std::size_t b = 0; b < bands.bands.size(); ++b) {
      const Band& band = bands.bands[b];
      const bool above = band.lo_closed ? omega >= band.lo : omega > band.lo;
      const bool below = band.hi_closed ? omega <= band.hi : omega < band.hi;
      if (above && below) {
        idx = static_cast<int>(b);
        break;
      }
    }
    if (idx < 0)
      throw std::domain_error("synth: harmonic frequency not covered");
    band_of[k - 1] = idx;
  }

  const double base = 4.0 * kPi / m;  // sigma_k^2 = base * f(u, k/M)
  parallel_for(static_cast<std::size_t>(m), threads, [&](std::size_t i) {
    const int t = static_cast<int>(i) + 1;
    const double u = static_cast<double>(t) / m;
    std::vector<double> level(bands.bands.size());
    for (std::size_t b = 0; b < bands.bands.size(); ++b)
      level[b] = std::sqrt(std::max(0.0, base * bands.bands[b].amplitude(u)));
    const double phi = 2.0 * kPi * t / m;
    const std::complex<double> rot = std::polar(1.0, phi);
    std::complex<double> w = rot;  // e^{i phi k} starting at k = 1
    double acc = 0.0;
    for (int k = 0; k < n_harmonics; ++k) {
      acc += level[band_of[k]] * (coef_a[k] * w.real() + coef_b[k] * w.imag());
      w *= rot;
    }
    z[static_cast<Eigen::Index>(i)] = acc;
  });
  return z;
}

TimeSeries generate(const SchemeSpec& scheme, std::uint64_t seed,
                    unsigned threads) {
  if (scheme.latents.empty())
    throw std::domain_error("generate: scheme has no latent groups");
  Eigen::MatrixXd x(scheme.length, scheme.channels);
  for (std::size_t li = 0; li < scheme.latents.size(); ++li) {
    const LatentGroup& group = scheme.latents[li];
    const int latent_len = scheme.length + group.count - 1;
    const Eigen::VectorXd z =
        synth_banded(group.bands, latent_len, derive_seed(seed, li), threads);
    for (int c = 0; c < group.count; ++c)
      x.col(group.first_channel + c) = z.segment(c, scheme.length);
  }
  return TimeSeries(std::move(x));
}

bool correct_detection(std::vector<double> estimated, std::vector<double> truth,
                       double zeta) {
  if (!(zeta > 0.0)) throw std::domain_error("zeta must be positive");
  if (estimated.size() != truth.size()) return false;
  std::sort(estimated.begin(), estimated.end());
  std::sort(truth.begin(), truth.end());
  for (std::size_t i = 0; i < truth.size(); ++i)
    if (std::abs(estimated[i] - truth[i]) > zeta + 1e-12) return false;
  return true;
}

bool correct_detection(const PartitionResult& result,
                       const std::vector<double>& truth, double zeta) {
  return correct_detection(result.omegas(), truth, zeta);
}

}  // namespace freqband
