#include "dressed/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <limits>
#include <mutex>
#include <numbers>
#include <numeric>

#include "dressed/errors.hpp"

namespace dressed {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

SpectralPeak dominant_frequency(std::span<const double> samples, double dt) {
  const std::size_t n = samples.size();
  if (n < 4) throw DomainError("spectrum: at least 4 samples required");
  if (!(dt > 0.0)) throw DomainError("spectrum: dt > 0 required");
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(n);

  const std::size_t nc = n / 2 + 1;
  double* in = fftw_alloc_real(n);
  fftw_complex* out = fftw_alloc_complex(nc);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
  }
  for (std::size_t i = 0; i < n; ++i) in[i] = samples[i] - mean;
  fftw_execute(plan);

  SpectralPeak peak;
  for (std::size_t k = 1; k < nc; ++k) {
    const double mag = std::hypot(out[k][0], out[k][1]);
    if (mag > peak.magnitude) {
      peak.magnitude = mag;
      peak.bin = k;
    }
  }
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);
  peak.frequency = 2.0 * std::numbers::pi * static_cast<double>(peak.bin) /
                   (static_cast<double>(n) * dt);
  return peak;
}

std::vector<double> autocorrelation(std::span<const double> x, std::size_t max_lag) {
  const std::size_t n = x.size();
  std::vector<double> r(max_lag + 1, 0.0);
  if (n == 0) return r;
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);
  if (var == 0.0) return r;
  for (std::size_t k = 0; k <= max_lag && k < n; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) acc += (x[i] - mean) * (x[i + k] - mean);
    r[k] = acc / static_cast<double>(n - k) / var;
  }
  return r;
}

double max_autocorrelation_peak(std::span<const double> x) {
  const std::size_t lags = x.size() / 2;
  double best = -std::numeric_limits<double>::infinity();
  if (lags < 2) return best;
  const auto r = autocorrelation(x, lags + 1);
  for (std::size_t k = 1; k <= lags; ++k)
    if (r[k] >= r[k - 1] && r[k] >= r[k + 1]) best = std::max(best, r[k]);
  return best;
}

}  // namespace dressed
