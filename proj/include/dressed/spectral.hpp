#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dressed {

struct SpectralPeak {
  double frequency = 0.0;  // angular, 2 pi bin / (N dt)
  double magnitude = 0.0;
  std::size_t bin = 0;
};

/// Largest non-zero bin of the one-sided spectrum of the mean-removed
/// samples (rectangular window). Needs at least 4 samples and dt > 0.
SpectralPeak dominant_frequency(std::span<const double> samples, double dt);

/// Unbiased autocorrelation normalized by the lag-0 variance, lags 0..max_lag.
/// All zeros for a constant series.
std::vector<double> autocorrelation(std::span<const double> x, std::size_t max_lag);

/// Highest local maximum of the autocorrelation at lags 1..N/2; -inf if none.
double max_autocorrelation_peak(std::span<const double> x);

}  // namespace dressed
