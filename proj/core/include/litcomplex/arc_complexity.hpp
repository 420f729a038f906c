#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace litcomplex {

enum class HurstMethod { Dfa, RescaledRange };

struct HurstConfig {
    HurstMethod method = HurstMethod::Dfa;
    std::size_t min_length = 100;
    std::size_t n_scales = 20;
    std::size_t min_scale = 10;
    std::size_t max_scale_divisor = 4;  // largest scale is N / divisor
};

// Integer window sizes log-spaced over [min_scale, N / max_scale_divisor],
// duplicates removed.
std::vector<std::size_t> dfa_scales(std::size_t n, const HurstConfig& config = {});

// Order-1 detrended fluctuation analysis: F(s) for each scale, using
// non-overlapping windows taken from both ends of the profile.
std::vector<double> dfa_fluctuations(std::span<const double> series, std::span<const std::size_t> scales);

// Slope of log F(s) against log s (DFA) or of log(R/S) against log s.
// Throws UndefinedFeature for short or constant series.
double hurst(std::span<const double> series, const HurstConfig& config = {});

struct ApEnConfig {
    std::size_t m = 2;
    double r_factor = 0.2;  // tolerance r = r_factor * population SD
};

// Approximate entropy with self-matches, Phi^m - Phi^(m+1) with Chebyshev
// distance. Returns 0 for a constant series. Throws UndefinedFeature when
// N < m + 2.
double approximate_entropy(std::span<const double> series, const ApEnConfig& config = {});

// Same estimator with an absolute tolerance.
double approximate_entropy_abs(std::span<const double> series, std::size_t m, double r);

}  // namespace litcomplex
