#include "litcomplex/arc_complexity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "litcomplex/error.hpp"
#include "litcomplex/stats.hpp"

namespace litcomplex {

namespace {

// Residual sum of squares of the least-squares line through y[0..s).
double linear_rss(const double* y, std::size_t s) {
    const double xm = (static_cast<double>(s) - 1.0) / 2.0;
    double ym = 0.0;
    for (std::size_t i = 0; i < s; ++i) ym += y[i];
    ym /= static_cast<double>(s);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
        const double dx = static_cast<double>(i) - xm;
        sxy += dx * (y[i] - ym);
        sxx += dx * dx;
    }
    const double slope = sxx > 0 ? sxy / sxx : 0.0;
    double rss = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
        const double r = (y[i] - ym) - slope * (static_cast<double>(i) - xm);
        rss += r * r;
    }
    return rss;
}

double rescaled_range(const double* x, std::size_t s) {
    double m = 0.0;
    for (std::size_t i = 0; i < s; ++i) m += x[i];
    m /= static_cast<double>(s);
    double cum = 0.0, lo = 0.0, hi = 0.0, ss = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
        cum += x[i] - m;
        lo = std::min(lo, cum);
        hi = std::max(hi, cum);
        ss += (x[i] - m) * (x[i] - m);
    }
    const double sd = std::sqrt(ss / static_cast<double>(s));
    return sd > 0 ? (hi - lo) / sd : 0.0;
}

void check_series(std::span<const double> series, const HurstConfig& config) {
    if (series.size() < config.min_length) {
        throw UndefinedFeature("hurst: series length " + std::to_string(series.size()) + " < " +
                               std::to_string(config.min_length));
    }
    if (stats::population_sd(series) == 0.0) throw UndefinedFeature("hurst: zero-variance series");
}

double log_log_slope(std::span<const std::size_t> scales, std::span<const double> values) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
            throw UndefinedFeature("hurst: non-positive fluctuation at scale " + std::to_string(scales[i]));
        }
        lx.push_back(std::log(static_cast<double>(scales[i])));
        ly.push_back(std::log(values[i]));
    }
    if (lx.size() < 2) throw UndefinedFeature("hurst: fewer than two scales");
    return stats::ols_slope(lx, ly);
}

}  // namespace

std::vector<std::size_t> dfa_scales(std::size_t n, const HurstConfig& config) {
    const std::size_t lo = config.min_scale;
    const std::size_t hi = n / config.max_scale_divisor;
    std::vector<std::size_t> scales;
    if (hi < lo) return scales;
    const std::size_t k = std::max<std::size_t>(config.n_scales, 2);
    const double a = std::log(static_cast<double>(lo));
    const double b = std::log(static_cast<double>(hi));
    for (std::size_t i = 0; i < k; ++i) {
        const double v = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(k - 1));
        const auto s = std::clamp(static_cast<std::size_t>(std::llround(v)), lo, hi);
        if (scales.empty() || scales.back() != s) scales.push_back(s);
    }
    return scales;
}

std::vector<double> dfa_fluctuations(std::span<const double> series, std::span<const std::size_t> scales) {
    const std::size_t n = series.size();
    const double m = stats::mean(series);
    std::vector<double> profile(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += series[i] - m;
        profile[i] = acc;
    }
    std::vector<double> f;
    f.reserve(scales.size());
    for (std::size_t s : scales) {
        const std::size_t windows = n / s;
        double rss = 0.0;
        for (std::size_t w = 0; w < windows; ++w) {
            rss += linear_rss(profile.data() + w * s, s);
            rss += linear_rss(profile.data() + (n - (w + 1) * s), s);
        }
        f.push_back(std::sqrt(rss / static_cast<double>(2 * windows * s)));
    }
    return f;
}

double hurst(std::span<const double> series, const HurstConfig& config) {
    check_series(series, config);
    const auto scales = dfa_scales(series.size(), config);
    if (config.method == HurstMethod::Dfa) return log_log_slope(scales, dfa_fluctuations(series, scales));

    std::vector<double> rs;
    for (std::size_t s : scales) {
        const std::size_t windows = series.size() / s;
        double total = 0.0;
        std::size_t used = 0;
        for (std::size_t w = 0; w < windows; ++w) {
            const double v = rescaled_range(series.data() + w * s, s);
            if (v > 0) {
                total += v;
                ++used;
            }
        }
        rs.push_back(used ? total / static_cast<double>(used) : 0.0);
    }
    return log_log_slope(scales, rs);
}

double approximate_entropy_abs(std::span<const double> x, std::size_t m, double r) {
    const std::size_t n = x.size();
    if (m == 0 || n < m + 2) {
        throw UndefinedFeature("approximate_entropy: series length " + std::to_string(n) + " < m + 2");
    }
    const std::size_t nm = n - m + 1;  // templates of length m
    const std::size_t nm1 = n - m;     // templates of length m + 1
    // Self-matches are included, so every count starts at 1.
    std::vector<std::size_t> cm(nm, 1), cm1(nm1, 1);
    for (std::size_t i = 0; i < nm; ++i) {
        for (std::size_t j = i + 1; j < nm; ++j) {
            bool close = true;
            for (std::size_t k = 0; k < m; ++k) {
                if (std::abs(x[i + k] - x[j + k]) > r) {
                    close = false;
                    break;
                }
            }
            if (!close) continue;
            ++cm[i];
            ++cm[j];
            if (j < nm1 && std::abs(x[i + m] - x[j + m]) <= r) {
                ++cm1[i];
                ++cm1[j];
            }
        }
    }
    auto phi = [](const std::vector<std::size_t>& counts) {
        const double total = static_cast<double>(counts.size());
        double s = 0.0;
        for (auto c : counts) s += std::log(static_cast<double>(c) / total);
        return s / total;
    };
    return phi(cm) - phi(cm1);
}

double approximate_entropy(std::span<const double> series, const ApEnConfig& config) {
    if (series.size() < config.m + 2) {
        throw UndefinedFeature("approximate_entropy: series length " + std::to_string(series.size()) + " < m + 2");
    }
    const double sd = stats::population_sd(series);
    if (sd == 0.0) return 0.0;
    return approximate_entropy_abs(series, config.m, config.r_factor * sd);
}

}  // namespace litcomplex
