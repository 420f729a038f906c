#pragma once

#include <span>
#include <vector>

namespace litcomplex::stats {

double mean(std::span<const double> xs);

// Population standard deviation (divides by n).
double population_sd(std::span<const double> xs);

// Sample standard deviation (divides by n - 1); 0 for fewer than two values.
double sample_sd(std::span<const double> xs);

// Linear-interpolation quantile between closest ranks (R type 7).
double quantile(std::vector<double> xs, double q);

double median(std::vector<double> xs);

double pearson(std::span<const double> xs, std::span<const double> ys);

// Ordinary least squares slope of y on x.
double ols_slope(std::span<const double> xs, std::span<const double> ys);

}  // namespace litcomplex::stats
