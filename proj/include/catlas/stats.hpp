#pragma once

#include <span>
#include <vector>

namespace catlas {

// Population SD (divide by N) throughout.
struct DescriptiveStats {
    double mean = 0.0;
    double sd = 0.0;
    double median = 0.0;
};

namespace stats {

double mean(std::span<const double> v);
double population_sd(std::span<const double> v);

// Linear interpolation between order statistics at position q * (n - 1).
// Input must be sorted ascending and non-empty.
double quantile_sorted(std::span<const double> sorted, double q);

double median(std::span<const double> v);

DescriptiveStats describe(std::span<const double> v);

// 1-based ascending ranks; tied values share the average of their positions.
std::vector<double> average_ranks(std::span<const double> v);

// Standard normal CDF.
double normal_cdf(double z);

// Regularized incomplete beta I_x(a, b), evaluated with Lentz's continued
// fraction.
double regularized_incomplete_beta(double a, double b, double x);

// Two-sided p-value of a Student t statistic with df degrees of freedom.
double t_two_sided_p(double t, double df);

}  // namespace stats
}  // namespace catlas
