#pragma once

#include <cstdint>
#include <vector>

namespace tipsim {

double mean(const std::vector<double>& xs);
double sample_sd(const std::vector<double>& xs);  // n-1 denominator

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double slope_se = 0.0;
};
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// Two-sided Kolmogorov-Smirnov statistic of xs against the Exp(rate) CDF.
double ks_statistic_exponential(std::vector<double> xs, double rate);

// Asymptotic KS critical value at significance alpha: c(alpha)/sqrt(n).
double ks_critical_value(std::size_t n, double alpha);

// Pearson chi-square statistic of observed counts against expected
// probabilities (sum 1) over the same categories.
double chi_square_statistic(const std::vector<std::uint64_t>& observed,
                            const std::vector<double>& probabilities);

// Upper quantile of the chi-square distribution via the Wilson-Hilferty
// cube approximation; plenty accurate for test thresholds at these dof.
double chi_square_quantile(double p, int dof);

// Standard normal quantile (Acklam's rational approximation).
double normal_quantile(double p);

// Standard error of the mean of a correlated series: split into
// batch_count contiguous batches and use the spread of batch means.
double batch_means_se(const std::vector<double>& xs, std::size_t batch_count);

}  // namespace tipsim
