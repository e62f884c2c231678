#include "tipsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tipsim {

double mean(const std::vector<double>& xs) {
    if (xs.empty()) {
        throw std::invalid_argument("mean: empty series");
    }
    double acc = 0.0;
    for (double x : xs) {
        acc += x;
    }
    return acc / static_cast<double>(xs.size());
}

double sample_sd(const std::vector<double>& xs) {
    if (xs.size() < 2) {
        throw std::invalid_argument("sample_sd: need at least two points");
    }
    const double m = mean(xs);
    double acc = 0.0;
    for (double x : xs) {
        acc += (x - m) * (x - m);
    }
    return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("linear_fit: need two equal-length series, n >= 2");
    }
    const double n = static_cast<double>(x.size());
    const double mx = mean(x);
    const double my = mean(y);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("linear_fit: degenerate x values");
    }
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
    }
    fit.r_squared = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
    fit.slope_se = x.size() > 2 ? std::sqrt(ss_res / (n - 2.0) / sxx) : 0.0;
    return fit;
}

double ks_statistic_exponential(std::vector<double> xs, double rate) {
    if (xs.empty()) {
        throw std::invalid_argument("ks_statistic_exponential: empty sample");
    }
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double cdf = 1.0 - std::exp(-rate * xs[i]);
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max({d, cdf - lo, hi - cdf});
    }
    return d;
}

double ks_critical_value(std::size_t n, double alpha) {
    // D_crit = sqrt(-ln(alpha/2) / 2) / sqrt(n)
    return std::sqrt(-std::log(alpha / 2.0) / 2.0) / std::sqrt(static_cast<double>(n));
}

double chi_square_statistic(const std::vector<std::uint64_t>& observed,
                            const std::vector<double>& probabilities) {
    if (observed.size() != probabilities.size() || observed.empty()) {
        throw std::invalid_argument("chi_square_statistic: size mismatch");
    }
    std::uint64_t total = 0;
    for (std::uint64_t c : observed) {
        total += c;
    }
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double expected = probabilities[i] * static_cast<double>(total);
        if (expected <= 0.0) {
            throw std::invalid_argument("chi_square_statistic: zero expected count");
        }
        const double diff = static_cast<double>(observed[i]) - expected;
        stat += diff * diff / expected;
    }
    return stat;
}

double chi_square_quantile(double p, int dof) {
    if (dof < 1 || p <= 0.0 || p >= 1.0) {
        throw std::invalid_argument("chi_square_quantile: bad arguments");
    }
    const double k = static_cast<double>(dof);
    const double z = normal_quantile(p);
    const double t = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
    return k * t * t * t;
}

double normal_quantile(double p) {
    if (p <= 0.0 || p >= 1.0) {
        throw std::invalid_argument("normal_quantile: p outside (0,1)");
    }
    // Acklam's approximation, |relative error| < 1.15e-9.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double batch_means_se(const std::vector<double>& xs, std::size_t batch_count) {
    if (batch_count < 2 || xs.size() < 2 * batch_count) {
        throw std::invalid_argument("batch_means_se: series too short for batch count");
    }
    const std::size_t batch_len = xs.size() / batch_count;
    std::vector<double> batch_means;
    batch_means.reserve(batch_count);
    for (std::size_t b = 0; b < batch_count; ++b) {
        double acc = 0.0;
        for (std::size_t i = b * batch_len; i < (b + 1) * batch_len; ++i) {
            acc += xs[i];
        }
        batch_means.push_back(acc / static_cast<double>(batch_len));
    }
    return sample_sd(batch_means) / std::sqrt(static_cast<double>(batch_count));
}

}  // namespace tipsim
