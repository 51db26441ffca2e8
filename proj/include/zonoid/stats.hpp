#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace zonoid
{

/// Neumaier-compensated running sum.
class CompensatedSum
{
public:
    void add(double x)
    {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct MeanSe
{
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
};

/// Sample mean and its standard error (sd / sqrt(n), n - 1 denominator).
MeanSe mean_se(std::span<const double> x);

double median(std::vector<double> x);
double quantile(std::vector<double> x, double p);

/// Two-sided standard normal quantile: z with P(|Z| > z) = alpha.
double normal_two_sided_quantile(double alpha);
double normal_cdf(double x);

/// Two-sample Kolmogorov-Smirnov distance; inputs are sorted in place.
double ks_distance(std::vector<double>& a, std::vector<double>& b);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

/*!
 * Bootstrap percentile interval for mean(a) - mean(b) with paired resampling
 * of indices (a and b must share a length).
 */
struct Interval
{
    double lo = 0.0;
    double hi = 0.0;
};
Interval bootstrap_paired_mean_diff(std::span<const double> a,
                                    std::span<const double> b,
                                    double confidence,
                                    std::size_t resamples,
                                    std::uint64_t seed);

}  // namespace zonoid
