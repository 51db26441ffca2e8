#include "zonoid/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/normal.hpp>

#include "zonoid/error.hpp"
#include "zonoid/rng.hpp"

namespace zonoid
{

MeanSe mean_se(std::span<const double> x)
{
    MeanSe out;
    out.n = x.size();
    if (x.empty())
        return out;
    CompensatedSum s;
    for (double v : x)
        s.add(v);
    out.mean = s.value() / static_cast<double>(x.size());
    if (x.size() < 2)
        return out;
    CompensatedSum ss;
    for (double v : x)
    {
        double d = v - out.mean;
        ss.add(d * d);
    }
    double var = ss.value() / static_cast<double>(x.size() - 1);
    out.std_error = std::sqrt(var / static_cast<double>(x.size()));
    return out;
}

double quantile(std::vector<double> x, double p)
{
    require(!x.empty(), "quantile of empty sample");
    require(p >= 0.0 && p <= 1.0, "quantile level outside [0,1]");
    std::sort(x.begin(), x.end());
    double pos = p * static_cast<double>(x.size() - 1);
    auto lo = static_cast<std::size_t>(std::floor(pos));
    std::size_t hi = std::min(lo + 1, x.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return x[lo] + frac * (x[hi] - x[lo]);
}

double median(std::vector<double> x)
{
    return quantile(std::move(x), 0.5);
}

double normal_two_sided_quantile(double alpha)
{
    require(alpha > 0.0 && alpha < 1.0, "significance level outside (0,1)");
    boost::math::normal_distribution<double> n;
    return boost::math::quantile(boost::math::complement(n, alpha / 2.0));
}

double normal_cdf(double x)
{
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double ks_distance(std::vector<double>& a, std::vector<double>& b)
{
    require(!a.empty() && !b.empty(), "KS distance of empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double na = static_cast<double>(a.size());
    double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size())
    {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x)
            ++i;
        while (j < b.size() && b[j] <= x)
            ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    return d;
}

double loglog_slope(std::span<const double> x, std::span<const double> y)
{
    require(x.size() == y.size() && x.size() >= 2, "slope needs >= 2 points");
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        require(x[i] > 0 && y[i] > 0, "log-log slope needs positive data");
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Interval bootstrap_paired_mean_diff(std::span<const double> a,
                                    std::span<const double> b,
                                    double confidence,
                                    std::size_t resamples,
                                    std::uint64_t seed)
{
    require(a.size() == b.size() && !a.empty(), "paired bootstrap size mismatch");
    require(resamples >= 10, "too few bootstrap resamples");
    RngStream rng(seed, 0);
    std::uniform_int_distribution<std::size_t> pick(0, a.size() - 1);
    std::vector<double> stats(resamples);
    for (auto& s : stats)
    {
        CompensatedSum acc;
        for (std::size_t k = 0; k < a.size(); ++k)
        {
            std::size_t i = pick(rng.engine());
            acc.add(a[i] - b[i]);
        }
        s = acc.value() / static_cast<double>(a.size());
    }
    double tail = 0.5 * (1.0 - confidence);
    return {quantile(stats, tail), quantile(stats, 1.0 - tail)};
}

}  // namespace zonoid
