#include "zonoid/process.hpp"

#include <cmath>

#include "zonoid/error.hpp"

namespace zonoid
{

double CovarianceKernel::operator()(double s, double t) const
{
    switch (kind)
    {
        case Kind::brownian:
            if ((s > 0 && t > 0) || (s < 0 && t < 0))
                return scale * std::min(std::abs(s), std::abs(t));
            return 0.0;
        case Kind::fbm: {
            double h2 = 2.0 * hurst;
            return 0.5 * scale
                   * (std::pow(std::abs(s), h2) + std::pow(std::abs(t), h2)
                      - std::pow(std::abs(t - s), h2));
        }
        case Kind::constant:
            return scale;
    }
    return 0.0;
}

void CovarianceKernel::validate() const
{
    require(scale >= 0.0 && std::isfinite(scale), "kernel scale must be >= 0");
    if (kind == Kind::fbm)
        require(hurst > 0.0 && hurst <= 1.0, "Hurst index must lie in (0, 1]");
}

double MeanFunction::operator()(double t, double variance) const
{
    switch (kind)
    {
        case Kind::constant:
            return offset;
        case Kind::linear_abs:
            return offset + slope * std::abs(t);
        case Kind::neg_half_variance:
            return offset - 0.5 * variance;
    }
    return offset;
}

Vector GaussianProcess::means_at(std::span<const double> times) const
{
    Vector m(times.size());
    for (std::size_t i = 0; i < times.size(); ++i)
        m[i] = mean(times[i], kernel.variance(times[i]));
    return m;
}

Matrix GaussianProcess::covariance_at(std::span<const double> times) const
{
    kernel.validate();
    const auto n = static_cast<Eigen::Index>(times.size());
    Matrix c(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j <= i; ++j)
            c(i, j) = c(j, i) = kernel(times[i], times[j]);
    return c;
}

LawModel GaussianProcess::law_at(std::span<const double> times) const
{
    require(!times.empty(), "process law needs at least one time");
    GaussianLaw g(means_at(times), covariance_at(times));
    if (exponentiate)
        return LognormalLaw(std::move(g));
    return g;
}

ProcessModel ProcessModel::from(const GaussianProcess& gp)
{
    ProcessModel p;
    p.name = gp.exponentiate ? "exp_gaussian_process" : "gaussian_process";
    p.law_at = [gp](std::span<const double> times) { return gp.law_at(times); };
    return p;
}

}  // namespace zonoid
