#pragma once

#include <functional>
#include <span>
#include <string>

#include "zonoid/laws.hpp"

namespace zonoid
{

/// Covariance kernels for Gaussian processes indexed by t in R.
struct CovarianceKernel
{
    enum class Kind
    {
        brownian,  //!< two-sided Brownian motion, W_0 = 0, scaled by `scale`
        fbm,       //!< fractional Brownian motion with Hurst index `hurst`
        constant,  //!< xi_t = Z for all t, variance `scale`
    };
    Kind kind = Kind::brownian;
    double scale = 1.0;
    double hurst = 0.5;

    double operator()(double s, double t) const;
    double variance(double t) const { return (*this)(t, t); }
    void validate() const;

    bool operator==(const CovarianceKernel&) const = default;
};

/// Mean functions mu_t.
struct MeanFunction
{
    enum class Kind
    {
        constant,           //!< mu_t = offset
        linear_abs,         //!< mu_t = offset + slope * |t|
        neg_half_variance,  //!< mu_t = offset - sigma_t^2 / 2
    };
    Kind kind = Kind::constant;
    double offset = 0.0;
    double slope = 0.0;

    double operator()(double t, double variance) const;

    bool operator==(const MeanFunction&) const = default;
};

/*!
 * Gaussian process xi_t, optionally exponentiated to the positive process
 * exp(xi_t). Finite-dimensional laws are Gaussian (resp. lognormal).
 */
struct GaussianProcess
{
    MeanFunction mean;
    CovarianceKernel kernel;
    bool exponentiate = true;

    LawModel law_at(std::span<const double> times) const;
    Vector means_at(std::span<const double> times) const;
    Matrix covariance_at(std::span<const double> times) const;

    bool operator==(const GaussianProcess&) const = default;
};

/// Generic process: finite-dimensional law at any finite time set.
struct ProcessModel
{
    std::function<LawModel(std::span<const double>)> law_at;
    std::string name = "process";

    static ProcessModel from(const GaussianProcess& gp);
};

}  // namespace zonoid
