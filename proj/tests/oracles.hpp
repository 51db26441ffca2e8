#pragma once

// Reference values computed without the library's support-function code:
// direct enumeration, numerical quadrature and textbook closed forms.

#include <cmath>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "zonoid/linalg.hpp"

namespace oracle
{

using zonoid::Matrix;
using zonoid::Vector;

inline double phi(double x)
{
    return boost::math::pdf(boost::math::normal(), x);
}

inline double Phi(double x)
{
    return boost::math::cdf(boost::math::normal(), x);
}

/// E|m + s Z| by adaptive Gauss-Kronrod quadrature over the normal density.
inline double folded_normal_quadrature(double m, double s)
{
    if (s == 0.0)
        return std::abs(m);
    auto f = [&](double z) { return std::abs(m + s * z) * phi(z); };
    using boost::math::quadrature::gauss_kronrod;
    double kink = -m / s;
    double left = gauss_kronrod<double, 61>::integrate(f, -INFINITY, kink, 15, 1e-14);
    double right = gauss_kronrod<double, 61>::integrate(f, kink, INFINITY, 15, 1e-14);
    return left + right;
}

/// E (m + s Z)_+ = s phi(m/s) + m Phi(m/s).
inline double normal_positive_part(double m, double s)
{
    return s * phi(m / s) + m * Phi(m / s);
}

/// sum_i p_i |<u, x_i>| by enumeration.
inline double discrete_abs(const Matrix& atoms, const std::vector<double>& w, const Vector& u)
{
    double s = 0.0;
    for (Eigen::Index i = 0; i < atoms.rows(); ++i)
    {
        double v = 0.0;
        for (Eigen::Index k = 0; k < atoms.cols(); ++k)
            v += u[k] * atoms(i, k);
        s += w[i] * std::abs(v);
    }
    return s;
}

/// sum_i p_i max(0, u_1 x_i1, ..., u_d x_id).
inline double discrete_max(const Matrix& atoms, const std::vector<double>& w, const Vector& u)
{
    double s = 0.0;
    for (Eigen::Index i = 0; i < atoms.rows(); ++i)
    {
        double v = 0.0;
        for (Eigen::Index k = 0; k < atoms.cols(); ++k)
            v = std::max(v, u[k] * atoms(i, k));
        s += w[i] * v;
    }
    return s;
}

/*!
 * E|c_1 eta_1 + c_2 eta_2| for (log eta_1, log eta_2) ~ N(mu, A).
 *
 * Same signs: linear in the means. Opposite signs: exchange-option
 * (Margrabe) formula E(X - Y)_+ = EX Phi(d1) - EY Phi(d2).
 */
inline double lognormal_pair_abs(const Vector& mu, const Matrix& a, double c1, double c2)
{
    double m1 = std::exp(mu[0] + 0.5 * a(0, 0));
    double m2 = std::exp(mu[1] + 0.5 * a(1, 1));
    if (c1 * c2 >= 0.0)
        return std::abs(c1 * m1 + c2 * m2);
    double ex = std::abs(c1) * m1, ey = std::abs(c2) * m2;
    if (c1 < 0.0)
        std::swap(ex, ey);
    double s2 = a(0, 0) + a(1, 1) - 2.0 * a(0, 1);
    if (s2 <= 0.0)
        return std::abs(ex - ey);
    double s = std::sqrt(s2);
    double d1 = (std::log(ex / ey) + 0.5 * s2) / s;
    double call = ex * Phi(d1) - ey * Phi(d1 - s);
    return 2.0 * call - (ex - ey);
}

/// E(<c, eta>)^2 for a lognormal eta.
inline double lognormal_second_moment(const Vector& mu, const Matrix& a, const Vector& c)
{
    double s = 0.0;
    for (Eigen::Index i = 0; i < mu.size(); ++i)
        for (Eigen::Index j = 0; j < mu.size(); ++j)
            s += c[i] * c[j] * std::exp(mu[i] + mu[j] + 0.5 * (a(i, i) + a(j, j) + 2.0 * a(i, j)));
    return s;
}

/// Volume of the unit ball in R^d.
inline double ball_volume(int d)
{
    return std::pow(boost::math::constants::pi<double>(), 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

}  // namespace oracle
