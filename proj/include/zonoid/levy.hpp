#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zonoid/laws.hpp"
#include "zonoid/levy_triplet.hpp"
#include "zonoid/process.hpp"

namespace zonoid
{

/// gamma_ij = a_ii + a_jj - 2 a_ij.
struct Variogram
{
    Matrix gamma;
};

Variogram variogram(const Matrix& a);

/// (d-1) x d matrix with rows e_i - e_d; its kernel is span{(1, ..., 1)}.
Matrix u_matrix(int d);

/// Spatial tolerance for merging pushed-forward atoms.
inline constexpr double kAtomMergeTol = 1e-9;

/*!
 * Image of the tilted measure e^{x_d} nu(dx) under U, restricted to
 * R^{d-1} \ {0}: atoms in ker U are dropped and coincident images merged.
 * Output sorted lexicographically.
 */
std::vector<LevyAtom> tilted_pushforward(const std::vector<LevyAtom>& nu, int d);

/*!
 * b_i + a_ii / 2 + sum_x m (e^{x_i} - 1 - x_i 1{|x| <= 1}), i.e. log E e^{xi_i}.
 * Throws std::range_error when e^{x_i} overflows. `i` is 0-based.
 */
double expectation_condition(const LevyTriplet& t, int i);

/// Pure Gaussian triplet (A, empty, mu) of N(mu, A).
LevyTriplet gaussian_triplet(const GaussianLaw& g);

struct LevyCheckReport
{
    int dim = 0;
    std::optional<bool> variogram_equal;    //!< (a); absent for d = 1
    std::optional<bool> pushforward_equal;  //!< (b); absent for d = 1
    bool expectations_equal = false;        //!< (c)
    double variogram_residual = 0.0;
    double pushforward_residual = 0.0;
    double expectation_residual = 0.0;
    double tol = 0.0;
    bool pass = false;
    std::vector<std::string> failed;  //!< names of failed conditions
};

/// Equivalence of exp(xi) and exp(xi*) from their triplets.
LevyCheckReport check_log_id_equiv(const LevyTriplet& t1, const LevyTriplet& t2, double tol = 1e-9);

struct LognormalCheckReport
{
    double variogram_residual = 0.0;
    double drift_residual = 0.0;  //!< max_i |(mu_i + a_ii/2) - (mu*_i + a*_ii/2)|
    bool variogram_equal = false;
    bool drifts_equal = false;
    bool pass = false;
};

LognormalCheckReport check_lognormal_equiv(const LognormalLaw& l1,
                                           const LognormalLaw& l2,
                                           double tol = 1e-9);

//---------------------------------------------------------------------------//
// Characteristic function at complex arguments
//---------------------------------------------------------------------------//

/// E exp(i <u - i w, xi>) for the infinitely divisible law with triplet t.
std::complex<double> characteristic_function(const LevyTriplet& t, const Vector& u, const Vector& w);

/*!
 * Same for the log-law of a positive law or for xi itself: Gaussian and
 * discrete laws are taken as xi; lognormal and exponentiated infinitely
 * divisible laws contribute their logarithm.
 */
std::complex<double> log_characteristic_function(const LawModel& law, const Vector& u, const Vector& w);

struct CfPoint
{
    Vector u;
    std::complex<double> phi_a;
    std::complex<double> phi_b;
    double abs_diff = 0.0;
};

struct CfCriterionReport
{
    Vector w;
    std::vector<CfPoint> points;
    double max_abs_diff = 0.0;
    double tol = 0.0;
    bool pass = false;
};

/// Random directions with zero coordinate sum (unit norm).
std::vector<Vector> zero_sum_directions(int d, std::size_t count, std::uint64_t seed);

/*!
 * Compares phi(u - i w) of the two log-laws. Every u must satisfy
 * sum u_i = 0 and w must satisfy sum w_k = 1 (both within 1e-12).
 */
CfCriterionReport cf_criterion(const LawModel& a,
                               const LawModel& b,
                               const std::vector<Vector>& us,
                               const Vector& w,
                               double tol = 1e-10);

/// Barycentric weight (1/d, ..., 1/d).
Vector barycentre(int d);

//---------------------------------------------------------------------------//
// Elliptical and location-scale families
//---------------------------------------------------------------------------//

/// (E R E|U_1|)^2 A A^T: determines the centred zonoid of an elliptical law.
Matrix elliptical_zonoid_matrix(const EllipticalLaw& e);

struct EllipticalCheckReport
{
    Matrix m_a;
    Matrix m_b;
    double residual = 0.0;
    bool pass = false;
};

EllipticalCheckReport check_elliptical_equiv(const EllipticalLaw& a,
                                             const EllipticalLaw& b,
                                             double tol = 1e-9);

/// Zonoid data of a scalar law: E xi and E xi_+.
struct LocationScaleData
{
    double mean = 0.0;
    double positive_part_mean = 0.0;
};

/// Exact for a normal base, Monte Carlo otherwise.
LocationScaleData location_scale_data(const LocationScaleLaw& law,
                                      std::size_t samples,
                                      std::uint64_t seed);

struct LocationScaleRecovery
{
    double mu = 0.0;
    double sigma = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int iterations = 0;
    std::size_t samples = 0;
};

/*!
 * mu = E xi; sigma by bisection on sigma -> mean((mu + sigma X)_+) over one
 * frozen, recentred sample of X. Refuses bases with a finite essential
 * infimum or supremum (scale is not identifiable there).
 */
LocationScaleRecovery recover_location_scale(LocationScaleLaw::Base base,
                                             const LocationScaleData& observed,
                                             std::size_t samples,
                                             std::uint64_t seed,
                                             double rel_tol = 1e-10);

//---------------------------------------------------------------------------//
// Brown-Resnick condition
//---------------------------------------------------------------------------//

struct BrownResnickInput
{
    std::vector<double> times;
    std::vector<double> means;
    std::vector<double> variances;
    /// Variogram of the log-process on `times`; used for the lag check.
    std::optional<Matrix> variogram;
    bool increments_asserted = false;
};

struct BrownResnickReport
{
    double constant = 0.0;      //!< grid average of mu_t + sigma_t^2 / 2
    double max_deviation = 0.0;
    bool constant_ok = false;
    std::optional<double> lag_residual;
    bool increments_ok = false;
    bool pass = false;
};

BrownResnickReport brown_resnick_condition(const BrownResnickInput& input, double tol = 1e-9);

/// Input built from a Gaussian log-process on the given times.
BrownResnickInput brown_resnick_input(const GaussianProcess& gp, std::span<const double> times);

}  // namespace zonoid
