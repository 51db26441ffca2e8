#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "zonoid/grid.hpp"
#include "zonoid/laws.hpp"

namespace zonoid
{

/// Monte Carlo budget. Exact closed forms are used whenever available
/// unless `force_mc` is set.
struct McBudget
{
    std::size_t samples = 100000;
    std::uint64_t seed = 0;
    bool force_mc = false;
};

/// Estimate of one support-function value; std_error == 0 iff exact.
struct SupportEstimate
{
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
    bool exact = false;
};

enum class SupportKind
{
    centred,     //!< E|<u, xi>|
    noncentred,  //!< E<u, xi>_+
    lift,        //!< E(k + <u, xi>)_+
    max,         //!< E max(0, u_1 xi_1, ..., u_d xi_d)
};

std::string to_string(SupportKind kind);

/// E|m + sigma Z| for standard normal Z; sigma = 0 gives |m|.
double folded_normal_mean(double m, double sigma);

/// E|U_1| for U uniform on the unit sphere in R^k.
double sphere_abs_coordinate_mean(int k);

/// Closed-form value, or nullopt when only Monte Carlo applies.
std::optional<double> exact_support(const LawModel& law,
                                    SupportKind kind,
                                    const Vector& u,
                                    double k = 0.0);

/// Per-draw integrand of the support function, one entry per row of draws.
Vector support_terms(const Matrix& draws, SupportKind kind, const Vector& u, double k = 0.0);

/*!
 * Throws DiagnosticError when the sample looks non-integrable (Hill tail
 * index of |terms| at or below 1.1 on the top sqrt(n) order statistics).
 */
void check_integrable(const Vector& terms, const std::string& what);

/// Throws DiagnosticError if any sampled coordinate is negative.
void check_nonnegative_draws(const Matrix& draws, const std::string& what);

/// Rejects laws that cannot be supported on (0, inf)^d for max-zonoids.
void require_positive_law(const LawModel& law);

SupportEstimate support_centred(const LawModel& law, const Vector& u, const McBudget& budget);
SupportEstimate support_noncentred(const LawModel& law, const Vector& u, const McBudget& budget);
SupportEstimate support_lift(const LawModel& law, double k, const Vector& u, const McBudget& budget);
SupportEstimate support_max(const LawModel& law, const Vector& u, const McBudget& budget);

/*!
 * Support values over a set of directions. Monte Carlo paths reuse one
 * sample matrix across all directions (common random numbers).
 */
std::vector<SupportEstimate> support_on_grid(const LawModel& law,
                                             SupportKind kind,
                                             const std::vector<Vector>& directions,
                                             const McBudget& budget,
                                             double k = 0.0);

/// True when every direction of this kind has a closed form for the law.
bool has_exact_support(const LawModel& law, SupportKind kind);

}  // namespace zonoid
