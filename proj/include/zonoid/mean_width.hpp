#pragma once

#include <vector>

#include "zonoid/support.hpp"

namespace zonoid
{

/// Nodes and weights approximating integration over the unit sphere.
struct SphereQuadrature
{
    std::vector<Vector> nodes;
    std::vector<double> weights;

    /// Uniform trapezoid rule on the circle: m angles, weights 2 pi / m.
    static SphereQuadrature circle_trapezoid(std::size_t m);

    /// Fibonacci lattice on S^2 with equal weights 4 pi / m.
    static SphereQuadrature fibonacci_sphere(std::size_t m);

    /// Default rule for d in {2, 3}; m = 0 picks 10^4 (d = 2) or 2000 (d = 3).
    static SphereQuadrature standard(int d, std::size_t m = 0);

    int dim() const { return static_cast<int>(nodes.front().size()); }
};

/// Volume of the unit ball in R^d.
double unit_ball_volume(int d);

/*!
 * Both sides of E|xi| = b(Z) d kappa_d / (4 kappa_{d-1}), where b is the mean
 * width of the centred zonoid computed from the quadrature.
 */
struct MeanWidthCheck
{
    double norm_mean = 0.0;      //!< E|xi|
    double norm_se = 0.0;
    double mean_width = 0.0;     //!< b(Z)
    double identity_side = 0.0;  //!< b(Z) d kappa_d / (4 kappa_{d-1})
    double identity_se = 0.0;
    double abs_difference = 0.0;
    double difference_se = 0.0;  //!< SE of the difference (paired when both sides are MC)
    std::size_t nodes = 0;
    bool exact = false;
};

MeanWidthCheck mean_width_check(const LawModel& law,
                                const SphereQuadrature& quadrature,
                                const McBudget& budget = {});

}  // namespace zonoid
