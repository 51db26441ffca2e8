#include "zonoid/mean_width.hpp"

#include <cmath>
#include <numbers>

#include "zonoid/error.hpp"
#include "zonoid/grid.hpp"
#include "zonoid/stats.hpp"

namespace zonoid
{

SphereQuadrature SphereQuadrature::circle_trapezoid(std::size_t m)
{
    require(m >= 3, "circle quadrature needs >= 3 nodes");
    SphereQuadrature q;
    q.nodes = DirectionGrid::uniform_circle(m).directions();
    q.weights.assign(m, 2.0 * std::numbers::pi / static_cast<double>(m));
    return q;
}

SphereQuadrature SphereQuadrature::fibonacci_sphere(std::size_t m)
{
    require(m >= 4, "sphere quadrature needs >= 4 nodes");
    SphereQuadrature q;
    q.nodes = DirectionGrid::fibonacci(m).directions();
    q.weights.assign(m, 4.0 * std::numbers::pi / static_cast<double>(m));
    return q;
}

SphereQuadrature SphereQuadrature::standard(int d, std::size_t m)
{
    if (d == 2)
        return circle_trapezoid(m == 0 ? 10000 : m);
    if (d == 3)
        return fibonacci_sphere(m == 0 ? 2000 : m);
    throw ConfigError("mean-width quadrature is available for d = 2 and d = 3 only");
}

double unit_ball_volume(int d)
{
    require(d >= 0, "dimension must be >= 0");
    double h = 0.5 * d;
    return std::pow(std::numbers::pi, h) / std::tgamma(h + 1.0);
}

MeanWidthCheck mean_width_check(const LawModel& law,
                                const SphereQuadrature& quadrature,
                                const McBudget& budget)
{
    const int d = dim(law);
    require(d == 2 || d == 3, "mean-width check supports d = 2 and d = 3 only");
    require(!quadrature.nodes.empty() && quadrature.dim() == d,
            "quadrature dimension does not match law");
    require(quadrature.nodes.size() == quadrature.weights.size(),
            "quadrature nodes and weights differ in length");

    const double kd = unit_ball_volume(d);
    const double kd1 = unit_ball_volume(d - 1);
    // b(K) = 2 / (d kappa_d) * integral of h; identity side = integral / (2 kappa_{d-1}).
    const double width_factor = 2.0 / (d * kd);
    const double side_factor = 1.0 / (2.0 * kd1);

    MeanWidthCheck out;
    out.nodes = quadrature.nodes.size();

    const bool exact_h = has_exact_support(law, SupportKind::centred) && !budget.force_mc;
    const auto* discrete = std::get_if<DiscreteLaw>(&law);

    if (exact_h)
    {
        CompensatedSum integral;
        for (std::size_t i = 0; i < quadrature.nodes.size(); ++i)
            integral.add(quadrature.weights[i]
                         * *exact_support(law, SupportKind::centred, quadrature.nodes[i]));
        out.mean_width = width_factor * integral.value();
        out.identity_side = side_factor * integral.value();
        if (discrete)
        {
            CompensatedSum norm;
            for (std::size_t i = 0; i < discrete->size(); ++i)
                norm.add(discrete->weights()[i] * discrete->atoms().row(i).norm());
            out.norm_mean = norm.value();
            out.exact = true;
        }
        else
        {
            Matrix draws = sample(law, budget.samples, budget.seed);
            Vector norms = draws.rowwise().norm();
            auto ms = mean_se(std::span<const double>(norms.data(), norms.size()));
            out.norm_mean = ms.mean;
            out.norm_se = ms.std_error;
            out.difference_se = ms.std_error;
        }
        out.abs_difference = std::abs(out.norm_mean - out.identity_side);
        return out;
    }

    Matrix draws = sample(law, budget.samples, budget.seed);
    const auto n = draws.rows();
    Vector per_draw = Vector::Zero(n);
    for (std::size_t i = 0; i < quadrature.nodes.size(); ++i)
        per_draw += quadrature.weights[i] * (draws * quadrature.nodes[i]).cwiseAbs();
    per_draw *= side_factor;
    Vector norms = draws.rowwise().norm();
    Vector diff = norms - per_draw;

    auto side = mean_se(std::span<const double>(per_draw.data(), n));
    auto norm = mean_se(std::span<const double>(norms.data(), n));
    auto delta = mean_se(std::span<const double>(diff.data(), n));
    out.norm_mean = norm.mean;
    out.norm_se = norm.std_error;
    out.identity_side = side.mean;
    out.identity_se = side.std_error;
    out.mean_width = side.mean * width_factor / side_factor;
    out.abs_difference = std::abs(delta.mean);
    out.difference_se = delta.std_error;
    return out;
}

}  // namespace zonoid
