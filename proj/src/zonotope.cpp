#include "zonoid/zonotope.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zonoid/error.hpp"

namespace zonoid
{
namespace
{
constexpr double kAngleTol = 1e-10;

double angle_of(const Vector& g)
{
    double a = std::atan2(g[1], g[0]);
    if (a < 0.0)
        a += std::numbers::pi;
    if (a >= std::numbers::pi)
        a -= std::numbers::pi;
    return a;
}
}  // namespace

Zonotope2D::Zonotope2D(std::vector<Vector> generators)
{
    struct Item
    {
        double angle;
        Vector g;
    };
    std::vector<Item> items;
    for (auto& g : generators)
    {
        require(g.size() == 2, "zonotope generators must be planar");
        if (g.isZero(0.0))
            continue;
        // Orient every generator into the half-plane of angles [0, pi).
        if (g[1] < 0.0 || (g[1] == 0.0 && g[0] < 0.0))
            g = -g;
        items.push_back({angle_of(g), g});
    }
    std::sort(items.begin(), items.end(),
              [](const Item& a, const Item& b) { return a.angle < b.angle; });

    for (const auto& it : items)
    {
        if (!generators_.empty())
        {
            double last = angle_of(generators_.back());
            if (std::abs(it.angle - last) <= kAngleTol)
            {
                generators_.back() += it.g;
                continue;
            }
        }
        generators_.push_back(it.g);
    }
    // Wrap-around: angles near pi are collinear with angles near 0.
    if (generators_.size() >= 2
        && std::numbers::pi - angle_of(generators_.back()) + angle_of(generators_.front())
               <= kAngleTol)
    {
        generators_.front() -= generators_.back();
        generators_.pop_back();
    }

    if (generators_.empty())
    {
        vertices_.push_back(Vector::Zero(2));
        return;
    }
    Vector v = Vector::Zero(2);
    for (const auto& g : generators_)
        v -= g;
    for (const auto& g : generators_)
    {
        vertices_.push_back(v);
        v += 2.0 * g;
    }
    for (const auto& g : generators_)
    {
        vertices_.push_back(v);
        v -= 2.0 * g;
    }
}

double Zonotope2D::support(const Vector& u) const
{
    double s = 0.0;
    for (const auto& g : generators_)
        s += std::abs(u.dot(g));
    return s;
}

double Zonotope2D::vertex_support(const Vector& u) const
{
    double s = -INFINITY;
    for (const auto& v : vertices_)
        s = std::max(s, u.dot(v));
    return s;
}

double Zonotope2D::area() const
{
    double a = 0.0;
    const auto n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i)
    {
        const auto& p = vertices_[i];
        const auto& q = vertices_[(i + 1) % n];
        a += p[0] * q[1] - p[1] * q[0];
    }
    return 0.5 * a;
}

Zonotope2D zonotope_2d(const DiscreteLaw& law)
{
    require(law.dim() == 2, "zonotope_2d requires a planar law");
    require(law.size() >= 1, "zonotope_2d requires at least one atom");
    std::vector<Vector> gens;
    for (std::size_t i = 0; i < law.size(); ++i)
        gens.push_back(law.weights()[i] * law.atom(i));
    return Zonotope2D(std::move(gens));
}

}  // namespace zonoid
