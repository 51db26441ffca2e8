#include "zonoid/grid.hpp"

#include <cmath>
#include <numbers>

#include "zonoid/error.hpp"
#include "zonoid/rng.hpp"

namespace zonoid
{
namespace
{
constexpr double kUnitTol = 1e-12;
constexpr double kDuplicateTol = 1e-12;

bool contains(const std::vector<Vector>& dirs, const Vector& v)
{
    for (const auto& w : dirs)
        if ((w - v).cwiseAbs().maxCoeff() <= kDuplicateTol)
            return true;
    return false;
}
}  // namespace

DirectionGrid::DirectionGrid(std::vector<Vector> directions, Construction construction)
    : directions_(std::move(directions)), construction_(construction)
{
    require(!directions_.empty(), "direction grid must be non-empty");
    const auto d = directions_.front().size();
    require(d >= 1, "direction grid dimension must be >= 1");
    for (const auto& v : directions_)
    {
        require(v.size() == d, "direction grid: mixed dimensions");
        require(std::abs(v.norm() - 1.0) <= kUnitTol, "direction grid: vector is not unit length");
    }
}

DirectionGrid DirectionGrid::user_supplied(std::vector<Vector> directions)
{
    for (auto& v : directions)
    {
        double n = v.norm();
        require(n > 0.0 && std::isfinite(n), "direction grid: zero or non-finite direction");
        v /= n;
    }
    return DirectionGrid(std::move(directions), Construction::user_supplied);
}

DirectionGrid DirectionGrid::uniform_circle(std::size_t m)
{
    require(m >= 1, "grid size must be >= 1");
    std::vector<Vector> dirs;
    dirs.reserve(m);
    for (std::size_t k = 0; k < m; ++k)
    {
        double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
        Vector v(2);
        v << std::cos(theta), std::sin(theta);
        dirs.push_back(v / v.norm());
    }
    return DirectionGrid(std::move(dirs), Construction::uniform_circle);
}

DirectionGrid DirectionGrid::uniform_sphere(int d, std::size_t m, std::uint64_t seed)
{
    require(d >= 1 && m >= 1, "grid dimension and size must be >= 1");
    RngStream rng(seed, 0x6772696400ULL);
    std::vector<Vector> dirs;
    dirs.reserve(m);
    while (dirs.size() < m)
    {
        Vector v(d);
        for (int i = 0; i < d; ++i)
            v[i] = rng.normal();
        double n = v.norm();
        if (n > 1e-12)
            dirs.push_back(v / n);
    }
    return DirectionGrid(std::move(dirs), Construction::uniform_sphere);
}

DirectionGrid DirectionGrid::fibonacci(std::size_t m)
{
    require(m >= 2, "Fibonacci lattice needs >= 2 points");
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    std::vector<Vector> dirs;
    dirs.reserve(m);
    for (std::size_t k = 0; k < m; ++k)
    {
        double z = 1.0 - (2.0 * static_cast<double>(k) + 1.0) / static_cast<double>(m);
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        double phi = golden * static_cast<double>(k);
        Vector v(3);
        v << r * std::cos(phi), r * std::sin(phi), z;
        dirs.push_back(v / v.norm());
    }
    return DirectionGrid(std::move(dirs), Construction::fibonacci);
}

DirectionGrid DirectionGrid::axis_and_diagonals(int d)
{
    require(d >= 1, "grid dimension must be >= 1");
    std::vector<Vector> dirs;
    auto add = [&dirs](Vector v) {
        v /= v.norm();
        if (!contains(dirs, v))
            dirs.push_back(std::move(v));
    };
    for (int i = 0; i < d; ++i)
    {
        add(Vector::Unit(d, i));
        add(-Vector::Unit(d, i));
    }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            for (double si : {1.0, -1.0})
                for (double sj : {1.0, -1.0})
                    add(si * Vector::Unit(d, i) + sj * Vector::Unit(d, j));
    if (d > 2)
    {
        add(Vector::Ones(d));
        add(-Vector::Ones(d));
    }
    return DirectionGrid(std::move(dirs), Construction::axis_and_diagonals);
}

DirectionGrid DirectionGrid::standard(int d, std::size_t m, std::uint64_t seed)
{
    require(d >= 1, "grid dimension must be >= 1");
    DirectionGrid base = [&] {
        if (d == 1)
            return DirectionGrid({Vector::Ones(1), -Vector::Ones(1)}, Construction::uniform_circle);
        if (d == 2)
            return uniform_circle(m == 0 ? 64 : m);
        if (d == 3)
            return fibonacci(m == 0 ? 256 : m);
        return uniform_sphere(d, m == 0 ? 64 * static_cast<std::size_t>(d) : m, seed);
    }();
    return base.merged(axis_and_diagonals(d));
}

DirectionGrid DirectionGrid::merged(const DirectionGrid& other) const
{
    require(other.dim() == dim(), "cannot merge grids of different dimension");
    std::vector<Vector> dirs = directions_;
    for (const auto& v : other.directions_)
        if (!contains(dirs, v))
            dirs.push_back(v);
    return DirectionGrid(std::move(dirs), Construction::combined);
}

std::string to_string(DirectionGrid::Construction c)
{
    switch (c)
    {
        case DirectionGrid::Construction::uniform_circle:
            return "uniform_circle";
        case DirectionGrid::Construction::uniform_sphere:
            return "uniform_sphere";
        case DirectionGrid::Construction::fibonacci:
            return "fibonacci";
        case DirectionGrid::Construction::axis_and_diagonals:
            return "axis_and_diagonals";
        case DirectionGrid::Construction::user_supplied:
            return "user_supplied";
        case DirectionGrid::Construction::combined:
            return "combined";
    }
    return "unknown";
}

}  // namespace zonoid
