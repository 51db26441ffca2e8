#pragma once

#include <vector>

#include "zonoid/laws.hpp"

namespace zonoid
{

//---------------------------------------------------------------------------//
/*!
 * Centred zonoid of a discrete law in the plane: the Minkowski sum of the
 * segments [-p_i x_i, p_i x_i]. Vertices run counterclockwise.
 */
class Zonotope2D
{
public:
    /// Generators g_i = p_i x_i; zero generators are ignored.
    explicit Zonotope2D(std::vector<Vector> generators);

    const std::vector<Vector>& generators() const { return generators_; }
    const std::vector<Vector>& vertices() const { return vertices_; }

    /// sum_i |<u, g_i>| over the merged generators.
    double support(const Vector& u) const;

    /// max_v <u, v> over the vertex list.
    double vertex_support(const Vector& u) const;

    double area() const;

private:
    std::vector<Vector> generators_;
    std::vector<Vector> vertices_;
};

Zonotope2D zonotope_2d(const DiscreteLaw& law);

}  // namespace zonoid
