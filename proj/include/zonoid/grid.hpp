#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zonoid/linalg.hpp"

namespace zonoid
{

//---------------------------------------------------------------------------//
/*!
 * Finite non-empty set of unit vectors over which support functions are
 * compared. Every direction has Euclidean norm 1 within 1e-12.
 */
class DirectionGrid
{
public:
    enum class Construction
    {
        uniform_circle,      //!< equally spaced angles, d = 2
        uniform_sphere,      //!< normalised Gaussian draws
        fibonacci,           //!< Fibonacci lattice, d = 3
        axis_and_diagonals,  //!< +-e_i, (+-e_i +- e_j)/sqrt2, (1,..,1)/sqrt d
        user_supplied,
        combined,
    };

    DirectionGrid(std::vector<Vector> directions, Construction construction);

    /// Normalises each (non-zero) vector first.
    static DirectionGrid user_supplied(std::vector<Vector> directions);
    static DirectionGrid uniform_circle(std::size_t m);
    static DirectionGrid uniform_sphere(int d, std::size_t m, std::uint64_t seed);
    static DirectionGrid fibonacci(std::size_t m);
    static DirectionGrid axis_and_diagonals(int d);

    /*!
     * Default comparison grid: 64 equally spaced directions for d = 2, a
     * 256-point Fibonacci lattice for d = 3, `m` random directions
     * otherwise (m = 0 picks the per-dimension default), with the
     * axis-and-diagonal set always appended.
     */
    static DirectionGrid standard(int d, std::size_t m = 0, std::uint64_t seed = 0);

    /// Union with duplicates (within 1e-12) removed.
    DirectionGrid merged(const DirectionGrid& other) const;

    int dim() const { return static_cast<int>(directions_.front().size()); }
    std::size_t size() const { return directions_.size(); }
    const std::vector<Vector>& directions() const { return directions_; }
    const Vector& operator[](std::size_t i) const { return directions_[i]; }
    Construction construction() const { return construction_; }
    auto begin() const { return directions_.begin(); }
    auto end() const { return directions_.end(); }

private:
    std::vector<Vector> directions_;
    Construction construction_;
};

std::string to_string(DirectionGrid::Construction c);

}  // namespace zonoid
