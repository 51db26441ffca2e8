#pragma once

#include <vector>

#include "zonoid/linalg.hpp"

namespace zonoid
{

/// Atom of a discrete Levy measure.
struct LevyAtom
{
    Vector x;
    double mass = 0.0;

    bool operator==(const LevyAtom& other) const
    {
        return mass == other.mass && x == other.x;
    }
};

//---------------------------------------------------------------------------//
/*!
 * Characteristic triplet (A, nu, b) of an infinitely divisible law with a
 * finite, atomic Levy measure. The drift b follows the truncation
 * convention 1{|x| <= 1} in the Levy-Khintchine exponent.
 */
class LevyTriplet
{
public:
    LevyTriplet(Matrix a, std::vector<LevyAtom> nu, Vector b);

    int dim() const { return static_cast<int>(b_.size()); }
    const Matrix& gaussian() const { return a_; }
    const std::vector<LevyAtom>& levy_measure() const { return nu_; }
    const Vector& drift() const { return b_; }

    bool operator==(const LevyTriplet& other) const
    {
        return a_ == other.a_ && nu_ == other.nu_ && b_ == other.b_;
    }

private:
    Matrix a_;
    std::vector<LevyAtom> nu_;
    Vector b_;
};

}  // namespace zonoid
