#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "zonoid/levy_triplet.hpp"
#include "zonoid/linalg.hpp"
#include "zonoid/rng.hpp"

namespace zonoid
{

//---------------------------------------------------------------------------//
/*!
 * Finitely supported law: atoms (one per row) with probabilities.
 *
 * Weights must be non-negative and sum to one within 1e-12.
 */
class DiscreteLaw
{
public:
    DiscreteLaw(Matrix atoms, std::vector<double> weights);

    static DiscreteLaw point_mass(const Vector& x);

    int dim() const { return static_cast<int>(atoms_.cols()); }
    std::size_t size() const { return weights_.size(); }
    const Matrix& atoms() const { return atoms_; }
    Vector atom(std::size_t i) const { return atoms_.row(i).transpose(); }
    const std::vector<double>& weights() const { return weights_; }

    Vector mean() const;

    /// True if every coordinate of every atom with positive weight is > 0.
    bool is_positive() const;

    /// Coincident atoms (within tol, coordinatewise) merged, zero-weight
    /// atoms dropped, sorted lexicographically.
    DiscreteLaw canonical(double tol = 1e-9) const;

    /// Row index for a uniform draw in [0, 1).
    std::size_t locate(double u) const;

    bool operator==(const DiscreteLaw& other) const
    {
        return atoms_ == other.atoms_ && weights_ == other.weights_;
    }

private:
    Matrix atoms_;
    std::vector<double> weights_;
    std::vector<double> cumulative_;
};

//---------------------------------------------------------------------------//
/*!
 * Multivariate normal N(mean, cov). The covariance is validated as
 * symmetric (1e-12) and PSD (eigenvalues >= -1e-10) and factored once.
 */
class GaussianLaw
{
public:
    GaussianLaw(Vector mean, Matrix cov);

    int dim() const { return static_cast<int>(mean_.size()); }
    const Vector& mean() const { return mean_; }
    const Matrix& cov() const { return cov_; }
    const Matrix& factor() const { return factor_; }

    bool operator==(const GaussianLaw& other) const
    {
        return mean_ == other.mean_ && cov_ == other.cov_;
    }

private:
    Vector mean_;
    Matrix cov_;
    Matrix factor_;
};

/// eta = exp(xi) componentwise, xi Gaussian.
class LognormalLaw
{
public:
    explicit LognormalLaw(GaussianLaw log_law) : log_(std::move(log_law)) {}

    int dim() const { return log_.dim(); }
    const GaussianLaw& log_law() const { return log_; }

    /// E eta_i = exp(mu_i + a_ii / 2).
    Vector mean() const;

    bool operator==(const LognormalLaw& other) const { return log_ == other.log_; }

private:
    GaussianLaw log_;
};

//---------------------------------------------------------------------------//
/// Positive scalar radial variable R of an elliptical law.
struct RadialLaw
{
    enum class Kind
    {
        constant,     //!< R = value
        chi,          //!< R ~ chi with `value` degrees of freedom
        exponential,  //!< R ~ Exp with mean `value`
        uniform,      //!< R ~ U[value, upper]
    };

    Kind kind = Kind::constant;
    double value = 1.0;
    double upper = 0.0;

    static RadialLaw constant(double r) { return {Kind::constant, r, 0.0}; }
    static RadialLaw chi(double dof) { return {Kind::chi, dof, 0.0}; }
    static RadialLaw exponential(double m) { return {Kind::exponential, m, 0.0}; }
    static RadialLaw uniform(double lo, double hi) { return {Kind::uniform, lo, hi}; }

    double mean() const;
    double sample(RngStream& rng) const;
    void validate() const;

    bool operator==(const RadialLaw&) const = default;
};

/// xi = R * A * U with U uniform on the unit sphere of R^{cols(A)}.
class EllipticalLaw
{
public:
    EllipticalLaw(RadialLaw radial, Matrix matrix);

    int dim() const { return static_cast<int>(matrix_.rows()); }
    const RadialLaw& radial() const { return radial_; }
    const Matrix& matrix() const { return matrix_; }
    double radial_mean() const { return radial_.mean(); }

    bool operator==(const EllipticalLaw& other) const
    {
        return radial_ == other.radial_ && matrix_ == other.matrix_;
    }

private:
    RadialLaw radial_;
    Matrix matrix_;
};

//---------------------------------------------------------------------------//
/// Scalar law mu + sigma * X with a zero-mean base X.
class LocationScaleLaw
{
public:
    enum class Base
    {
        normal,              //!< N(0,1)
        uniform,             //!< U[-1, 1]
        laplace,             //!< Laplace(0, 1)
        shifted_exponential  //!< Exp(1) - 1
    };

    LocationScaleLaw(Base base, double location, double scale);

    int dim() const { return 1; }
    Base base() const { return base_; }
    double location() const { return location_; }
    double scale() const { return scale_; }

    bool ess_inf_finite() const;
    bool ess_sup_finite() const;

    static double sample_base(Base base, RngStream& rng);

    bool operator==(const LocationScaleLaw&) const = default;

private:
    Base base_;
    double location_;
    double scale_;
};

//---------------------------------------------------------------------------//
/*!
 * Infinitely divisible law with finite atomic Levy measure, optionally
 * exponentiated. Sampled exactly as Gaussian + compensated compound Poisson.
 */
class InfDivLaw
{
public:
    InfDivLaw(LevyTriplet triplet, bool exponentiate);

    int dim() const { return triplet_.dim(); }
    const LevyTriplet& triplet() const { return triplet_; }
    bool exponentiate() const { return exponentiate_; }
    const Matrix& factor() const { return factor_; }
    /// b minus the compensator of the small atoms.
    const Vector& shift() const { return shift_; }

    bool operator==(const InfDivLaw& other) const
    {
        return exponentiate_ == other.exponentiate_ && triplet_ == other.triplet_;
    }

private:
    LevyTriplet triplet_;
    bool exponentiate_;
    Matrix factor_;
    Vector shift_;
};

//---------------------------------------------------------------------------//
/// Law given only through a sampler; always evaluated by Monte Carlo.
struct CustomLaw
{
    using Draw = std::function<void(RngStream&, RngStream&, double* row)>;

    int dim = 1;
    Draw draw;
    std::string name = "custom";
    bool declared_positive = false;
    bool declared_symmetric = false;

    bool operator==(const CustomLaw& other) const
    {
        return dim == other.dim && name == other.name;
    }
};

using LawModel = std::variant<DiscreteLaw,
                              GaussianLaw,
                              LognormalLaw,
                              EllipticalLaw,
                              LocationScaleLaw,
                              InfDivLaw,
                              CustomLaw>;

int dim(const LawModel& law);
std::string type_name(const LawModel& law);

/// n draws (one per row). Row chunks of kChunkRows use stream (seed, chunk).
Matrix sample(const LawModel& law, std::size_t n, std::uint64_t seed);

/// Fill `out` row by row from one stream (used for per-path sampling).
void sample_rows(const LawModel& law, RngStream& rng, Eigen::Ref<Matrix> out);

/// Draw one vector.
Vector sample_one(const LawModel& law, RngStream& rng);

/// True when the law is known to live in (0, inf)^d.
bool known_positive(const LawModel& law);

/// Closed-form mean where available.
std::optional<Vector> exact_mean(const LawModel& law);

/// Law of the coordinate permutation (pi xi)_i = xi_{perm[i]}.
LawModel permute(const LawModel& law, const std::vector<int>& perm);

/// Law of the lifted vector (1, xi) in R^{d+1}.
LawModel lift(const LawModel& law);

/// Law of M xi.
LawModel linear_image(const LawModel& law, const Matrix& m);

void validate_permutation(const std::vector<int>& perm, int d);

}  // namespace zonoid
