#include "zonoid/laws.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "zonoid/error.hpp"
#include "zonoid/parallel.hpp"

namespace zonoid
{
namespace
{
constexpr double kWeightSumTol = 1e-12;

// Auxiliary streams (jump counts of infinitely divisible laws) are keyed
// off a tagged seed so that the Gaussian drivers of two laws sampled with
// the same seed stay row-aligned.
constexpr std::uint64_t kAuxTag = 0x5bd1e9955bd1e995ULL;

template<class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template<class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

LawModel wrap(const LawModel& base,
              int out_dim,
              std::string name,
              std::function<void(const double*, double*)> map,
              bool positive)
{
    auto shared = std::make_shared<const LawModel>(base);
    int in_dim = dim(base);
    CustomLaw c;
    c.dim = out_dim;
    c.name = std::move(name);
    c.declared_positive = positive;
    c.draw = [shared, in_dim, map](RngStream& rng, RngStream&, double* row) {
        Vector x = sample_one(*shared, rng);
        (void)in_dim;
        map(x.data(), row);
    };
    return c;
}

void fill_gaussian_rows(const Vector& mean,
                        const Matrix& factor,
                        RngStream& rng,
                        Eigen::Ref<Matrix> out)
{
    const auto rows = out.rows();
    const auto d = out.cols();
    Matrix z(rows, factor.cols());
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < z.cols(); ++j)
            z(i, j) = rng.normal();
    out.noalias() = z * factor.transpose();
    for (Eigen::Index j = 0; j < d; ++j)
        out.col(j).array() += mean[j];
}

void fill_rows(const LawModel& law,
               RngStream& rng,
               RngStream& aux,
               Eigen::Ref<Matrix> out)
{
    const auto rows = out.rows();
    std::visit(
        overloaded{
            [&](const DiscreteLaw& l) {
                for (Eigen::Index i = 0; i < rows; ++i)
                    out.row(i) = l.atoms().row(l.locate(rng.uniform()));
            },
            [&](const GaussianLaw& l) {
                fill_gaussian_rows(l.mean(), l.factor(), rng, out);
            },
            [&](const LognormalLaw& l) {
                fill_gaussian_rows(l.log_law().mean(), l.log_law().factor(), rng, out);
                out = out.array().exp().matrix();
            },
            [&](const EllipticalLaw& l) {
                const auto k = l.matrix().cols();
                Vector z(k);
                for (Eigen::Index i = 0; i < rows; ++i)
                {
                    double norm = 0.0;
                    do
                    {
                        for (Eigen::Index j = 0; j < k; ++j)
                            z[j] = rng.normal();
                        norm = z.norm();
                    } while (norm == 0.0);
                    double r = l.radial().sample(rng);
                    out.row(i) = (r / norm) * (l.matrix() * z).transpose();
                }
            },
            [&](const LocationScaleLaw& l) {
                for (Eigen::Index i = 0; i < rows; ++i)
                    out(i, 0) = l.location()
                                + l.scale() * LocationScaleLaw::sample_base(l.base(), rng);
            },
            [&](const InfDivLaw& l) {
                fill_gaussian_rows(l.shift(), l.factor(), rng, out);
                const auto& nu = l.triplet().levy_measure();
                for (const auto& atom : nu)
                {
                    std::poisson_distribution<long> count(atom.mass);
                    for (Eigen::Index i = 0; i < rows; ++i)
                    {
                        long n = count(aux.engine());
                        if (n != 0)
                            out.row(i) += static_cast<double>(n) * atom.x.transpose();
                    }
                }
                if (l.exponentiate())
                    out = out.array().exp().matrix();
            },
            [&](const CustomLaw& l) {
                require(static_cast<bool>(l.draw), "custom law without sampler");
                Eigen::RowVectorXd row(l.dim);
                for (Eigen::Index i = 0; i < rows; ++i)
                {
                    l.draw(rng, aux, row.data());
                    out.row(i) = row;
                }
            },
        },
        law);
}

}  // namespace

//---------------------------------------------------------------------------//
// DiscreteLaw
//---------------------------------------------------------------------------//

DiscreteLaw::DiscreteLaw(Matrix atoms, std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights))
{
    require(atoms_.rows() >= 1, "discrete law needs at least one atom");
    require(atoms_.cols() >= 1, "discrete law dimension must be >= 1");
    require(static_cast<std::size_t>(atoms_.rows()) == weights_.size(),
            "discrete law: one weight per atom required");
    require(atoms_.allFinite(), "discrete law: non-finite atom");
    double total = 0.0;
    for (double w : weights_)
    {
        require(std::isfinite(w) && w >= 0.0, "discrete law: negative weight");
        total += w;
    }
    require(total > 0.0, "discrete law: weights sum to zero");
    if (std::abs(total - 1.0) > kWeightSumTol)
    {
        std::ostringstream msg;
        msg.precision(17);
        msg << "discrete law: weights sum to " << total << ", expected 1";
        throw ConfigError(msg.str());
    }
    cumulative_.resize(weights_.size());
    std::partial_sum(weights_.begin(), weights_.end(), cumulative_.begin());
}

DiscreteLaw DiscreteLaw::point_mass(const Vector& x)
{
    return DiscreteLaw(Matrix(x.transpose()), {1.0});
}

Vector DiscreteLaw::mean() const
{
    Vector m = Vector::Zero(dim());
    for (std::size_t i = 0; i < size(); ++i)
        m += weights_[i] * atoms_.row(i).transpose();
    return m;
}

bool DiscreteLaw::is_positive() const
{
    for (std::size_t i = 0; i < size(); ++i)
        if (weights_[i] > 0.0 && atoms_.row(i).minCoeff() <= 0.0)
            return false;
    return true;
}

std::size_t DiscreteLaw::locate(double u) const
{
    double target = u * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    std::size_t i = static_cast<std::size_t>(it - cumulative_.begin());
    i = std::min(i, size() - 1);
    // Skip zero-weight atoms sharing the same cumulative value.
    while (weights_[i] == 0.0 && i + 1 < size())
        ++i;
    return i;
}

DiscreteLaw DiscreteLaw::canonical(double tol) const
{
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < size(); ++i)
        if (weights_[i] > 0.0)
            order.push_back(i);
    auto less = [&](std::size_t a, std::size_t b) {
        for (int j = 0; j < dim(); ++j)
        {
            double x = atoms_(a, j), y = atoms_(b, j);
            if (std::abs(x - y) > tol)
                return x < y;
        }
        return false;
    };
    std::stable_sort(order.begin(), order.end(), less);

    std::vector<Vector> merged_atoms;
    std::vector<double> merged_weights;
    for (std::size_t idx : order)
    {
        Vector x = atoms_.row(idx).transpose();
        if (!merged_atoms.empty()
            && (merged_atoms.back() - x).cwiseAbs().maxCoeff() <= tol)
        {
            merged_weights.back() += weights_[idx];
            continue;
        }
        merged_atoms.push_back(x);
        merged_weights.push_back(weights_[idx]);
    }
    Matrix atoms(merged_atoms.size(), dim());
    for (std::size_t i = 0; i < merged_atoms.size(); ++i)
        atoms.row(i) = merged_atoms[i].transpose();
    double total = std::accumulate(merged_weights.begin(), merged_weights.end(), 0.0);
    for (double& w : merged_weights)
        w /= total;
    return DiscreteLaw(std::move(atoms), std::move(merged_weights));
}

//---------------------------------------------------------------------------//
// Gaussian, lognormal
//---------------------------------------------------------------------------//

GaussianLaw::GaussianLaw(Vector mean, Matrix cov)
    : mean_(std::move(mean)), cov_(std::move(cov))
{
    require(mean_.size() >= 1, "gaussian law: dimension must be >= 1");
    require(cov_.rows() == mean_.size() && cov_.cols() == mean_.size(),
            "gaussian law: covariance shape does not match mean");
    require(mean_.allFinite() && cov_.allFinite(), "gaussian law: non-finite parameter");
    require(asymmetry(cov_) <= kSymmetryTol, "gaussian law: covariance is not symmetric");
    factor_ = psd_factor(cov_);
}

Vector LognormalLaw::mean() const
{
    return (log_.mean().array() + 0.5 * log_.cov().diagonal().array()).exp().matrix();
}

//---------------------------------------------------------------------------//
// Elliptical
//---------------------------------------------------------------------------//

void RadialLaw::validate() const
{
    switch (kind)
    {
        case Kind::constant:
            require(value > 0.0 && std::isfinite(value), "radial constant must be > 0");
            break;
        case Kind::chi:
            require(value > 0.0 && std::isfinite(value), "chi degrees of freedom must be > 0");
            break;
        case Kind::exponential:
            require(value > 0.0 && std::isfinite(value), "exponential mean must be > 0");
            break;
        case Kind::uniform:
            require(value >= 0.0 && upper > value && std::isfinite(upper),
                    "uniform radial law needs 0 <= lo < hi");
            break;
    }
}

double RadialLaw::mean() const
{
    switch (kind)
    {
        case Kind::constant:
            return value;
        case Kind::chi:
            return std::sqrt(2.0)
                   * std::exp(std::lgamma(0.5 * (value + 1.0)) - std::lgamma(0.5 * value));
        case Kind::exponential:
            return value;
        case Kind::uniform:
            return 0.5 * (value + upper);
    }
    return value;
}

double RadialLaw::sample(RngStream& rng) const
{
    switch (kind)
    {
        case Kind::constant:
            return value;
        case Kind::chi: {
            std::gamma_distribution<double> g(0.5 * value, 2.0);
            return std::sqrt(g(rng.engine()));
        }
        case Kind::exponential:
            return value * rng.exponential();
        case Kind::uniform:
            return value + (upper - value) * rng.uniform();
    }
    return value;
}

EllipticalLaw::EllipticalLaw(RadialLaw radial, Matrix matrix)
    : radial_(radial), matrix_(std::move(matrix))
{
    radial_.validate();
    require(matrix_.rows() >= 1 && matrix_.cols() >= 1, "elliptical law: empty matrix");
    require(matrix_.allFinite(), "elliptical law: non-finite matrix");
}

//---------------------------------------------------------------------------//
// Location-scale
//---------------------------------------------------------------------------//

LocationScaleLaw::LocationScaleLaw(Base base, double location, double scale)
    : base_(base), location_(location), scale_(scale)
{
    require(std::isfinite(location_), "location must be finite");
    require(scale_ > 0.0 && std::isfinite(scale_), "scale must be > 0");
}

bool LocationScaleLaw::ess_inf_finite() const
{
    return base_ == Base::uniform || base_ == Base::shifted_exponential;
}

bool LocationScaleLaw::ess_sup_finite() const
{
    return base_ == Base::uniform;
}

double LocationScaleLaw::sample_base(Base base, RngStream& rng)
{
    switch (base)
    {
        case Base::normal:
            return rng.normal();
        case Base::uniform:
            return 2.0 * rng.uniform() - 1.0;
        case Base::laplace:
            return rng.sign() * rng.exponential();
        case Base::shifted_exponential:
            return rng.exponential() - 1.0;
    }
    return 0.0;
}

//---------------------------------------------------------------------------//
// Infinitely divisible
//---------------------------------------------------------------------------//

InfDivLaw::InfDivLaw(LevyTriplet triplet, bool exponentiate)
    : triplet_(std::move(triplet)), exponentiate_(exponentiate)
{
    factor_ = psd_factor(triplet_.gaussian());
    shift_ = triplet_.drift();
    for (const auto& atom : triplet_.levy_measure())
        if (atom.x.norm() <= 1.0)
            shift_ -= atom.mass * atom.x;
}

//---------------------------------------------------------------------------//
// Free functions
//---------------------------------------------------------------------------//

int dim(const LawModel& law)
{
    return std::visit(
        overloaded{[](const CustomLaw& l) { return l.dim; },
                   [](const auto& l) { return l.dim(); }},
        law);
}

std::string type_name(const LawModel& law)
{
    return std::visit(overloaded{
                          [](const DiscreteLaw&) { return std::string("discrete"); },
                          [](const GaussianLaw&) { return std::string("gaussian"); },
                          [](const LognormalLaw&) { return std::string("lognormal"); },
                          [](const EllipticalLaw&) { return std::string("elliptical"); },
                          [](const LocationScaleLaw&) { return std::string("location_scale"); },
                          [](const InfDivLaw&) { return std::string("infinitely_divisible"); },
                          [](const CustomLaw& l) { return l.name; },
                      },
                      law);
}

Matrix sample(const LawModel& law, std::size_t n, std::uint64_t seed)
{
    require(n >= 1, "sample count must be >= 1");
    const int d = dim(law);
    Matrix out(n, d);
    const std::size_t chunks = (n + kChunkRows - 1) / kChunkRows;
    parallel_for(chunks, [&](std::size_t c) {
        std::size_t begin = c * kChunkRows;
        std::size_t rows = std::min(kChunkRows, n - begin);
        RngStream rng(seed, c);
        RngStream aux(seed ^ kAuxTag, c);
        Matrix block(rows, d);
        fill_rows(law, rng, aux, block);
        out.middleRows(begin, rows) = block;
    });
    return out;
}

void sample_rows(const LawModel& law, RngStream& rng, Eigen::Ref<Matrix> out)
{
    require(out.cols() == dim(law), "sample_rows: output width != law dimension");
    fill_rows(law, rng, rng, out);
}

Vector sample_one(const LawModel& law, RngStream& rng)
{
    Matrix row(1, dim(law));
    fill_rows(law, rng, rng, row);
    return row.row(0).transpose();
}

bool known_positive(const LawModel& law)
{
    return std::visit(overloaded{
                          [](const DiscreteLaw& l) { return l.is_positive(); },
                          [](const LognormalLaw&) { return true; },
                          [](const InfDivLaw& l) { return l.exponentiate(); },
                          [](const CustomLaw& l) { return l.declared_positive; },
                          [](const auto&) { return false; },
                      },
                      law);
}

std::optional<Vector> exact_mean(const LawModel& law)
{
    return std::visit(
        overloaded{
            [](const DiscreteLaw& l) -> std::optional<Vector> { return l.mean(); },
            [](const GaussianLaw& l) -> std::optional<Vector> { return l.mean(); },
            [](const LognormalLaw& l) -> std::optional<Vector> { return l.mean(); },
            [](const EllipticalLaw& l) -> std::optional<Vector> {
                return Vector::Zero(l.dim());
            },
            [](const LocationScaleLaw& l) -> std::optional<Vector> {
                return Vector::Constant(1, l.location());
            },
            [](const InfDivLaw& l) -> std::optional<Vector> {
                const auto& t = l.triplet();
                Vector m(t.dim());
                for (int i = 0; i < t.dim(); ++i)
                {
                    if (l.exponentiate())
                    {
                        double e = t.drift()[i] + 0.5 * t.gaussian()(i, i);
                        for (const auto& atom : t.levy_measure())
                        {
                            double small = atom.x.norm() <= 1.0 ? atom.x[i] : 0.0;
                            e += atom.mass * (std::exp(atom.x[i]) - 1.0 - small);
                        }
                        m[i] = std::exp(e);
                    }
                    else
                    {
                        double e = t.drift()[i];
                        for (const auto& atom : t.levy_measure())
                            if (atom.x.norm() > 1.0)
                                e += atom.mass * atom.x[i];
                        m[i] = e;
                    }
                }
                return m;
            },
            [](const CustomLaw&) -> std::optional<Vector> { return std::nullopt; },
        },
        law);
}

void validate_permutation(const std::vector<int>& perm, int d)
{
    require(static_cast<int>(perm.size()) == d, "permutation length != dimension");
    std::vector<bool> seen(d, false);
    for (int p : perm)
    {
        require(p >= 0 && p < d && !seen[p], "invalid permutation");
        seen[p] = true;
    }
}

LawModel permute(const LawModel& law, const std::vector<int>& perm)
{
    const int d = dim(law);
    validate_permutation(perm, d);
    Matrix p = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i)
        p(i, perm[i]) = 1.0;

    return std::visit(
        overloaded{
            [&](const DiscreteLaw& l) -> LawModel {
                return DiscreteLaw(l.atoms() * p.transpose(), l.weights());
            },
            [&](const GaussianLaw& l) -> LawModel {
                return GaussianLaw(p * l.mean(), p * l.cov() * p.transpose());
            },
            [&](const LognormalLaw& l) -> LawModel {
                const auto& g = l.log_law();
                return LognormalLaw(GaussianLaw(p * g.mean(), p * g.cov() * p.transpose()));
            },
            [&](const EllipticalLaw& l) -> LawModel {
                return EllipticalLaw(l.radial(), p * l.matrix());
            },
            [&](const InfDivLaw& l) -> LawModel {
                const auto& t = l.triplet();
                std::vector<LevyAtom> nu;
                for (const auto& a : t.levy_measure())
                    nu.push_back({p * a.x, a.mass});
                return InfDivLaw(
                    LevyTriplet(p * t.gaussian() * p.transpose(), nu, p * t.drift()),
                    l.exponentiate());
            },
            [&](const auto&) -> LawModel {
                return wrap(law, d, type_name(law) + "/permuted",
                            [perm, d](const double* in, double* out) {
                                for (int i = 0; i < d; ++i)
                                    out[i] = in[perm[i]];
                            },
                            known_positive(law));
            },
        },
        law);
}

LawModel lift(const LawModel& law)
{
    const int d = dim(law);
    auto pad_matrix = [d](const Matrix& a) {
        Matrix out = Matrix::Zero(d + 1, d + 1);
        out.bottomRightCorner(d, d) = a;
        return out;
    };
    auto pad_vector = [d](const Vector& v, double first) {
        Vector out(d + 1);
        out[0] = first;
        out.tail(d) = v;
        return out;
    };
    return std::visit(
        overloaded{
            [&](const DiscreteLaw& l) -> LawModel {
                Matrix atoms(l.size(), d + 1);
                atoms.col(0).setOnes();
                atoms.rightCols(d) = l.atoms();
                return DiscreteLaw(std::move(atoms), l.weights());
            },
            [&](const GaussianLaw& l) -> LawModel {
                return GaussianLaw(pad_vector(l.mean(), 1.0), pad_matrix(l.cov()));
            },
            [&](const LognormalLaw& l) -> LawModel {
                const auto& g = l.log_law();
                return LognormalLaw(GaussianLaw(pad_vector(g.mean(), 0.0), pad_matrix(g.cov())));
            },
            [&](const InfDivLaw& l) -> LawModel {
                const auto& t = l.triplet();
                std::vector<LevyAtom> nu;
                for (const auto& a : t.levy_measure())
                    nu.push_back({pad_vector(a.x, 0.0), a.mass});
                return InfDivLaw(LevyTriplet(pad_matrix(t.gaussian()), nu,
                                             pad_vector(t.drift(), l.exponentiate() ? 0.0 : 1.0)),
                                 l.exponentiate());
            },
            [&](const auto&) -> LawModel {
                return wrap(law, d + 1, type_name(law) + "/lifted",
                            [d](const double* in, double* out) {
                                out[0] = 1.0;
                                for (int i = 0; i < d; ++i)
                                    out[i + 1] = in[i];
                            },
                            known_positive(law));
            },
        },
        law);
}

LawModel linear_image(const LawModel& law, const Matrix& m)
{
    const int d = dim(law);
    require(m.cols() == d, "linear image: matrix columns != law dimension");
    const int out_dim = static_cast<int>(m.rows());
    return std::visit(
        overloaded{
            [&](const DiscreteLaw& l) -> LawModel {
                return DiscreteLaw(l.atoms() * m.transpose(), l.weights());
            },
            [&](const GaussianLaw& l) -> LawModel {
                Matrix cov = m * l.cov() * m.transpose();
                cov = 0.5 * (cov + cov.transpose());
                return GaussianLaw(m * l.mean(), cov);
            },
            [&](const EllipticalLaw& l) -> LawModel {
                return EllipticalLaw(l.radial(), m * l.matrix());
            },
            [&](const auto&) -> LawModel {
                return wrap(law, out_dim, type_name(law) + "/linear",
                            [m, d, out_dim](const double* in, double* out) {
                                Eigen::Map<const Vector> x(in, d);
                                Eigen::Map<Vector> y(out, out_dim);
                                y = m * x;
                            },
                            false);
            },
        },
        law);
}

}  // namespace zonoid
