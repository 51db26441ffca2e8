#include "zonoid/support.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "zonoid/error.hpp"
#include "zonoid/stats.hpp"

namespace zonoid
{
namespace
{

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

bool normal_location_scale(const LawModel& law)
{
    auto* ls = std::get_if<LocationScaleLaw>(&law);
    return ls && ls->base() == LocationScaleLaw::Base::normal;
}

/// (m, sigma) of <u, xi> for Gaussian-type laws.
std::optional<std::pair<double, double>> gaussian_projection(const LawModel& law, const Vector& u)
{
    if (auto* g = std::get_if<GaussianLaw>(&law))
    {
        double m = g->mean().dot(u);
        double var = u.dot(g->cov() * u);
        return std::make_pair(m, std::sqrt(std::max(0.0, var)));
    }
    if (normal_location_scale(law))
    {
        const auto& ls = std::get<LocationScaleLaw>(law);
        return std::make_pair(u[0] * ls.location(), std::abs(u[0]) * ls.scale());
    }
    return std::nullopt;
}

SupportEstimate exact_estimate(double v)
{
    return SupportEstimate{v, 0.0, 0, true};
}

}  // namespace

std::string to_string(SupportKind kind)
{
    switch (kind)
    {
        case SupportKind::centred:
            return "centred";
        case SupportKind::noncentred:
            return "noncentred";
        case SupportKind::lift:
            return "lift";
        case SupportKind::max:
            return "max";
    }
    return "unknown";
}

double folded_normal_mean(double m, double sigma)
{
    if (!(sigma > 0.0))
        return std::abs(m);
    double t = m / sigma;
    return sigma * std::sqrt(2.0 / std::numbers::pi) * std::exp(-0.5 * t * t)
           + m * std::erf(t / std::numbers::sqrt2);
}

double sphere_abs_coordinate_mean(int k)
{
    require(k >= 1, "sphere dimension must be >= 1");
    double half = 0.5 * static_cast<double>(k);
    return std::exp(std::lgamma(half) - std::lgamma(half + 0.5)) / std::sqrt(std::numbers::pi);
}

bool has_exact_support(const LawModel& law, SupportKind kind)
{
    bool discrete = std::holds_alternative<DiscreteLaw>(law);
    bool gaussian = std::holds_alternative<GaussianLaw>(law) || normal_location_scale(law);
    bool elliptical = std::holds_alternative<EllipticalLaw>(law);
    switch (kind)
    {
        case SupportKind::centred:
        case SupportKind::noncentred:
            return discrete || gaussian || elliptical;
        case SupportKind::lift:
            return discrete || gaussian;
        case SupportKind::max:
            return discrete;
    }
    return false;
}

std::optional<double> exact_support(const LawModel& law,
                                    SupportKind kind,
                                    const Vector& u,
                                    double k)
{
    require(u.size() == dim(law), "direction dimension does not match law");
    if (kind != SupportKind::lift && u.isZero(0.0))
        return 0.0;
    if (kind == SupportKind::lift && u.isZero(0.0))
        return positive_part(k);
    if (!has_exact_support(law, kind))
        return std::nullopt;

    if (auto* l = std::get_if<DiscreteLaw>(&law))
    {
        CompensatedSum s;
        for (std::size_t i = 0; i < l->size(); ++i)
        {
            double p = l->weights()[i];
            if (p == 0.0)
                continue;
            double proj = l->atoms().row(i).dot(u);
            switch (kind)
            {
                case SupportKind::centred:
                    s.add(p * std::abs(proj));
                    break;
                case SupportKind::noncentred:
                    s.add(p * positive_part(proj));
                    break;
                case SupportKind::lift:
                    s.add(p * positive_part(k + proj));
                    break;
                case SupportKind::max: {
                    double m = 0.0;
                    for (int j = 0; j < l->dim(); ++j)
                        m = std::max(m, u[j] * l->atoms()(i, j));
                    s.add(p * m);
                    break;
                }
            }
        }
        return s.value();
    }

    if (auto proj = gaussian_projection(law, u))
    {
        auto [m, sigma] = *proj;
        switch (kind)
        {
            case SupportKind::centred:
                return folded_normal_mean(m, sigma);
            case SupportKind::noncentred:
                return 0.5 * (folded_normal_mean(m, sigma) + m);
            case SupportKind::lift:
                return 0.5 * (folded_normal_mean(k + m, sigma) + k + m);
            case SupportKind::max:
                return std::nullopt;
        }
    }

    if (auto* e = std::get_if<EllipticalLaw>(&law))
    {
        double centred = e->radial_mean() * (e->matrix().transpose() * u).norm()
                         * sphere_abs_coordinate_mean(static_cast<int>(e->matrix().cols()));
        if (kind == SupportKind::centred)
            return centred;
        if (kind == SupportKind::noncentred)
            return 0.5 * centred;
    }
    return std::nullopt;
}

Vector support_terms(const Matrix& draws, SupportKind kind, const Vector& u, double k)
{
    require(u.size() == draws.cols(), "direction dimension does not match draws");
    switch (kind)
    {
        case SupportKind::centred:
            return (draws * u).cwiseAbs();
        case SupportKind::noncentred:
            return (draws * u).cwiseMax(0.0);
        case SupportKind::lift:
            return ((draws * u).array() + k).cwiseMax(0.0).matrix();
        case SupportKind::max: {
            Matrix scaled = draws * u.asDiagonal();
            return scaled.rowwise().maxCoeff().cwiseMax(0.0);
        }
    }
    return {};
}

void check_integrable(const Vector& terms, const std::string& what)
{
    const auto n = static_cast<std::size_t>(terms.size());
    if (n < 1000)
        return;
    std::vector<double> x(terms.data(), terms.data() + n);
    for (auto& v : x)
        v = std::abs(v);
    auto k = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    std::nth_element(x.begin(), x.begin() + (n - k - 1), x.end());
    double threshold = x[n - k - 1];
    if (!(threshold > 0.0))
        return;
    double acc = 0.0;
    std::size_t used = 0;
    for (std::size_t i = n - k; i < n; ++i)
    {
        acc += std::log(x[i] / threshold);
        ++used;
    }
    double hill = acc > 0 ? static_cast<double>(used) / acc : INFINITY;
    if (hill <= 1.1)
    {
        std::ostringstream msg;
        msg << what << ": sample mean does not stabilise (tail index estimate " << hill
            << " <= 1.1); the law looks non-integrable";
        throw DiagnosticError(msg.str());
    }
}

void check_nonnegative_draws(const Matrix& draws, const std::string& what)
{
    if (draws.size() != 0 && draws.minCoeff() < 0.0)
    {
        std::ostringstream msg;
        msg << what << ": sampled negative coordinate " << draws.minCoeff()
            << " for a law required to be positive";
        throw DiagnosticError(msg.str());
    }
}

void require_positive_law(const LawModel& law)
{
    if (auto* l = std::get_if<DiscreteLaw>(&law))
    {
        require(l->is_positive(), "max-zonoid requires atoms in (0, inf)^d");
        return;
    }
    if (std::holds_alternative<GaussianLaw>(law) || std::holds_alternative<EllipticalLaw>(law)
        || std::holds_alternative<LocationScaleLaw>(law))
        throw ConfigError("max-zonoid requires a positive law, got " + type_name(law));
    if (auto* l = std::get_if<InfDivLaw>(&law))
        require(l->exponentiate(), "max-zonoid requires an exponentiated infinitely divisible law");
}

std::vector<SupportEstimate> support_on_grid(const LawModel& law,
                                             SupportKind kind,
                                             const std::vector<Vector>& directions,
                                             const McBudget& budget,
                                             double k)
{
    const int d = dim(law);
    for (const auto& u : directions)
        require(u.size() == d, "direction dimension does not match law");
    if (kind == SupportKind::max)
        require_positive_law(law);

    std::vector<SupportEstimate> out(directions.size());
    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < directions.size(); ++i)
    {
        const auto& u = directions[i];
        bool trivial = u.isZero(0.0);
        if (trivial || !budget.force_mc)
        {
            if (auto v = exact_support(law, kind, u, k))
            {
                out[i] = exact_estimate(*v);
                continue;
            }
        }
        pending.push_back(i);
    }
    if (pending.empty())
        return out;

    require(budget.samples >= 2, "Monte Carlo budget must be >= 2 samples");
    Matrix draws = sample(law, budget.samples, budget.seed);
    if (kind == SupportKind::max)
        check_nonnegative_draws(draws, "support_max");
    const bool custom = std::holds_alternative<CustomLaw>(law);
    for (std::size_t i : pending)
    {
        Vector terms = support_terms(draws, kind, directions[i], k);
        if (custom)
            check_integrable(terms, "support_" + to_string(kind));
        auto ms = mean_se(std::span<const double>(terms.data(), terms.size()));
        out[i] = SupportEstimate{ms.mean, ms.std_error, ms.n, false};
    }
    return out;
}

SupportEstimate support_centred(const LawModel& law, const Vector& u, const McBudget& budget)
{
    return support_on_grid(law, SupportKind::centred, {u}, budget).front();
}

SupportEstimate support_noncentred(const LawModel& law, const Vector& u, const McBudget& budget)
{
    return support_on_grid(law, SupportKind::noncentred, {u}, budget).front();
}

SupportEstimate support_lift(const LawModel& law, double k, const Vector& u, const McBudget& budget)
{
    return support_on_grid(law, SupportKind::lift, {u}, budget, k).front();
}

SupportEstimate support_max(const LawModel& law, const Vector& u, const McBudget& budget)
{
    return support_on_grid(law, SupportKind::max, {u}, budget).front();
}

}  // namespace zonoid
