#include "zonoid/sequence.hpp"

#include <cmath>

#include "zonoid/error.hpp"

namespace zonoid
{

LognormalSwap LognormalSwap::make(std::vector<double> b)
{
    std::size_t k = b.size();
    return make(std::move(b), k);
}

LognormalSwap LognormalSwap::make(std::vector<double> b, std::size_t truncation)
{
    LognormalSwap m{std::move(b), truncation};
    m.validate();
    return m;
}

void LognormalSwap::validate() const
{
    require(truncation >= 1, "lognormal-swap truncation K must be >= 1");
    require(truncation <= coefficients.size(),
            "lognormal-swap truncation exceeds the number of coefficients");
    for (double v : coefficients)
        require(std::isfinite(v), "lognormal-swap coefficient must be finite");
}

double LognormalSwap::b(std::size_t i) const
{
    return (i >= 1 && i <= truncation) ? coefficients[i - 1] : 0.0;
}

double LognormalSwap::coupling_sq() const
{
    double s = 0.0;
    for (std::size_t k = 0; k < truncation; ++k)
        s += coefficients[k] * coefficients[k];
    return s;
}

double LognormalSwap::discarded_tail() const
{
    double s = 0.0;
    for (std::size_t k = truncation; k < coefficients.size(); ++k)
        s += coefficients[k] * coefficients[k];
    return s;
}

double LognormalSwap::drift(std::size_t i) const
{
    return -0.5 * (1.0 + coupling_sq() + 2.0 * b(i));
}

void validate(const SequenceModel& model)
{
    if (auto* m = std::get_if<LognormalSwap>(&model))
        m->validate();
    if (auto* m = std::get_if<IidSequence>(&model))
        require(dim(m->base) == 1, "iid sequence base law must be scalar");
}

std::uint64_t dacunha_castelle_index(double omega)
{
    require(omega > 0.0 && omega <= 1.0, "omega must lie in (0, 1]");
    auto k = static_cast<std::uint64_t>(std::floor(1.0 / omega));
    if (k < 1)
        k = 1;
    while (k > 1 && omega > 1.0 / static_cast<double>(k))
        --k;
    while (omega <= 1.0 / static_cast<double>(k + 1))
        ++k;
    return k;
}

SequencePath dacunha_castelle_prefix(double omega, std::size_t n)
{
    require(n >= 1, "prefix length must be >= 1");
    SequencePath path;
    path.omega = omega;
    path.values.assign(n, 0.0);
    std::uint64_t k = dacunha_castelle_index(omega);
    if (k <= n)
        path.values[k - 1] = static_cast<double>(k) * static_cast<double>(k + 1);
    return path;
}

SequencePath sequence_prefix(const SequenceModel& model,
                             std::size_t n,
                             std::uint64_t seed,
                             std::uint64_t path_index)
{
    require(n >= 1, "prefix length must be >= 1");
    validate(model);
    RngStream rng(seed, path_index);

    if (std::holds_alternative<DaCunhaCastelle>(model))
        return dacunha_castelle_prefix(rng.uniform_open_left(), n);

    SequencePath path;
    path.values.resize(n);
    if (auto* m = std::get_if<LognormalSwap>(&model))
    {
        const std::size_t k = m->truncation;
        path.drivers.resize(k);
        for (auto& z : path.drivers)
            z = rng.normal();
        double common = 0.0;
        for (std::size_t i = 0; i < k; ++i)
            common += m->coefficients[i] * path.drivers[i];
        for (std::size_t i = 1; i <= n; ++i)
        {
            double z = i <= k ? path.drivers[i - 1] : rng.normal();
            path.values[i - 1] = std::exp(z + common + m->drift(i));
        }
        return path;
    }

    const auto& iid = std::get<IidSequence>(model);
    for (auto& v : path.values)
        v = sample_one(iid.base, rng)[0];
    return path;
}

DiscreteLaw dacunha_castelle_marginal(std::size_t n)
{
    require(n >= 1, "marginal dimension must be >= 1");
    Matrix atoms = Matrix::Zero(n + 1, n);
    std::vector<double> weights(n + 1);
    double used = 0.0;
    for (std::size_t k = 1; k <= n; ++k)
    {
        double kk = static_cast<double>(k);
        atoms(k - 1, k - 1) = kk * (kk + 1.0);
        weights[k - 1] = 1.0 / kk - 1.0 / (kk + 1.0);
        used += weights[k - 1];
    }
    weights[n] = 1.0 - used;  // omega <= 1/(n+1): all zero
    return DiscreteLaw(std::move(atoms), std::move(weights));
}

LognormalLaw lognormal_swap_marginal(const LognormalSwap& model, std::size_t n)
{
    model.validate();
    require(n >= 1, "marginal dimension must be >= 1");
    // xi = (I + 1 b^T restricted) Z: cov = (I + B)(I + B)^T where row i of B
    // is (b_1, ..., b_K, 0, ...) over all drivers Z_1..Z_max(n,K).
    std::size_t m = std::max(n, model.truncation);
    Matrix coef = Matrix::Zero(n, m);
    for (std::size_t i = 0; i < n; ++i)
    {
        coef(i, i) = 1.0;
        for (std::size_t k = 0; k < model.truncation; ++k)
            coef(i, k) += model.coefficients[k];
    }
    Vector mean(n);
    for (std::size_t i = 0; i < n; ++i)
        mean[i] = model.drift(i + 1);
    Matrix cov = coef * coef.transpose();
    cov = 0.5 * (cov + cov.transpose());
    return LognormalLaw(GaussianLaw(mean, cov));
}

}  // namespace zonoid
