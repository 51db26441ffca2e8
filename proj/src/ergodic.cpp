#include "zonoid/ergodic.hpp"

#include <algorithm>
#include <cmath>

#include "zonoid/error.hpp"
#include "zonoid/parallel.hpp"
#include "zonoid/rng.hpp"
#include "zonoid/stats.hpp"

namespace zonoid
{
namespace
{
void validate_checkpoints(const std::vector<std::size_t>& checkpoints)
{
    require(!checkpoints.empty(), "need at least one checkpoint");
    require(checkpoints.front() >= 1, "checkpoints must be >= 1");
    for (std::size_t i = 1; i < checkpoints.size(); ++i)
        require(checkpoints[i] > checkpoints[i - 1], "checkpoints must be strictly increasing");
}
}  // namespace

std::vector<std::size_t> default_checkpoints()
{
    return {100, 1000, 10000, 100000};
}

std::optional<double> oracle_limit(const SequenceModel& model, const SequencePath& path)
{
    if (std::holds_alternative<DaCunhaCastelle>(model))
        return 0.0;
    if (auto* m = std::get_if<LognormalSwap>(&model))
    {
        require(path.drivers.size() == m->truncation, "path does not carry the Gaussian drivers");
        double common = 0.0;
        for (std::size_t k = 0; k < m->truncation; ++k)
            common += m->coefficients[k] * path.drivers[k];
        return std::exp(common - 0.5 * m->coupling_sq());
    }
    const auto& iid = std::get<IidSequence>(model);
    if (auto mean = exact_mean(iid.base))
        return (*mean)[0];
    return std::nullopt;
}

ErgodicRun run_averages(const SequenceModel& model,
                        const std::vector<std::size_t>& checkpoints,
                        std::size_t paths,
                        std::uint64_t seed)
{
    validate(model);
    validate_checkpoints(checkpoints);
    require(paths >= 1, "need at least one path");

    ErgodicRun run;
    run.model = model;
    run.checkpoints = checkpoints;
    run.seed = seed;
    run.paths.resize(paths);
    const std::size_t n_max = checkpoints.back();

    parallel_for(paths, [&](std::size_t p) {
        ErgodicPath& rec = run.paths[p];
        rec.index = p;
        rec.averages.reserve(checkpoints.size());
        RngStream rng(seed, p);

        if (std::holds_alternative<DaCunhaCastelle>(model))
        {
            // The prefix has a single non-zero entry k(k+1) at k = k(omega).
            double omega = rng.uniform_open_left();
            auto k = dacunha_castelle_index(omega);
            double value = static_cast<double>(k) * static_cast<double>(k + 1);
            for (auto n : checkpoints)
                rec.averages.push_back(n >= k ? value / static_cast<double>(n) : 0.0);
            rec.omega = omega;
            rec.oracle = 0.0;
            return;
        }

        SequencePath state;
        std::function<double(std::size_t)> next;
        if (auto* m = std::get_if<LognormalSwap>(&model))
        {
            state.drivers.resize(m->truncation);
            for (auto& z : state.drivers)
                z = rng.normal();
            double common = 0.0;
            for (std::size_t k = 0; k < m->truncation; ++k)
                common += m->coefficients[k] * state.drivers[k];
            next = [&, m, common](std::size_t i) {
                double z = i <= m->truncation ? state.drivers[i - 1] : rng.normal();
                return std::exp(z + common + m->drift(i));
            };
        }
        else
        {
            const auto& iid = std::get<IidSequence>(model);
            next = [&](std::size_t) { return sample_one(iid.base, rng)[0]; };
        }

        CompensatedSum sum;
        std::size_t c = 0;
        for (std::size_t i = 1; i <= n_max; ++i)
        {
            sum.add(next(i));
            if (i == checkpoints[c])
            {
                rec.averages.push_back(sum.value() / static_cast<double>(i));
                ++c;
            }
        }
        rec.oracle = oracle_limit(model, state);
    });
    run.has_oracle = std::all_of(run.paths.begin(), run.paths.end(),
                                 [](const ErgodicPath& p) { return p.oracle.has_value(); });
    return run;
}

L1Diagnostic l1_diagnostic(const ErgodicRun& run)
{
    require(run.has_oracle, "model has no closed-form limit; use the Cauchy diagnostic");
    L1Diagnostic out;
    out.checkpoints = run.checkpoints;
    const std::size_t paths = run.paths.size();
    for (std::size_t c = 0; c < run.checkpoints.size(); ++c)
    {
        std::vector<double> err(paths), avg(paths);
        for (std::size_t p = 0; p < paths; ++p)
        {
            avg[p] = run.paths[p].averages[c];
            err[p] = std::abs(avg[p] - *run.paths[p].oracle);
        }
        auto e = mean_se(err);
        auto a = mean_se(avg);
        out.mean_abs_error.push_back(e.mean);
        out.mean_abs_error_se.push_back(e.std_error);
        out.median_abs_error.push_back(median(err));
        out.mean_average.push_back(a.mean);
        out.mean_average_se.push_back(a.std_error);
        out.median_average.push_back(median(avg));
    }
    return out;
}

CauchyDiagnostic cauchy_diagnostic(const SequenceModel& model,
                                   const std::vector<std::size_t>& n,
                                   std::size_t paths,
                                   std::uint64_t seed)
{
    validate_checkpoints(n);
    std::vector<std::size_t> all;
    for (auto v : n)
    {
        all.push_back(v);
        all.push_back(2 * v);
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    auto run = run_averages(model, all, paths, seed);
    auto position = [&](std::size_t v) {
        return static_cast<std::size_t>(std::find(all.begin(), all.end(), v) - all.begin());
    };

    CauchyDiagnostic out;
    out.n = n;
    for (auto v : n)
    {
        auto i = position(v), j = position(2 * v);
        std::vector<double> inc(paths);
        for (std::size_t p = 0; p < paths; ++p)
            inc[p] = std::abs(run.paths[p].averages[j] - run.paths[p].averages[i]);
        out.median_increment.push_back(median(inc));
    }
    out.decreasing = true;
    for (std::size_t i = 1; i < out.median_increment.size(); ++i)
        out.decreasing = out.decreasing && out.median_increment[i] <= out.median_increment[i - 1];
    return out;
}

LimitFormulaReport limit_formula_check(const LognormalSwap& model,
                                       std::size_t paths,
                                       std::size_t n,
                                       std::uint64_t seed)
{
    model.validate();
    require(paths >= 1, "need at least one path");
    require(n >= 2, "prefix length must be >= 2");
    SequenceModel sm = model;
    LimitFormulaReport out;
    out.n = n;
    out.paths.resize(paths);
    const double b1 = model.b(1);

    parallel_for(paths, [&](std::size_t p) {
        auto path = sequence_prefix(sm, n, seed, p);
        auto& rec = out.paths[p];
        const double z1 = path.drivers[0];
        rec.drivers = path.drivers;
        rec.eta1 = path.values[0];
        rec.cond_eta1 = std::exp((1.0 + b1) * z1) * std::exp(-(1.0 + b1 * b1 + 2.0 * b1) / 2.0);
        rec.cond_eta2 = std::exp(b1 * z1) * std::exp(-b1 * b1 / 2.0);
        rec.formula = rec.eta1 / rec.cond_eta1 * rec.cond_eta2;
        rec.oracle = *oracle_limit(sm, path);
        rec.relative_gap = std::abs(rec.formula - rec.oracle) / std::max(1.0, std::abs(rec.oracle));
        CompensatedSum s;
        for (double v : path.values)
            s.add(v);
        rec.average = s.value() / static_cast<double>(n);
    });

    std::vector<double> err;
    for (const auto& r : out.paths)
    {
        out.max_relative_gap = std::max(out.max_relative_gap, r.relative_gap);
        err.push_back(std::abs(r.average - r.formula));
    }
    out.identity_holds = out.max_relative_gap <= 1e-12;
    out.median_abs_error = median(err);
    return out;
}

}  // namespace zonoid
