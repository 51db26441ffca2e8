#include "zonoid/lepage.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

#include "zonoid/error.hpp"
#include "zonoid/parallel.hpp"
#include "zonoid/rng.hpp"
#include "zonoid/stats.hpp"

namespace zonoid
{
namespace
{
constexpr std::size_t kBlock = 256;
constexpr std::size_t kPilot = 20000;
constexpr std::uint64_t kPilotTag = 0x70696c6f74ULL;
constexpr std::uint64_t kBootTag = 0x626f6f74ULL;
constexpr std::uint64_t kShuffleTag = 0x73687566ULL;
constexpr std::uint64_t kShiftTag = 0x7368696674ULL;

bool symmetric_base(LocationScaleLaw::Base b)
{
    return b != LocationScaleLaw::Base::shifted_exponential;
}

bool symmetric_measure(const std::vector<LevyAtom>& nu)
{
    for (const auto& a : nu)
    {
        double mirrored = 0.0;
        for (const auto& b : nu)
            if ((a.x + b.x).cwiseAbs().maxCoeff() <= 1e-12)
                mirrored += b.mass;
        double own = 0.0;
        for (const auto& b : nu)
            if ((a.x - b.x).cwiseAbs().maxCoeff() <= 1e-12)
                own += b.mass;
        if (std::abs(mirrored - own) > 1e-12)
            return false;
    }
    return true;
}

/// Pilot sample: coordinate means and sign(<u, xi>) means within 4 SE of 0.
SymmetryCheck pilot_symmetry(const LawModel& driver, std::uint64_t seed)
{
    Matrix x = sample(driver, kPilot, seed ^ kPilotTag);
    const auto d = x.cols();
    std::vector<Vector> probes;
    for (Eigen::Index j = 0; j < d; ++j)
        probes.push_back(Vector::Unit(d, j));
    probes.push_back(Vector::Ones(d));
    for (const auto& u : probes)
    {
        Vector proj = x * u;
        auto m = mean_se(std::span<const double>(proj.data(), proj.size()));
        Vector signs = proj.unaryExpr([](double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); });
        auto s = mean_se(std::span<const double>(signs.data(), signs.size()));
        if (std::abs(m.mean) > 4.0 * m.std_error || std::abs(s.mean) > 4.0 * s.std_error)
            return {false, false, "pilot sample: sign-odd functional differs from 0 by more than 4 SE"};
    }
    return {true, false, "declared symmetric; pilot sample consistent"};
}
}  // namespace

std::string to_string(LePageMode mode)
{
    return mode == LePageMode::sum ? "sum" : "max";
}

SymmetryCheck check_symmetry(const LawModel& driver, bool declared, std::uint64_t seed)
{
    if (auto* l = std::get_if<DiscreteLaw>(&driver))
    {
        DiscreteLaw neg(-l->atoms(), l->weights());
        DiscreteLaw a = l->canonical(), b = neg.canonical();
        bool same = a.size() == b.size() && (a.atoms() - b.atoms()).cwiseAbs().maxCoeff() <= 1e-9;
        for (std::size_t i = 0; same && i < a.size(); ++i)
            same = std::abs(a.weights()[i] - b.weights()[i]) <= 1e-12;
        return {same, true, same ? "atoms symmetric" : "atoms not symmetric about 0"};
    }
    if (auto* l = std::get_if<GaussianLaw>(&driver))
    {
        bool s = l->mean().cwiseAbs().maxCoeff() <= 1e-12;
        return {s, true, s ? "centred gaussian" : "gaussian with non-zero mean"};
    }
    if (std::holds_alternative<EllipticalLaw>(driver))
        return {true, true, "elliptical"};
    if (auto* l = std::get_if<LocationScaleLaw>(&driver))
    {
        bool s = l->location() == 0.0 && symmetric_base(l->base());
        return {s, true, s ? "symmetric base at 0" : "location or base not symmetric"};
    }
    if (std::holds_alternative<LognormalLaw>(driver))
        return {false, true, "positive law cannot be symmetric"};
    if (auto* l = std::get_if<InfDivLaw>(&driver))
    {
        bool s = !l->exponentiate() && l->triplet().drift().isZero(1e-12)
                 && symmetric_measure(l->triplet().levy_measure());
        return {s, true, s ? "symmetric triplet" : "triplet not symmetric"};
    }
    const auto& c = std::get<CustomLaw>(driver);
    if (!declared && !c.declared_symmetric)
        return {false, false, "sampler not declared symmetric"};
    return pilot_symmetry(driver, seed);
}

LePageResult simulate_lepage(const LePageConfig& cfg)
{
    require(cfg.terms >= 1, "LePage truncation N must be >= 1");
    require(cfg.paths >= 1, "LePage path count must be >= 1");
    const int d = dim(cfg.driver);

    LePageResult out;
    std::optional<double> bound;
    if (cfg.mode == LePageMode::sum)
    {
        auto sym = check_symmetry(cfg.driver, cfg.declared_symmetric, cfg.seed);
        if (!sym.symmetric)
            throw ConfigError("sum-mode LePage series needs a symmetric driver: " + sym.reason);
        out.notes.push_back("symmetry: " + sym.reason);
    }
    else
    {
        require(known_positive(cfg.driver), "max-mode LePage series needs a positive driver");
        bound = cfg.upper_bound;
        if (auto* l = std::get_if<DiscreteLaw>(&cfg.driver))
            bound = l->atoms().maxCoeff();
        if (bound)
            out.notes.push_back("early exit enabled with upper bound " + std::to_string(*bound));
    }

    out.values.resize(cfg.paths, d);
    out.tail_start.resize(cfg.paths);
    out.last_increment.resize(cfg.paths);
    out.terms_used.resize(cfg.paths);
    const bool sum_mode = cfg.mode == LePageMode::sum;

    parallel_for(cfg.paths, [&](std::size_t p) {
        RngStream rng(cfg.seed, p);
        Matrix marks(kBlock, d);
        std::array<double, kBlock> arrivals{};
        Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(d);
        double gamma = 0.0;
        double last = 0.0;
        std::size_t k = 0;
        bool started = false;
        while (k < cfg.terms)
        {
            for (auto& a : arrivals)
                a = rng.exponential();
            sample_rows(cfg.driver, rng, marks);
            std::size_t used = std::min(kBlock, cfg.terms - k);
            for (std::size_t j = 0; j < used; ++j)
            {
                gamma += arrivals[j];
                auto term = marks.row(static_cast<Eigen::Index>(j)) / gamma;
                if (sum_mode)
                    acc += term;
                else if (!started)
                    acc = term;
                else
                    acc = acc.cwiseMax(term);
                started = true;
                last = marks.row(static_cast<Eigen::Index>(j)).norm() / gamma;
            }
            k += used;
            if (!sum_mode && bound && *bound / gamma <= acc.minCoeff())
                break;
        }
        out.values.row(p) = acc;
        out.tail_start[p] = 1.0 / gamma;
        out.last_increment[p] = last;
        out.terms_used[p] = k;
    });
    return out;
}

CfReport cf_check(const LePageResult& sim,
                  const LawModel& driver,
                  const std::vector<Vector>& us,
                  const McBudget& support_budget,
                  std::size_t bootstrap_resamples,
                  std::uint64_t seed)
{
    require(!us.empty(), "no u values supplied");
    const auto n = sim.values.rows();
    require(n >= 2, "need at least 2 paths");
    CfReport r;
    r.paths = static_cast<std::size_t>(n);
    for (std::size_t q = 0; q < us.size(); ++q)
    {
        const Vector& u = us[q];
        require(u.size() == sim.values.cols(), "u dimension mismatch");
        Vector proj = sim.values * u;
        Vector c = proj.array().cos().matrix();
        Vector s = proj.array().sin().matrix();
        CfEntry e;
        e.u = u;
        e.empirical = {c.mean(), s.mean()};
        e.support = support_centred(driver, u, support_budget).value;
        e.predicted = std::exp(-0.5 * std::numbers::pi * e.support);
        e.discrepancy = std::abs(e.empirical - e.predicted);

        if (bootstrap_resamples >= 2)
        {
            RngStream rng(seed ^ kBootTag, q);
            std::vector<double> re(bootstrap_resamples), im(bootstrap_resamples);
            for (std::size_t b = 0; b < bootstrap_resamples; ++b)
            {
                double sc = 0.0, ss = 0.0;
                for (Eigen::Index i = 0; i < n; ++i)
                {
                    auto idx = static_cast<Eigen::Index>(rng.uniform() * static_cast<double>(n));
                    idx = std::min(idx, n - 1);
                    sc += c[idx];
                    ss += s[idx];
                }
                re[b] = sc / static_cast<double>(n);
                im[b] = ss / static_cast<double>(n);
            }
            auto var = [](const std::vector<double>& x) {
                double m = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
                double v = 0.0;
                for (double y : x)
                    v += (y - m) * (y - m);
                return v / static_cast<double>(x.size() - 1);
            };
            e.bootstrap_se = std::sqrt(var(re) + var(im));
        }
        r.sup_discrepancy = std::max(r.sup_discrepancy, e.discrepancy);
        r.entries.push_back(std::move(e));
    }
    return r;
}

CfReport cf_check(const LePageConfig& cfg,
                  const std::vector<Vector>& us,
                  const McBudget& support_budget,
                  std::size_t bootstrap_resamples)
{
    require(cfg.mode == LePageMode::sum, "CF check applies to the sum-mode series");
    auto sim = simulate_lepage(cfg);
    auto r = cf_check(sim, cfg.driver, us, support_budget, bootstrap_resamples, cfg.seed);
    r.terms = cfg.terms;
    return r;
}

TwoSampleReport two_sample_projection_test(const Matrix& a,
                                           const Matrix& b,
                                           const std::vector<Vector>& directions,
                                           std::size_t permutations,
                                           double level,
                                           std::uint64_t seed)
{
    require(a.cols() == b.cols(), "samples differ in dimension");
    require(a.rows() >= 2 && b.rows() >= 2, "each sample needs at least 2 rows");
    require(!directions.empty(), "no projection directions");
    require(level > 0.0 && level < 1.0, "level must lie in (0, 1)");
    require(permutations >= 10, "need at least 10 permutations");

    const auto na = a.rows();
    const auto nb = b.rows();
    Matrix pooled(na + nb, a.cols());
    pooled << a, b;
    Matrix dirs(a.cols(), static_cast<Eigen::Index>(directions.size()));
    for (std::size_t j = 0; j < directions.size(); ++j)
        dirs.col(static_cast<Eigen::Index>(j)) = directions[j];
    Matrix proj = pooled * dirs;

    auto statistic = [&](const std::vector<Eigen::Index>& order) {
        double worst = 0.0;
        std::vector<double> xa(na), xb(nb);
        for (Eigen::Index j = 0; j < proj.cols(); ++j)
        {
            for (Eigen::Index i = 0; i < na; ++i)
                xa[i] = proj(order[i], j);
            for (Eigen::Index i = 0; i < nb; ++i)
                xb[i] = proj(order[na + i], j);
            worst = std::max(worst, ks_distance(xa, xb));
        }
        return worst;
    };

    std::vector<Eigen::Index> order(na + nb);
    std::iota(order.begin(), order.end(), 0);
    TwoSampleReport r;
    r.level = level;
    r.permutations = permutations;
    r.projections = directions.size();
    r.statistic = statistic(order);

    std::vector<double> null_stats(permutations);
    parallel_for(permutations, [&](std::size_t p) {
        RngStream rng(seed ^ kShuffleTag, p);
        std::vector<Eigen::Index> o(order);
        std::shuffle(o.begin(), o.end(), rng.engine());
        null_stats[p] = statistic(o);
    });
    r.threshold = quantile(null_stats, level);
    r.pass = r.statistic <= r.threshold;
    return r;
}

StationarityCrossCheck stationarity_cross_check(const ProcessModel& driver,
                                                std::span<const double> times,
                                                double shift,
                                                const DirectionGrid& grid,
                                                const McBudget& budget,
                                                const TestOptions& options,
                                                LePageMode mode,
                                                std::size_t terms,
                                                std::size_t paths,
                                                std::size_t permutations)
{
    StationarityCrossCheck out;
    out.zonoid = test_zonoid_stationarity(driver, times, shift, grid, budget, options);

    auto later = shifted(times, shift);
    LePageConfig ca{driver.law_at(times), mode, terms, paths, budget.seed, false, std::nullopt};
    LePageConfig cb{driver.law_at(later), mode, terms, paths, budget.seed ^ kShiftTag, false,
                    std::nullopt};
    auto sa = simulate_lepage(ca);
    auto sb = simulate_lepage(cb);
    auto dirs = DirectionGrid::axis_and_diagonals(grid.dim()).directions();
    out.simulated = two_sample_projection_test(sa.values, sb.values, dirs, permutations, 0.99,
                                               budget.seed);
    out.agree = out.zonoid.pass == out.simulated.pass;
    out.pass = out.zonoid.pass && out.simulated.pass;
    return out;
}

}  // namespace zonoid
