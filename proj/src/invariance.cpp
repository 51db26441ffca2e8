#include "zonoid/invariance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "zonoid/error.hpp"
#include "zonoid/rng.hpp"
#include "zonoid/stats.hpp"

namespace zonoid
{
namespace
{

constexpr double kImplementationTol = 1e-12;
constexpr std::uint64_t kPermStream = 0x7065726d75746521ULL;
constexpr std::uint64_t kSpotStream = 0x73706f7463686b21ULL;

/// Lazily drawn sample matrices shared between comparisons.
struct SampleCache
{
    std::optional<Matrix> a;
    std::optional<Matrix> b;
};

double standardized(double delta, double se)
{
    if (se > 0.0)
        return std::abs(delta) / se;
    return std::abs(delta) <= kExactTol ? 0.0 : std::numeric_limits<double>::infinity();
}

void finish_verdict(EquivalenceReport& r)
{
    r.max_abs_discrepancy = 0.0;
    r.max_standardized = 0.0;
    r.worst = 0;
    for (std::size_t i = 0; i < r.per_direction.size(); ++i)
    {
        const auto& p = r.per_direction[i];
        double a = std::abs(p.delta);
        double s = r.exact ? 0.0 : standardized(p.delta, p.se);
        if (a > r.max_abs_discrepancy)
        {
            r.max_abs_discrepancy = a;
            if (r.exact)
                r.worst = i;
        }
        if (!r.exact && s > r.max_standardized)
        {
            r.max_standardized = s;
            r.worst = i;
        }
    }
    r.pass = r.exact ? r.max_abs_discrepancy <= kExactTol : r.max_standardized <= r.threshold;
}

EquivalenceReport compare_impl(const LawModel& law_a,
                               const std::vector<Vector>& dirs_a,
                               const LawModel& law_b,
                               const std::vector<Vector>& dirs_b,
                               SupportKind kind,
                               const McBudget& budget,
                               const TestOptions& options,
                               bool same_law,
                               double k,
                               SampleCache& cache)
{
    require(!dirs_a.empty() && dirs_a.size() == dirs_b.size(),
            "direction lists must be non-empty and of equal length");
    require(dim(law_a) == dim(law_b), "laws differ in dimension");
    require(options.tau > 0.0, "tau must be > 0");
    if (kind == SupportKind::max)
    {
        require_positive_law(law_a);
        require_positive_law(law_b);
    }

    const std::size_t m = dirs_a.size();
    EquivalenceReport r;
    r.kind = kind;
    r.tau = options.tau;
    r.threshold = effective_threshold(options, m);
    r.per_direction.resize(m);

    std::vector<std::optional<double>> ea(m), eb(m);
    bool all_exact = true;
    for (std::size_t i = 0; i < m; ++i)
    {
        if (!budget.force_mc || dirs_a[i].isZero(0.0))
            ea[i] = exact_support(law_a, kind, dirs_a[i], k);
        if (!budget.force_mc || dirs_b[i].isZero(0.0))
            eb[i] = exact_support(law_b, kind, dirs_b[i], k);
        all_exact = all_exact && ea[i] && eb[i];
    }
    r.exact = all_exact;

    auto draws = [&](bool side_a) -> const Matrix& {
        auto& slot = (side_a || same_law) ? cache.a : cache.b;
        if (!slot)
        {
            require(budget.samples >= 2, "Monte Carlo budget must be >= 2 samples");
            slot = sample(side_a || same_law ? law_a : law_b, budget.samples, budget.seed);
            if (kind == SupportKind::max)
                check_nonnegative_draws(*slot, "support_max");
        }
        return *slot;
    };
    auto terms_for = [&](bool side_a, const Vector& u) {
        const LawModel& law = side_a ? law_a : law_b;
        Vector t = support_terms(draws(side_a), kind, u, k);
        if (std::holds_alternative<CustomLaw>(law))
            check_integrable(t, "support_" + to_string(kind));
        return t;
    };

    for (std::size_t i = 0; i < m; ++i)
    {
        auto& p = r.per_direction[i];
        p.u = dirs_a[i];
        if (ea[i] && eb[i])
        {
            p.h_a = *ea[i];
            p.h_b = *eb[i];
            p.se = 0.0;
        }
        else if (ea[i])
        {
            Vector tb = terms_for(false, dirs_b[i]);
            auto s = mean_se(std::span<const double>(tb.data(), tb.size()));
            p.h_a = *ea[i];
            p.h_b = s.mean;
            p.se = s.std_error;
        }
        else if (eb[i])
        {
            Vector ta = terms_for(true, dirs_a[i]);
            auto s = mean_se(std::span<const double>(ta.data(), ta.size()));
            p.h_a = s.mean;
            p.h_b = *eb[i];
            p.se = s.std_error;
        }
        else
        {
            Vector ta = terms_for(true, dirs_a[i]);
            Vector tb = terms_for(false, dirs_b[i]);
            Vector diff = ta - tb;
            p.h_a = ta.mean();
            p.h_b = tb.mean();
            p.se = mean_se(std::span<const double>(diff.data(), diff.size())).std_error;
        }
        p.delta = p.h_a - p.h_b;
    }
    if (!r.exact)
    {
        r.samples = budget.samples;
        if (same_law)
            r.notes.push_back("common random numbers: one sample of the law");
        else
            r.notes.push_back("common random numbers: both laws sampled with seed "
                              + std::to_string(budget.seed));
    }
    finish_verdict(r);
    return r;
}

bool is_identity(const std::vector<int>& perm)
{
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (perm[i] != static_cast<int>(i))
            return false;
    return true;
}

std::string perm_string(const std::vector<int>& perm)
{
    std::ostringstream s;
    s << "(";
    for (std::size_t i = 0; i < perm.size(); ++i)
        s << (i ? " " : "") << perm[i];
    s << ")";
    return s.str();
}

bool same_canonical(const DiscreteLaw& x, const DiscreteLaw& y, double tol)
{
    if (x.size() != y.size() || x.dim() != y.dim())
        return false;
    if (x.size() == 0)
        return true;
    if ((x.atoms() - y.atoms()).cwiseAbs().maxCoeff() > tol)
        return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (std::abs(x.weights()[i] - y.weights()[i]) > 1e-12)
            return false;
    return true;
}

}  // namespace

double effective_threshold(const TestOptions& options, std::size_t m)
{
    if (!options.bonferroni || m <= 1)
        return options.tau;
    double alpha = 2.0 * (1.0 - normal_cdf(options.tau));
    return normal_two_sided_quantile(alpha / static_cast<double>(m));
}

EquivalenceReport compare_supports(const LawModel& law_a,
                                   const std::vector<Vector>& dirs_a,
                                   const LawModel& law_b,
                                   const std::vector<Vector>& dirs_b,
                                   SupportKind kind,
                                   const McBudget& budget,
                                   const TestOptions& options,
                                   bool same_law,
                                   double k)
{
    SampleCache cache;
    return compare_impl(law_a, dirs_a, law_b, dirs_b, kind, budget, options, same_law, k, cache);
}

EquivalenceReport test_zonoid_equiv(const LawModel& a,
                                    const LawModel& b,
                                    const DirectionGrid& grid,
                                    const McBudget& budget,
                                    const TestOptions& options)
{
    require(grid.dim() == dim(a), "grid dimension does not match law");
    auto r = compare_supports(a, grid.directions(), b, grid.directions(), SupportKind::centred,
                              budget, options);
    r.construction = grid.construction();
    return r;
}

MaxEquivalenceReport test_max_zonoid_equiv(const LawModel& a,
                                           const LawModel& b,
                                           const DirectionGrid& grid,
                                           const McBudget& budget,
                                           const TestOptions& options)
{
    require(grid.dim() == dim(a), "grid dimension does not match law");
    MaxEquivalenceReport out;
    out.max_report = compare_supports(a, grid.directions(), b, grid.directions(), SupportKind::max,
                                      budget, options);
    out.max_report.construction = grid.construction();
    out.zonoid_report = test_zonoid_equiv(a, b, grid, budget, options);
    out.consistent = out.max_report.pass == out.zonoid_report.pass;
    if (!out.consistent)
        out.max_report.notes.push_back(
            "internal consistency failure: max-zonoid and zonoid verdicts disagree for positive laws");
    out.pass = out.max_report.pass;
    return out;
}

//---------------------------------------------------------------------------//
// Swap-invariance
//---------------------------------------------------------------------------//

std::vector<std::vector<int>> all_permutations(int d)
{
    require(d >= 2, "permutations need d >= 2");
    require(d <= 6, "all permutations only for d <= 6; supply or sample a set instead");
    std::vector<int> p(d);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    while (std::next_permutation(p.begin(), p.end()))
        out.push_back(p);
    return out;
}

std::vector<std::vector<int>> sampled_permutations(int d, std::size_t count, std::uint64_t seed)
{
    require(d >= 2, "permutations need d >= 2");
    RngStream rng(seed, kPermStream);
    std::vector<std::vector<int>> out;
    while (out.size() < count)
    {
        std::vector<int> p(d);
        std::iota(p.begin(), p.end(), 0);
        for (int i = d - 1; i > 0; --i)
        {
            auto j = static_cast<int>(rng.uniform() * (i + 1));
            std::swap(p[i], p[std::min(j, i)]);
        }
        if (!is_identity(p))
            out.push_back(std::move(p));
    }
    return out;
}

Vector permuted_direction(const Vector& u, const std::vector<int>& perm)
{
    validate_permutation(perm, static_cast<int>(u.size()));
    Vector v(u.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
        v[perm[i]] = u[static_cast<Eigen::Index>(i)];
    return v;
}

SwapReport test_swap_invariance(const LawModel& law,
                                const std::vector<std::vector<int>>& permutations,
                                const DirectionGrid& grid,
                                const McBudget& budget,
                                const TestOptions& options)
{
    const int d = dim(law);
    require(d >= 2, "swap-invariance needs d >= 2");
    require(grid.dim() == d, "grid dimension does not match law");
    require(!permutations.empty(), "no permutations supplied");
    for (const auto& p : permutations)
        validate_permutation(p, d);

    const auto& dirs = grid.directions();
    const bool exact_alt = has_exact_support(law, SupportKind::centred) && !budget.force_mc;

    SwapReport out;
    out.pass = true;
    SampleCache cache;
    bool have_worst = false;
    double gap = 0.0;
    for (const auto& perm : permutations)
    {
        std::vector<Vector> moved;
        moved.reserve(dirs.size());
        for (const auto& u : dirs)
            moved.push_back(permuted_direction(u, perm));
        auto r = compare_impl(law, dirs, law, moved, SupportKind::centred, budget, options, true,
                              0.0, cache);
        r.construction = grid.construction();

        if (exact_alt)
        {
            LawModel permuted = permute(law, perm);
            for (std::size_t i = 0; i < dirs.size(); ++i)
            {
                double direct = *exact_support(permuted, SupportKind::centred, dirs[i]);
                double h = r.per_direction[i].h_b;
                gap = std::max(gap, std::abs(direct - h) / std::max(1.0, std::abs(h)));
            }
        }

        out.per_permutation.push_back(
            {perm, r.max_abs_discrepancy, r.max_standardized, r.pass});
        out.pass = out.pass && r.pass;
        bool worse = !have_worst
                     || (r.exact ? r.max_abs_discrepancy > out.worst.max_abs_discrepancy
                                 : r.max_standardized > out.worst.max_standardized);
        if (worse)
        {
            out.worst = std::move(r);
            out.worst_perm = perm;
            have_worst = true;
        }
    }
    out.worst.notes.push_back("worst permutation " + perm_string(out.worst_perm) + " of "
                              + std::to_string(permutations.size()));
    if (exact_alt)
    {
        out.implementation_gap = gap;
        out.implementations_agree = gap <= kImplementationTol;
        if (!*out.implementations_agree)
            throw DiagnosticError("swap test: permuted-direction and permuted-law evaluations differ by "
                                  + std::to_string(gap));
    }
    return out;
}

SwapReport test_lift_swap_invariance(const LawModel& law,
                                     const std::vector<std::vector<int>>& permutations,
                                     const DirectionGrid& grid,
                                     const McBudget& budget,
                                     const TestOptions& options)
{
    require(dim(law) >= 1, "lift swap-invariance needs d >= 1");
    require(grid.dim() == dim(law) + 1, "lift grid must live in R^{d+1}");
    return test_swap_invariance(lift(law), permutations, grid, budget, options);
}

PositivityDiagnostic check_positivity_necessity(const LawModel& law, const McBudget& budget)
{
    const int d = dim(law);
    PositivityDiagnostic out;
    out.means = Vector::Zero(d);
    out.mean_se = Vector::Zero(d);

    if (auto* l = std::get_if<DiscreteLaw>(&law))
    {
        out.exact = true;
        out.means = l->mean();
        for (std::size_t i = 0; i < l->size(); ++i)
            if (l->weights()[i] > 0.0 && l->atoms().row(i).minCoeff() <= 0.0)
                out.nonpositive_mass += l->weights()[i];
        for (int j = 0; j < d; ++j)
            if (std::abs(out.means[j] - 1.0) > kExactTol)
                out.reasons.push_back("component " + std::to_string(j + 1) + " has mean "
                                      + std::to_string(out.means[j]) + " != 1");
    }
    else
    {
        Matrix x = sample(law, budget.samples, budget.seed);
        std::size_t bad = 0;
        for (Eigen::Index i = 0; i < x.rows(); ++i)
            if (x.row(i).minCoeff() <= 0.0)
                ++bad;
        out.nonpositive_mass = static_cast<double>(bad) / static_cast<double>(x.rows());
        auto exact = exact_mean(law);
        for (int j = 0; j < d; ++j)
        {
            if (exact)
            {
                out.means[j] = (*exact)[j];
            }
            else
            {
                Vector col = x.col(j);
                auto s = mean_se(std::span<const double>(col.data(), col.size()));
                out.means[j] = s.mean;
                out.mean_se[j] = s.std_error;
            }
            double tol = exact ? kExactTol : 4.0 * out.mean_se[j];
            if (std::abs(out.means[j] - 1.0) > tol)
                out.reasons.push_back("component " + std::to_string(j + 1) + " has mean "
                                      + std::to_string(out.means[j]) + " != 1");
        }
    }
    if (out.nonpositive_mass > 0.0)
        out.reasons.insert(out.reasons.begin(),
                           "mass " + std::to_string(out.nonpositive_mass)
                               + " on vectors with a non-positive component (atom at zero or below)");
    out.fires = !out.reasons.empty();
    return out;
}

//---------------------------------------------------------------------------//
// Measure change
//---------------------------------------------------------------------------//

Vector ratio_map(const Vector& x, int j)
{
    const auto d = static_cast<int>(x.size());
    require(j >= 0 && j < d, "pivot index out of range");
    Vector out(d - 1);
    for (int i = 0, o = 0; i < d; ++i)
        if (i != j)
            out[o++] = x[i] / x[j];
    return out;
}

MeasureChangedLaw measure_change(const DiscreteLaw& base, int j)
{
    const int d = base.dim();
    require(d >= 2, "measure change needs d >= 2");
    require(j >= 0 && j < d, "pivot index out of range");
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < base.size(); ++i)
    {
        if (base.weights()[i] == 0.0)
            continue;
        require(base.atoms().row(i).minCoeff() > 0.0,
                "measure change requires atoms in (0, inf)^d");
        keep.push_back(i);
    }
    double mean_j = 0.0;
    for (auto i : keep)
        mean_j += base.weights()[i] * base.atoms()(i, j);
    require(mean_j > 0.0, "pivot coordinate must have positive mean");

    Matrix atoms(keep.size(), d - 1);
    std::vector<double> w(keep.size());
    double total = 0.0;
    for (std::size_t r = 0; r < keep.size(); ++r)
    {
        auto i = keep[r];
        atoms.row(r) = ratio_map(base.atom(i), j).transpose();
        w[r] = base.weights()[i] * base.atoms()(i, j) / mean_j;
        total += w[r];
    }
    for (auto& x : w)
        x /= total;
    return {base, j, DiscreteLaw(std::move(atoms), std::move(w))};
}

bool is_exchangeable(const DiscreteLaw& law, double tol)
{
    const int d = law.dim();
    if (d < 2)
        return true;
    DiscreteLaw c = law.canonical(tol);
    for (int i = 0; i + 1 < d; ++i)
    {
        std::vector<int> p(d);
        std::iota(p.begin(), p.end(), 0);
        std::swap(p[i], p[i + 1]);
        auto moved = std::get<DiscreteLaw>(permute(c, p)).canonical(tol);
        if (!same_canonical(c, moved, tol))
            return false;
    }
    return true;
}

RelationsReport test_relations_theorem(const DiscreteLaw& base,
                                       const DirectionGrid& grid,
                                       const TestOptions& options)
{
    const int d = base.dim();
    require(d >= 2, "relations theorem needs d >= 2");
    require(base.is_positive(), "relations theorem requires a positive law");
    require(grid.dim() == d, "grid dimension does not match law");

    auto perms = d <= 6 ? all_permutations(d) : sampled_permutations(d, 200, 0);
    McBudget exact_budget;

    RelationsReport out;
    out.a = test_swap_invariance(base, perms, grid, exact_budget, options).pass;
    for (int j = 0; j < d; ++j)
    {
        auto changed = measure_change(base, j).result;
        bool b = test_swap_invariance(lift(changed), perms, grid, exact_budget, options).pass;
        out.b.push_back(b);
        out.c_per_pivot.push_back(is_exchangeable(changed));
    }

    out.consistent = true;
    for (int j = 0; j < d; ++j)
        if (out.b[j] != out.a)
        {
            out.consistent = false;
            out.notes.push_back("(a) and (b) disagree at pivot " + std::to_string(j + 1));
        }
    if (d >= 3)
    {
        auto count = std::count(out.c_per_pivot.begin(), out.c_per_pivot.end(), true);
        out.c = count >= 2;
        if (*out.c != out.a)
        {
            out.consistent = false;
            out.notes.push_back("(a) and (c) disagree");
        }
        if (*out.c && count != d)
        {
            out.consistent = false;
            out.notes.push_back("(c) holds for two pivots but not for all");
        }
    }
    return out;
}

//---------------------------------------------------------------------------//
// Stationarity
//---------------------------------------------------------------------------//

std::vector<double> shifted(std::span<const double> times, double s)
{
    std::vector<double> out(times.begin(), times.end());
    for (auto& t : out)
        t += s;
    return out;
}

EquivalenceReport test_zonoid_stationarity(const ProcessModel& process,
                                           std::span<const double> times,
                                           double shift,
                                           const DirectionGrid& grid,
                                           const McBudget& budget,
                                           const TestOptions& options)
{
    require(static_cast<bool>(process.law_at), "process has no finite-dimensional laws");
    require(!times.empty(), "time set must be non-empty");
    for (double t : times)
        require(std::isfinite(t) && std::isfinite(t + shift), "times must be finite");
    auto later = shifted(times, shift);
    LawModel a = process.law_at(times);
    LawModel b = process.law_at(later);
    return test_zonoid_equiv(a, b, grid, budget, options);
}

//---------------------------------------------------------------------------//
// Even homogeneous functionals
//---------------------------------------------------------------------------//

EvenFunction norm_l1()
{
    return {"l1", [](const Vector& x) { return x.lpNorm<1>(); }};
}

EvenFunction norm_l2()
{
    return {"l2", [](const Vector& x) { return x.norm(); }};
}

EvenFunction norm_linf()
{
    return {"linf", [](const Vector& x) { return x.lpNorm<Eigen::Infinity>(); }};
}

EvenFunction polytope_width(std::vector<Vector> vertices, std::string name)
{
    require(!vertices.empty(), "polytope needs at least one vertex");
    return {std::move(name), [v = std::move(vertices)](const Vector& x) {
                double hi = -INFINITY, lo = INFINITY;
                for (const auto& p : v)
                {
                    double s = p.dot(x);
                    hi = std::max(hi, s);
                    lo = std::min(lo, s);
                }
                return hi - lo;
            }};
}

EvenFunction random_polytope_width(int d, std::size_t m, std::uint64_t seed)
{
    require(d >= 1 && m >= 1, "random polytope needs d, m >= 1");
    RngStream rng(seed, 0x706f6c79ULL);
    std::vector<Vector> v;
    for (std::size_t i = 0; i < m; ++i)
    {
        Vector p(d);
        for (int j = 0; j < d; ++j)
            p[j] = rng.normal();
        v.push_back(p);
    }
    return polytope_width(std::move(v), "polytope_" + std::to_string(seed));
}

std::vector<EvenFunction> builtin_even_functions(int d, std::size_t polytopes, std::uint64_t seed)
{
    std::vector<EvenFunction> out{norm_l1(), norm_l2(), norm_linf()};
    for (std::size_t i = 0; i < polytopes; ++i)
        out.push_back(random_polytope_width(d, 2 * static_cast<std::size_t>(d) + 2, seed + i));
    return out;
}

void spot_check_even_homogeneous(const EvenFunction& f, int d, std::uint64_t seed)
{
    require(static_cast<bool>(f.f), "test function " + f.name + " is empty");
    RngStream rng(seed, kSpotStream);
    for (int trial = 0; trial < 32; ++trial)
    {
        Vector x(d);
        for (int j = 0; j < d; ++j)
            x[j] = rng.normal();
        double fx = f.f(x);
        require(std::isfinite(fx), "test function " + f.name + " is not finite");
        double neg = f.f(-x);
        require(std::abs(neg - fx) <= 1e-9 * (1.0 + std::abs(fx)),
                "test function " + f.name + " is not even");
        for (double c : {0.5, 2.0, 7.0})
        {
            double fc = f.f(c * x);
            require(std::abs(fc - c * fx) <= 1e-9 * (1.0 + std::abs(c * fx)),
                    "test function " + f.name + " is not positively 1-homogeneous");
        }
    }
}

EvenHomogeneousReport test_even_homogeneous(const LawModel& a,
                                            const LawModel& b,
                                            const std::vector<EvenFunction>& functions,
                                            const McBudget& budget,
                                            const TestOptions& options)
{
    const int d = dim(a);
    require(dim(b) == d, "laws differ in dimension");
    require(!functions.empty(), "no test functions supplied");
    for (const auto& f : functions)
        spot_check_even_homogeneous(f, d, budget.seed);

    const auto* da = std::get_if<DiscreteLaw>(&a);
    const auto* db = std::get_if<DiscreteLaw>(&b);
    const bool exact_a = da && !budget.force_mc;
    const bool exact_b = db && !budget.force_mc;
    std::optional<Matrix> xa, xb;
    if (!exact_a)
        xa = sample(a, budget.samples, budget.seed);
    if (!exact_b)
        xb = sample(b, budget.samples, budget.seed);

    auto enumerate = [](const DiscreteLaw& l, const EvenFunction& f) {
        CompensatedSum s;
        for (std::size_t i = 0; i < l.size(); ++i)
            s.add(l.weights()[i] * f.f(l.atom(i)));
        return s.value();
    };
    auto values = [](const Matrix& x, const EvenFunction& f) {
        Vector out(x.rows());
        for (Eigen::Index i = 0; i < x.rows(); ++i)
            out[i] = f.f(x.row(i).transpose());
        return out;
    };

    EvenHomogeneousReport out;
    out.tau = effective_threshold(options, functions.size());
    out.pass = true;
    for (const auto& f : functions)
    {
        FunctionComparison c;
        c.name = f.name;
        c.exact = exact_a && exact_b;
        Vector va, vb;
        if (exact_a)
            c.mean_a = enumerate(*da, f);
        else
        {
            va = values(*xa, f);
            c.mean_a = va.mean();
        }
        if (exact_b)
            c.mean_b = enumerate(*db, f);
        else
        {
            vb = values(*xb, f);
            c.mean_b = vb.mean();
        }
        if (!exact_a && !exact_b)
        {
            Vector diff = va - vb;
            c.se = mean_se(std::span<const double>(diff.data(), diff.size())).std_error;
        }
        else if (!exact_a)
            c.se = mean_se(std::span<const double>(va.data(), va.size())).std_error;
        else if (!exact_b)
            c.se = mean_se(std::span<const double>(vb.data(), vb.size())).std_error;
        c.delta = c.mean_a - c.mean_b;
        c.pass = c.exact ? std::abs(c.delta) <= kExactTol : standardized(c.delta, c.se) <= out.tau;
        out.pass = out.pass && c.pass;
        out.per_function.push_back(std::move(c));
    }
    return out;
}

}  // namespace zonoid
