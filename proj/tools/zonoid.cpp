// Command-line front end: law specifications in, JSON reports out.
//
// Exit codes: 0 success / pass, 1 failed verdict, 2 usage or configuration
// error, 3 numerical diagnostic failure.

#include <cmath>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zonoid/csv.hpp"
#include "zonoid/ergodic.hpp"
#include "zonoid/error.hpp"
#include "zonoid/grid.hpp"
#include "zonoid/invariance.hpp"
#include "zonoid/io.hpp"
#include "zonoid/lepage.hpp"
#include "zonoid/levy.hpp"
#include "zonoid/mean_width.hpp"
#include "zonoid/parallel.hpp"
#include "zonoid/stats.hpp"
#include "zonoid/zonotope.hpp"

using namespace zonoid;

namespace
{

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDiagnostic = 3;

struct Common
{
    std::string out;
    std::string csv;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
    double budget = 1e5;
    double tau = 3.0;
    bool bonferroni = false;
    std::size_t grid = 0;
    std::string grid_file;
    bool force_mc = false;
};

struct Outcome
{
    Json input = Json::object();
    Json result = Json::object();
    bool pass = true;
    std::optional<CsvTable> table;
};

std::uint64_t need_seed(const Common& c, const std::string& why)
{
    require(c.seed.has_value(), "--seed is required: " + why);
    return *c.seed;
}

McBudget budget_of(const Common& c, bool stochastic)
{
    require(std::isfinite(c.budget) && c.budget >= 2 && c.budget == std::floor(c.budget),
            "--budget must be a positive integer");
    McBudget b;
    b.samples = static_cast<std::size_t>(c.budget);
    b.force_mc = c.force_mc;
    if (stochastic)
    {
        require(c.budget >= 1e3, "--budget must be >= 1000 in statistical mode");
        b.seed = need_seed(c, "the comparison uses Monte Carlo");
    }
    return b;
}

TestOptions options_of(const Common& c)
{
    require(c.tau > 0.0, "--tau must be > 0");
    return {c.tau, c.bonferroni};
}

DirectionGrid grid_of(const Common& c, int d)
{
    if (!c.grid_file.empty())
    {
        Json j = read_json_file(c.grid_file);
        const Json* dirs = &j;
        Json inner;
        if (j.is_object())
        {
            ObjectReader r(j, "grid");
            r.required("schema");
            inner = r.required("directions");
            r.finish();
            check_schema(j, "grid");
            dirs = &inner;
        }
        auto grid = DirectionGrid::user_supplied(vectors_of(*dirs, "grid.directions"));
        require(grid.dim() == d, "grid dimension does not match the law");
        return grid;
    }
    return DirectionGrid::standard(d, c.grid, c.seed.value_or(0));
}

/// Budget for a comparison: seed only demanded when a side needs Monte Carlo.
McBudget comparison_budget(const Common& c, bool all_exact)
{
    return budget_of(c, !all_exact || c.force_mc);
}

bool exact_for(const LawModel& law, SupportKind kind)
{
    return has_exact_support(law, kind);
}

LawModel load_law(const std::string& path)
{
    Json j = read_json_file(path);
    check_schema(j, path);
    return law_from_json(j);
}

CsvTable direction_table(const EquivalenceReport& r)
{
    CsvTable t;
    const auto d = r.per_direction.empty() ? 0 : r.per_direction.front().u.size();
    for (Eigen::Index i = 0; i < d; ++i)
        t.header.push_back("u_" + std::to_string(i + 1));
    for (const char* h : {"h_a", "h_b", "delta", "se"})
        t.header.push_back(h);
    for (const auto& p : r.per_direction)
    {
        std::vector<double> row(p.u.data(), p.u.data() + p.u.size());
        row.insert(row.end(), {p.h_a, p.h_b, p.delta, p.se});
        t.add_row(row);
    }
    return t;
}

std::vector<int> parse_perm(const std::string& s)
{
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= s.size())
    {
        auto next = s.find(',', pos);
        auto token = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        try
        {
            out.push_back(std::stoi(token));
        }
        catch (const std::exception&)
        {
            throw ConfigError("bad permutation entry '" + token + "'");
        }
        if (next == std::string::npos)
            break;
        pos = next + 1;
    }
    return out;
}

/// "all", a count of sampled permutations, or ';'-separated lists "1,0,2;2,1,0".
std::vector<std::vector<int>> permutations_of(const std::string& spec, int d, const Common& c)
{
    if (spec == "all")
        return all_permutations(d);
    if (spec.find(',') == std::string::npos)
    {
        std::size_t count = 0;
        try
        {
            count = std::stoul(spec);
        }
        catch (const std::exception&)
        {
            throw ConfigError("--perms must be 'all', a count, or explicit permutations");
        }
        require(count >= 1, "--perms count must be >= 1");
        return sampled_permutations(d, count, need_seed(c, "permutations are sampled"));
    }
    std::vector<std::vector<int>> out;
    std::size_t pos = 0;
    while (true)
    {
        auto next = spec.find(';', pos);
        auto p = parse_perm(spec.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
        validate_permutation(p, d);
        out.push_back(std::move(p));
        if (next == std::string::npos)
            break;
        pos = next + 1;
    }
    return out;
}

//---------------------------------------------------------------------------//
// Subcommands
//---------------------------------------------------------------------------//

struct SupportArgs
{
    std::string law;
    std::string kind = "centred";
    double k = 0.0;
    std::vector<double> u;
};

Outcome run_support(const Common& c, const SupportArgs& a)
{
    Outcome o;
    LawModel law = load_law(a.law);
    o.input["law"] = to_json(law);

    SupportKind kind;
    if (a.kind == "centred")
        kind = SupportKind::centred;
    else if (a.kind == "noncentred")
        kind = SupportKind::noncentred;
    else if (a.kind == "lift")
        kind = SupportKind::lift;
    else if (a.kind == "max")
        kind = SupportKind::max;
    else
        throw ConfigError("--kind must be centred, noncentred, lift or max");

    std::vector<Vector> dirs;
    if (!a.u.empty())
        dirs.push_back(Eigen::Map<const Vector>(a.u.data(), static_cast<Eigen::Index>(a.u.size())));
    else
        dirs = grid_of(c, dim(law)).directions();
    for (const auto& u : dirs)
        require(u.size() == dim(law), "direction dimension does not match the law");

    bool exact = exact_for(law, kind) && !c.force_mc;
    McBudget budget = budget_of(c, !exact);
    auto est = support_on_grid(law, kind, dirs, budget, a.k);

    o.input["kind"] = to_string(kind);
    if (kind == SupportKind::lift)
        o.input["k"] = a.k;
    Json values = Json::array();
    CsvTable t;
    for (int i = 0; i < dim(law); ++i)
        t.header.push_back("u_" + std::to_string(i + 1));
    for (const char* h : {"value", "std_error", "exact"})
        t.header.push_back(h);
    for (std::size_t i = 0; i < dirs.size(); ++i)
    {
        Json e = to_json(est[i]);
        e["u"] = to_json(dirs[i]);
        values.push_back(std::move(e));
        std::vector<double> row(dirs[i].data(), dirs[i].data() + dirs[i].size());
        row.insert(row.end(), {est[i].value, est[i].std_error, est[i].exact ? 1.0 : 0.0});
        t.add_row(row);
    }
    o.result["values"] = std::move(values);
    o.table = std::move(t);
    return o;
}

struct EquivArgs
{
    std::string law_a, law_b;
    bool max = false;
};

Outcome run_equiv(const Common& c, const EquivArgs& a)
{
    Outcome o;
    LawModel la = load_law(a.law_a), lb = load_law(a.law_b);
    require(dim(la) == dim(lb), "laws differ in dimension");
    o.input = {{"law_a", to_json(la)}, {"law_b", to_json(lb)}};
    auto grid = grid_of(c, dim(la));
    auto opts = options_of(c);
    if (a.max)
    {
        bool exact = exact_for(la, SupportKind::max) && exact_for(lb, SupportKind::max) &&
                     exact_for(la, SupportKind::centred) && exact_for(lb, SupportKind::centred);
        auto r = test_max_zonoid_equiv(la, lb, grid, comparison_budget(c, exact), opts);
        o.result = to_json(r);
        o.pass = r.pass;
        o.table = direction_table(r.max_report);
        if (!r.consistent)
            throw DiagnosticError("max-zonoid and zonoid verdicts disagree for positive laws");
        return o;
    }
    bool exact = exact_for(la, SupportKind::centred) && exact_for(lb, SupportKind::centred);
    auto r = test_zonoid_equiv(la, lb, grid, comparison_budget(c, exact), opts);
    o.result = to_json(r);
    o.pass = r.pass;
    o.table = direction_table(r);
    return o;
}

struct SwapArgs
{
    std::string law;
    std::string perms = "all";
    bool relations = false;
};

Outcome run_swap(const Common& c, const SwapArgs& a)
{
    Outcome o;
    LawModel law = load_law(a.law);
    o.input = {{"law", to_json(law)}, {"perms", a.perms}};
    auto grid = grid_of(c, dim(law));
    auto perms = permutations_of(a.perms, dim(law), c);
    bool exact = exact_for(law, SupportKind::centred);
    auto r = test_swap_invariance(law, perms, grid, comparison_budget(c, exact), options_of(c));
    o.result = to_json(r);
    o.pass = r.pass;
    o.table = direction_table(r.worst);
    if (a.relations)
    {
        auto* d = std::get_if<DiscreteLaw>(&law);
        require(d != nullptr, "--relations needs a discrete law");
        auto rel = test_relations_theorem(*d, grid, options_of(c));
        o.result["relations"] = to_json(rel);
        if (!rel.consistent)
            throw DiagnosticError("swap-invariance, lift swap-invariance and exchangeability verdicts "
                                  "are mutually inconsistent");
    }
    return o;
}

struct LiftSwapArgs
{
    std::string law;
    std::string perms = "all";
};

Outcome run_lift_swap(const Common& c, const LiftSwapArgs& a)
{
    Outcome o;
    LawModel law = load_law(a.law);
    o.input = {{"law", to_json(law)}, {"perms", a.perms}};
    const int d = dim(law) + 1;
    auto grid = grid_of(c, d);
    auto perms = permutations_of(a.perms, d, c);
    bool exact = exact_for(law, SupportKind::lift);
    McBudget budget = comparison_budget(c, exact);
    auto r = test_lift_swap_invariance(law, perms, grid, budget, options_of(c));
    o.result = to_json(r);
    o.pass = r.pass;
    o.table = direction_table(r.worst);
    if (r.pass)
    {
        auto diag = check_positivity_necessity(law, budget);
        o.result["positivity"] = to_json(diag);
        if (diag.fires)
            throw DiagnosticError("lift swap test passed but the positivity diagnostic fires: "
                                  "the verdict is a false positive");
    }
    return o;
}

struct StationarityArgs
{
    std::string process;
    std::vector<double> times;
    double shift = 0.0;
    bool cross_check = false;
    std::string mode = "max";
    std::size_t terms = 1000;
    std::size_t paths = 2000;
    std::size_t permutations = 200;
};

Outcome run_stationarity(const Common& c, const StationarityArgs& a)
{
    Outcome o;
    Json j = read_json_file(a.process);
    check_schema(j, a.process);
    GaussianProcess gp = process_from_json(j);
    require(!a.times.empty(), "--times must list at least one time");
    o.input = {{"process", to_json(gp)}, {"times", a.times}, {"shift", a.shift}};

    auto grid = grid_of(c, static_cast<int>(a.times.size()));
    auto model = ProcessModel::from(gp);
    auto law = gp.law_at(a.times);
    bool exact = exact_for(law, SupportKind::centred);
    McBudget budget = comparison_budget(c, exact);
    auto opts = options_of(c);

    if (gp.exponentiate)
    {
        auto br = brown_resnick_condition(brown_resnick_input(gp, a.times));
        o.result["brown_resnick"] = to_json(br);
    }
    if (a.cross_check)
    {
        LePageMode mode = a.mode == "sum" ? LePageMode::sum : LePageMode::max;
        require(a.mode == "sum" || a.mode == "max", "--mode must be sum or max");
        budget.seed = need_seed(c, "the cross-check simulates LePage processes");
        auto r = stationarity_cross_check(model, a.times, a.shift, grid, budget, opts, mode, a.terms, a.paths,
                                          a.permutations);
        o.result["stationarity"] = to_json(r);
        o.pass = r.pass;
        o.table = direction_table(r.zonoid);
        if (!r.agree)
            throw DiagnosticError("zonoid stationarity and simulated-process verdicts disagree");
        return o;
    }
    auto r = test_zonoid_stationarity(model, a.times, a.shift, grid, budget, opts);
    o.result["stationarity"] = to_json(r);
    o.pass = r.pass;
    o.table = direction_table(r);
    return o;
}

struct PairArgs
{
    std::string a, b;
    double tol = 1e-9;
};

Outcome run_levy_check(const Common&, const PairArgs& a)
{
    Outcome o;
    auto load = [](const std::string& path) {
        Json j = read_json_file(path);
        check_schema(j, path);
        return triplet_from_json(j);
    };
    auto t1 = load(a.a), t2 = load(a.b);
    o.input = {{"a", to_json(t1)}, {"b", to_json(t2)}, {"tol", a.tol}};
    auto r = check_log_id_equiv(t1, t2, a.tol);
    o.result = to_json(r);
    o.pass = r.pass;
    return o;
}

Outcome run_lognormal_check(const Common&, const PairArgs& a)
{
    Outcome o;
    LawModel la = load_law(a.a), lb = load_law(a.b);
    auto* l1 = std::get_if<LognormalLaw>(&la);
    auto* l2 = std::get_if<LognormalLaw>(&lb);
    require(l1 && l2, "lognormal-check needs two lognormal laws");
    o.input = {{"a", to_json(la)}, {"b", to_json(lb)}, {"tol", a.tol}};
    auto r = check_lognormal_equiv(*l1, *l2, a.tol);
    o.result = to_json(r);
    o.pass = r.pass;
    return o;
}

Outcome run_elliptical_check(const Common&, const PairArgs& a)
{
    Outcome o;
    LawModel la = load_law(a.a), lb = load_law(a.b);
    auto* e1 = std::get_if<EllipticalLaw>(&la);
    auto* e2 = std::get_if<EllipticalLaw>(&lb);
    require(e1 && e2, "elliptical-check needs two elliptical laws");
    o.input = {{"a", to_json(la)}, {"b", to_json(lb)}, {"tol", a.tol}};
    auto r = check_elliptical_equiv(*e1, *e2, a.tol);
    o.result = to_json(r);
    o.pass = r.pass;
    return o;
}

struct CfArgs
{
    std::string a, b;
    double tol = 1e-10;
    std::size_t count = 16;
    std::vector<double> w;
    std::string u_file;
};

Outcome run_cf_check(const Common& c, const CfArgs& a)
{
    Outcome o;
    LawModel la = load_law(a.a), lb = load_law(a.b);
    const int d = dim(la);
    require(dim(lb) == d, "laws differ in dimension");
    Vector w = a.w.empty() ? barycentre(d)
                           : Vector(Eigen::Map<const Vector>(a.w.data(), static_cast<Eigen::Index>(a.w.size())));
    std::vector<Vector> us;
    if (!a.u_file.empty())
        us = vectors_of(read_json_file(a.u_file), "u list");
    else
        us = zero_sum_directions(d, a.count, need_seed(c, "u directions are sampled"));
    us.insert(us.begin(), Vector::Zero(d));
    o.input = {{"a", to_json(la)}, {"b", to_json(lb)}, {"tol", a.tol}};
    auto r = cf_criterion(la, lb, us, w, a.tol);
    o.result = to_json(r);
    o.pass = r.pass;
    return o;
}

struct LePageArgs
{
    std::string driver;
    std::string mode = "sum";
    std::size_t terms = 10000;
    std::size_t paths = 1000;
    bool declared_symmetric = false;
    std::optional<double> upper_bound;
};

LePageConfig lepage_config(const Common& c, const LePageArgs& a, Outcome& o)
{
    LePageConfig cfg{load_law(a.driver), LePageMode::sum, 10000, 1000, 0, false, std::nullopt};
    require(a.mode == "sum" || a.mode == "max", "--mode must be sum or max");
    cfg.mode = a.mode == "sum" ? LePageMode::sum : LePageMode::max;
    cfg.terms = a.terms;
    cfg.paths = a.paths;
    cfg.seed = need_seed(c, "LePage series are simulated");
    cfg.declared_symmetric = a.declared_symmetric;
    cfg.upper_bound = a.upper_bound;
    o.input = {{"driver", to_json(cfg.driver)},
               {"mode", to_string(cfg.mode)},
               {"terms", cfg.terms},
               {"paths", cfg.paths}};
    return cfg;
}

Outcome run_lepage(const Common& c, const LePageArgs& a)
{
    Outcome o;
    auto cfg = lepage_config(c, a, o);
    auto sim = simulate_lepage(cfg);
    const auto d = sim.values.cols();

    CsvTable t;
    t.header.push_back("path");
    for (Eigen::Index i = 0; i < d; ++i)
        t.header.push_back("x_" + std::to_string(i + 1));
    t.header.push_back("tail_start");
    t.header.push_back("terms_used");
    for (Eigen::Index p = 0; p < sim.values.rows(); ++p)
    {
        std::vector<double> row{static_cast<double>(p)};
        for (Eigen::Index i = 0; i < d; ++i)
            row.push_back(sim.values(p, i));
        row.push_back(sim.tail_start[p]);
        row.push_back(static_cast<double>(sim.terms_used[p]));
        t.add_row(row);
    }
    o.table = std::move(t);

    Json cols = Json::array();
    for (Eigen::Index i = 0; i < d; ++i)
    {
        std::vector<double> col(sim.values.col(i).data(), sim.values.col(i).data() + sim.values.rows());
        cols.push_back({{"median", median(col)}, {"q05", quantile(col, 0.05)}, {"q95", quantile(col, 0.95)}});
    }
    o.result = {{"paths", sim.values.rows()},
                {"coordinates", cols},
                {"median_tail_start", median(sim.tail_start)},
                {"notes", sim.notes}};
    if (!sim.last_increment.empty())
        o.result["median_last_increment"] = median(sim.last_increment);
    return o;
}

struct CfIdentityArgs
{
    LePageArgs lepage;
    std::vector<double> u;
    std::string u_file;
    double tol = 0.01;
    std::size_t resamples = 200;
};

Outcome run_cf_identity(const Common& c, const CfIdentityArgs& a)
{
    Outcome o;
    auto cfg = lepage_config(c, a.lepage, o);
    require(cfg.mode == LePageMode::sum, "cf-identity applies to the sum-mode series");
    const int d = dim(cfg.driver);
    std::vector<Vector> us;
    if (!a.u_file.empty())
        us = vectors_of(read_json_file(a.u_file), "u list");
    else
    {
        require(d == 1 || a.u.empty(), "--u lists scalars; use --u-file for d > 1");
        for (double x : a.u)
            us.push_back(Vector::Constant(1, x));
        if (us.empty())
            us = grid_of(c, d).directions();
    }
    McBudget budget = budget_of(c, !exact_for(cfg.driver, SupportKind::centred));
    budget.seed = cfg.seed;
    auto r = cf_check(cfg, us, budget, a.resamples);
    o.result = to_json(r);
    o.result["tol"] = a.tol;
    o.pass = r.sup_discrepancy <= a.tol;
    o.result["verdict"] = o.pass ? "pass" : "fail";
    return o;
}

struct ErgodicArgs
{
    std::string model;
    std::vector<std::size_t> checkpoints;
    std::size_t paths = 50;
    std::optional<std::size_t> limit_formula;
};

Outcome run_ergodic(const Common& c, const ErgodicArgs& a)
{
    Outcome o;
    Json j = read_json_file(a.model);
    check_schema(j, a.model);
    auto model = sequence_from_json(j);
    auto checkpoints = a.checkpoints.empty() ? default_checkpoints() : a.checkpoints;
    const auto seed = need_seed(c, "sequence paths are simulated");
    o.input = {{"model", to_json(model)}, {"checkpoints", checkpoints}, {"paths", a.paths}};
    if (auto* m = std::get_if<LognormalSwap>(&model))
        o.result["discarded_tail_mass"] = m->discarded_tail();

    auto run = run_averages(model, checkpoints, a.paths, seed);
    CsvTable t;
    t.header = {"path", "checkpoint", "average", "oracle", "abs_error"};
    for (const auto& p : run.paths)
        for (std::size_t i = 0; i < checkpoints.size(); ++i)
        {
            double oracle = p.oracle.value_or(NAN);
            t.add_row({static_cast<double>(p.index), static_cast<double>(checkpoints[i]), p.averages[i], oracle,
                       std::abs(p.averages[i] - oracle)});
        }
    o.table = std::move(t);

    if (run.has_oracle)
        o.result["l1"] = to_json(l1_diagnostic(run));
    else
        o.result["cauchy"] = to_json(cauchy_diagnostic(model, checkpoints, a.paths, seed));

    if (a.limit_formula)
    {
        auto* m = std::get_if<LognormalSwap>(&model);
        require(m != nullptr, "--limit-formula needs a lognormal_swap model");
        auto r = limit_formula_check(*m, a.paths, *a.limit_formula, seed);
        o.result["limit_formula"] = to_json(r);
        o.pass = r.identity_holds;
    }
    return o;
}

struct LocScaleArgs
{
    std::string base = "normal";
    std::optional<double> location, scale;
    std::optional<double> mean, positive_part;
    std::size_t samples = 1000000;
    double rel_tol = 1e-10;
};

Outcome run_locscale(const Common& c, const LocScaleArgs& a)
{
    Outcome o;
    auto base = base_from_string(a.base);
    LocationScaleData observed;
    const auto seed = need_seed(c, "the scale search uses a frozen Monte Carlo sample");
    if (a.location || a.scale)
    {
        require(a.location && a.scale, "--location and --scale go together");
        LocationScaleLaw truth(base, *a.location, *a.scale);
        observed = location_scale_data(truth, a.samples, seed ^ 0x5bd1e995ULL);
        o.input = {{"law", to_json(LawModel(truth))}};
    }
    else
    {
        require(a.mean && a.positive_part, "supply --mean and --positive-part, or --location and --scale");
        observed = {*a.mean, *a.positive_part};
    }
    o.input["base"] = to_string(base);
    o.input["observed"] = {{"mean", observed.mean}, {"positive_part_mean", observed.positive_part_mean}};
    auto r = recover_location_scale(base, observed, a.samples, seed, a.rel_tol);
    o.result = to_json(r);
    return o;
}

Outcome run_zonotope(const Common& c, const std::string& path)
{
    Outcome o;
    LawModel law = load_law(path);
    auto* d = std::get_if<DiscreteLaw>(&law);
    require(d != nullptr, "zonotope needs a discrete law");
    o.input["law"] = to_json(law);
    auto z = zonotope_2d(*d);
    o.result = to_json(z);

    auto grid = grid_of(c, 2);
    double worst = 0.0;
    for (const auto& u : grid.directions())
    {
        double h = *exact_support(law, SupportKind::centred, u);
        worst = std::max(worst, std::abs(z.vertex_support(u) - h));
    }
    o.result["max_support_gap"] = worst;
    o.pass = worst <= kExactTol;

    CsvTable t;
    t.header = {"x", "y"};
    for (const auto& v : z.vertices())
        t.add_row({v[0], v[1]});
    o.table = std::move(t);
    return o;
}

struct MeanWidthArgs
{
    std::string law;
    std::size_t nodes = 0;
    double tol = 1e-6;
};

Outcome run_mean_width(const Common& c, const MeanWidthArgs& a)
{
    Outcome o;
    LawModel law = load_law(a.law);
    o.input = {{"law", to_json(law)}, {"nodes", a.nodes}};
    auto quad = SphereQuadrature::standard(dim(law), a.nodes);
    bool exact = exact_for(law, SupportKind::centred) && exact_mean(law).has_value() &&
                 std::holds_alternative<DiscreteLaw>(law);
    McBudget budget = budget_of(c, !exact || c.force_mc);
    auto r = mean_width_check(law, quad, budget);
    o.result = to_json(r);
    double allowed = a.tol + c.tau * r.difference_se;
    o.result["allowed_difference"] = allowed;
    o.pass = r.abs_difference <= allowed;
    o.result["verdict"] = o.pass ? "pass" : "fail";
    return o;
}

//---------------------------------------------------------------------------//

void emit(const Common& c, const std::string& command, Outcome& o)
{
    Json doc;
    doc["schema"] = kSchemaVersion;
    doc["command"] = command;
    doc["input"] = o.input;
    doc["manifest"] = run_manifest(c.seed, {{"command", command}, {"input", o.input}});
    doc["result"] = o.result;
    doc["pass"] = o.pass;
    std::string text = doc.dump(2) + "\n";
    if (c.out.empty())
        std::cout << text;
    else
        write_text_file(c.out, text);
    if (!c.csv.empty())
    {
        require(o.table.has_value(), "this subcommand has no CSV table");
        write_csv(c.csv, *o.table);
    }
}

void add_common(CLI::App* sub, Common& c, bool grid, bool stats)
{
    sub->add_option("--out", c.out, "Report path (default: stdout)");
    sub->add_option("--csv", c.csv, "Per-direction / per-path CSV table");
    sub->add_option("--seed", c.seed, "Master seed");
    sub->add_option("--threads", c.threads, "Worker threads (0: all cores)");
    if (grid)
    {
        sub->add_option("--grid", c.grid, "Number of grid directions (0: default)");
        sub->add_option("--grid-file", c.grid_file, "JSON list of directions");
    }
    if (stats)
    {
        sub->add_option("--budget", c.budget, "Monte Carlo samples");
        sub->add_option("--tau", c.tau, "Threshold on max |delta| / SE");
        sub->add_flag("--bonferroni", c.bonferroni, "Bonferroni-adjust tau for the grid size");
        sub->add_flag("--force-mc", c.force_mc, "Monte Carlo even where closed forms exist");
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Zonoids of random vectors: support functions, invariance tests, stable series"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(ZONOID_VERSION));
    Common c;

    SupportArgs support;
    auto* s_support = app.add_subcommand("support", "Support function of a zonoid");
    add_common(s_support, c, true, true);
    s_support->add_option("--law", support.law)->required();
    s_support->add_option("--kind", support.kind, "centred|noncentred|lift|max");
    s_support->add_option("--k", support.k, "Lift coordinate");
    s_support->add_option("--u", support.u, "Single direction")->delimiter(',');

    EquivArgs equiv;
    auto* s_equiv = app.add_subcommand("equiv", "Zonoid equivalence of two laws");
    add_common(s_equiv, c, true, true);
    s_equiv->add_option("--law-a", equiv.law_a)->required();
    s_equiv->add_option("--law-b", equiv.law_b)->required();
    s_equiv->add_flag("--max", equiv.max, "Compare max-zonoids (positive laws)");

    SwapArgs swap;
    auto* s_swap = app.add_subcommand("swap", "Swap-invariance");
    add_common(s_swap, c, true, true);
    s_swap->add_option("--law", swap.law)->required();
    s_swap->add_option("--perms", swap.perms, "all | count | 1,0,2;2,1,0");
    s_swap->add_flag("--relations", swap.relations, "Also test the measure-change relations (discrete)");

    LiftSwapArgs lift_swap;
    auto* s_lift = app.add_subcommand("lift-swap", "Lift swap-invariance of (1, xi)");
    add_common(s_lift, c, true, true);
    s_lift->add_option("--law", lift_swap.law)->required();
    s_lift->add_option("--perms", lift_swap.perms, "all | count | explicit (on d+1 coordinates)");

    StationarityArgs stat;
    auto* s_stat = app.add_subcommand("stationarity", "Zonoid stationarity of a process");
    add_common(s_stat, c, true, true);
    s_stat->add_option("--process", stat.process)->required();
    s_stat->add_option("--times", stat.times)->delimiter(',')->required();
    s_stat->add_option("--shift", stat.shift)->required();
    s_stat->add_flag("--cross-check", stat.cross_check, "Also compare simulated LePage processes");
    s_stat->add_option("--mode", stat.mode, "sum|max for the cross-check");
    s_stat->add_option("--terms", stat.terms);
    s_stat->add_option("--paths", stat.paths);
    s_stat->add_option("--permutations", stat.permutations);

    PairArgs levy;
    auto* s_levy = app.add_subcommand("levy-check", "Levy-triplet equivalence of exp(xi)");
    add_common(s_levy, c, false, false);
    s_levy->add_option("--a", levy.a)->required();
    s_levy->add_option("--b", levy.b)->required();
    s_levy->add_option("--tol", levy.tol);

    PairArgs logn;
    auto* s_logn = app.add_subcommand("lognormal-check", "Lognormal equivalence conditions");
    add_common(s_logn, c, false, false);
    s_logn->add_option("--a", logn.a)->required();
    s_logn->add_option("--b", logn.b)->required();
    s_logn->add_option("--tol", logn.tol);

    PairArgs ell;
    auto* s_ell = app.add_subcommand("elliptical-check", "Elliptical equivalence");
    add_common(s_ell, c, false, false);
    s_ell->add_option("--a", ell.a)->required();
    s_ell->add_option("--b", ell.b)->required();
    s_ell->add_option("--tol", ell.tol);

    CfArgs cf;
    auto* s_cf = app.add_subcommand("cf-check", "Characteristic functions at u - i w");
    add_common(s_cf, c, false, false);
    s_cf->add_option("--a", cf.a)->required();
    s_cf->add_option("--b", cf.b)->required();
    s_cf->add_option("--tol", cf.tol);
    s_cf->add_option("--count", cf.count, "Number of sampled zero-sum u");
    s_cf->add_option("--w", cf.w, "Weights summing to 1")->delimiter(',');
    s_cf->add_option("--u-file", cf.u_file, "JSON list of u vectors");

    LePageArgs lepage;
    auto* s_lepage = app.add_subcommand("lepage", "Simulate a LePage series");
    add_common(s_lepage, c, false, false);
    s_lepage->add_option("--driver", lepage.driver)->required();
    s_lepage->add_option("--mode", lepage.mode, "sum|max");
    s_lepage->add_option("--terms", lepage.terms);
    s_lepage->add_option("--paths", lepage.paths);
    s_lepage->add_flag("--declared-symmetric", lepage.declared_symmetric);
    s_lepage->add_option("--upper-bound", lepage.upper_bound);

    CfIdentityArgs cfi;
    auto* s_cfi = app.add_subcommand("cf-identity", "Empirical CF of the 1-stable series vs its zonoid");
    add_common(s_cfi, c, true, true);
    s_cfi->add_option("--driver", cfi.lepage.driver)->required();
    s_cfi->add_option("--terms", cfi.lepage.terms);
    s_cfi->add_option("--paths", cfi.lepage.paths);
    s_cfi->add_flag("--declared-symmetric", cfi.lepage.declared_symmetric);
    s_cfi->add_option("--u", cfi.u, "Scalar u values (d = 1)")->delimiter(',');
    s_cfi->add_option("--u-file", cfi.u_file);
    s_cfi->add_option("--tol", cfi.tol);
    s_cfi->add_option("--resamples", cfi.resamples);

    ErgodicArgs erg;
    auto* s_erg = app.add_subcommand("ergodic", "Partial-sum averages of swap-invariant sequences");
    add_common(s_erg, c, false, false);
    s_erg->add_option("--model", erg.model)->required();
    s_erg->add_option("--checkpoints", erg.checkpoints)->delimiter(',');
    s_erg->add_option("--paths", erg.paths);
    s_erg->add_option("--limit-formula", erg.limit_formula, "Prefix length for the limit-formula check");

    LocScaleArgs ls;
    auto* s_ls = app.add_subcommand("locscale-recover", "Location and scale from zonoid data");
    add_common(s_ls, c, false, false);
    s_ls->add_option("--base", ls.base, "normal|laplace|uniform|shifted_exponential");
    s_ls->add_option("--location", ls.location);
    s_ls->add_option("--scale", ls.scale);
    s_ls->add_option("--mean", ls.mean, "Observed E xi");
    s_ls->add_option("--positive-part", ls.positive_part, "Observed E xi_+");
    s_ls->add_option("--samples", ls.samples);
    s_ls->add_option("--rel-tol", ls.rel_tol);

    std::string zonotope_law;
    auto* s_zono = app.add_subcommand("zonotope", "Centred zonoid polygon of a planar discrete law");
    add_common(s_zono, c, true, false);
    s_zono->add_option("--law", zonotope_law)->required();

    MeanWidthArgs mw;
    auto* s_mw = app.add_subcommand("mean-width", "Mean-width identity for E|xi|");
    add_common(s_mw, c, false, true);
    s_mw->add_option("--law", mw.law)->required();
    s_mw->add_option("--nodes", mw.nodes, "Quadrature nodes (0: default)");
    s_mw->add_option("--tol", mw.tol);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitConfig;
    }

    try
    {
        set_worker_count(c.threads);
        auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        Outcome o;
        if (sub == s_support)
            o = run_support(c, support);
        else if (sub == s_equiv)
            o = run_equiv(c, equiv);
        else if (sub == s_swap)
            o = run_swap(c, swap);
        else if (sub == s_lift)
            o = run_lift_swap(c, lift_swap);
        else if (sub == s_stat)
            o = run_stationarity(c, stat);
        else if (sub == s_levy)
            o = run_levy_check(c, levy);
        else if (sub == s_logn)
            o = run_lognormal_check(c, logn);
        else if (sub == s_ell)
            o = run_elliptical_check(c, ell);
        else if (sub == s_cf)
            o = run_cf_check(c, cf);
        else if (sub == s_lepage)
            o = run_lepage(c, lepage);
        else if (sub == s_cfi)
            o = run_cf_identity(c, cfi);
        else if (sub == s_erg)
            o = run_ergodic(c, erg);
        else if (sub == s_ls)
            o = run_locscale(c, ls);
        else if (sub == s_zono)
            o = run_zonotope(c, zonotope_law);
        else
            o = run_mean_width(c, mw);
        emit(c, name, o);
        return o.pass ? kExitPass : kExitFail;
    }
    catch (const ConfigError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const nlohmann::json::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const DiagnosticError& e)
    {
        std::cerr << "diagnostic: " << e.what() << "\n";
        return kExitDiagnostic;
    }
    catch (const std::range_error& e)
    {
        std::cerr << "diagnostic: " << e.what() << "\n";
        return kExitDiagnostic;
    }
    catch (const std::exception& e)
    {
        std::cerr << "diagnostic: " << e.what() << "\n";
        return kExitDiagnostic;
    }
}
