#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "zonoid/error.hpp"
#include "zonoid/lepage.hpp"
#include "zonoid/parallel.hpp"

using namespace zonoid;

namespace
{
Vector vec(std::initializer_list<double> v)
{
    Vector out(v.size());
    Eigen::Index i = 0;
    for (double x : v)
        out[i++] = x;
    return out;
}

LawModel rademacher()
{
    Matrix a(2, 1);
    a << -1, 1;
    return DiscreteLaw(a, {0.5, 0.5});
}

LePageConfig config(LawModel driver, LePageMode mode, std::size_t terms, std::size_t paths, std::uint64_t seed)
{
    LePageConfig cfg{std::move(driver)};
    cfg.mode = mode;
    cfg.terms = terms;
    cfg.paths = paths;
    cfg.seed = seed;
    return cfg;
}
}  // namespace

TEST_CASE("single-term series")
{
    auto cfg = config(DiscreteLaw::point_mass(vec({2})), LePageMode::max, 1, 50, 3);
    auto r = simulate_lepage(cfg);
    for (Eigen::Index p = 0; p < 50; ++p)
        CHECK(r.values(p, 0) == doctest::Approx(2.0 * r.tail_start[p]).epsilon(1e-15));

    auto s = simulate_lepage(config(rademacher(), LePageMode::sum, 1, 50, 3));
    for (Eigen::Index p = 0; p < 50; ++p)
        CHECK(std::abs(s.values(p, 0)) == doctest::Approx(s.tail_start[p]).epsilon(1e-15));
}

TEST_CASE("max mode with a point mass driver has unit Frechet marginals")
{
    const std::size_t paths = 100000;
    auto r = simulate_lepage(config(DiscreteLaw::point_mass(vec({1, 1})), LePageMode::max, 1000, paths, 5));
    double below = 0.0;
    for (Eigen::Index p = 0; p < r.values.rows(); ++p)
    {
        below += r.values(p, 0) <= 1.0;
        CHECK(r.values(p, 0) == r.values(p, 1));
    }
    double prob = below / paths;
    double target = std::exp(-1.0);
    CHECK(std::abs(prob - target) <= 3.0 * std::sqrt(target * (1 - target) / paths));
}

TEST_CASE("max mode is monotone in the truncation")
{
    Matrix atoms(3, 2);
    atoms << 0.5, 2, 1, 1, 2, 0.25;
    LawModel driver = DiscreteLaw(atoms, {0.3, 0.3, 0.4});
    Matrix prev;
    for (std::size_t n : {1, 5, 50, 500})
    {
        auto r = simulate_lepage(config(driver, LePageMode::max, n, 200, 8));
        if (prev.size())
            CHECK((r.values.array() >= prev.array()).all());
        prev = r.values;
    }
}

TEST_CASE("sum mode scales with the driver")
{
    auto a = simulate_lepage(config(rademacher(), LePageMode::sum, 500, 100, 4));
    Matrix m(2, 1);
    m << -3, 3;
    auto b = simulate_lepage(config(DiscreteLaw(m, {0.5, 0.5}), LePageMode::sum, 500, 100, 4));
    for (Eigen::Index p = 0; p < 100; ++p)
        CHECK(b.values(p, 0) == doctest::Approx(3.0 * a.values(p, 0)).epsilon(1e-13));
}

TEST_CASE("sum mode refuses non-symmetric drivers")
{
    Matrix a(2, 1);
    a << -1, 2;
    auto cfg = config(DiscreteLaw(a, {0.5, 0.5}), LePageMode::sum, 10, 10, 1);
    CHECK_THROWS_AS(simulate_lepage(cfg), ConfigError);
    auto neg = config(rademacher(), LePageMode::max, 10, 10, 1);
    CHECK_THROWS_AS(simulate_lepage(neg), ConfigError);
}

TEST_CASE("results do not depend on the worker count")
{
    auto cfg = config(rademacher(), LePageMode::sum, 300, 64, 12);
    set_worker_count(1);
    auto a = simulate_lepage(cfg);
    set_worker_count(3);
    auto b = simulate_lepage(cfg);
    set_worker_count(0);
    CHECK(a.values == b.values);
}

TEST_CASE("cf check with a rademacher driver")
{
    auto cfg = config(rademacher(), LePageMode::sum, 2000, 20000, 6);
    auto r = cf_check(cfg, {vec({0}), vec({0.5}), vec({1}), vec({2})}, McBudget{});
    REQUIRE(r.entries.size() == 4);
    CHECK(r.entries[0].empirical.real() == 1.0);
    CHECK(r.entries[0].predicted == 1.0);
    CHECK(r.entries[1].predicted == doctest::Approx(std::exp(-M_PI / 4)).epsilon(1e-14));
    CHECK(r.entries[2].predicted == doctest::Approx(std::exp(-M_PI / 2)).epsilon(1e-14));
    CHECK(r.entries[3].predicted == doctest::Approx(std::exp(-M_PI)).epsilon(1e-14));
    for (const auto& e : r.entries)
    {
        CHECK(std::abs(e.empirical) <= 1.0 + 1e-15);
        CHECK(e.discrepancy <= 4.0 * e.bootstrap_se + 1e-3);
    }
}

TEST_CASE("degenerate direction of a two-atom symmetric driver")
{
    Matrix a(2, 2);
    a << 1, 1, -1, -1;
    auto cfg = config(DiscreteLaw(a, {0.5, 0.5}), LePageMode::sum, 100, 500, 2);
    auto r = cf_check(cfg, {vec({1, -1})}, McBudget{});
    CHECK(r.entries[0].predicted == 1.0);
    CHECK(r.entries[0].discrepancy <= 1e-12);
}

TEST_CASE("equivalent lognormal drivers give indistinguishable max-stable laws")
{
    Matrix b(2, 2);
    b << 2, 1, 1, 2;
    LawModel la = LognormalLaw(GaussianLaw(vec({-0.5, -0.5}), Matrix::Identity(2, 2)));
    LawModel lb = LognormalLaw(GaussianLaw(vec({-1, -1}), b));
    auto ra = simulate_lepage(config(la, LePageMode::max, 300, 3000, 1));
    auto rb = simulate_lepage(config(lb, LePageMode::max, 300, 3000, 2));
    auto dirs = DirectionGrid::axis_and_diagonals(2).directions();
    auto t = two_sample_projection_test(ra.values, rb.values, dirs, 200, 0.99, 3);
    CHECK(t.pass);

    LawModel lc = LognormalLaw(GaussianLaw(vec({0.5, -0.5}), Matrix::Identity(2, 2)));
    auto rc = simulate_lepage(config(lc, LePageMode::max, 300, 3000, 2));
    CHECK_FALSE(two_sample_projection_test(ra.values, rc.values, dirs, 200, 0.99, 3).pass);
}

TEST_CASE("stationarity cross-check")
{
    GaussianProcess gbm;
    gbm.mean.kind = MeanFunction::Kind::neg_half_variance;
    std::vector<double> t{0, 1};
    auto grid = DirectionGrid::standard(2);
    McBudget b{200000, 4, false};
    auto pass = stationarity_cross_check(ProcessModel::from(gbm), t, 2.0, grid, b, {}, LePageMode::max, 300, 2000);
    CHECK(pass.zonoid.pass);
    CHECK(pass.simulated.pass);
    CHECK(pass.agree);

    GaussianProcess drift = gbm;
    drift.mean.kind = MeanFunction::Kind::constant;
    auto fail = stationarity_cross_check(ProcessModel::from(drift), t, 2.0, grid, b, {}, LePageMode::max, 300, 2000);
    CHECK_FALSE(fail.zonoid.pass);
    CHECK_FALSE(fail.simulated.pass);
    CHECK(fail.agree);

    GaussianProcess constant;
    constant.kernel.kind = CovarianceKernel::Kind::constant;
    constant.mean.kind = MeanFunction::Kind::neg_half_variance;
    auto c = stationarity_cross_check(ProcessModel::from(constant), t, 2.0, grid, b, {}, LePageMode::max, 300, 2000);
    CHECK(c.pass);
}
