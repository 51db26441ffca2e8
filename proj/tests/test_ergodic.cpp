#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "zonoid/ergodic.hpp"
#include "zonoid/error.hpp"
#include "zonoid/stats.hpp"

using namespace zonoid;

TEST_CASE("dacunha-castelle averages on a fixed omega")
{
    auto p = dacunha_castelle_prefix(0.3, 120);
    CompensatedSum s;
    std::vector<double> avg;
    for (std::size_t i = 0; i < 120; ++i)
    {
        s.add(p.values[i]);
        if (i + 1 == 4 || i + 1 == 12 || i + 1 == 120)
            avg.push_back(s.value() / double(i + 1));
    }
    CHECK(avg == std::vector<double>{3.0, 1.0, 0.1});
}

TEST_CASE("run_averages matches sequence prefixes")
{
    for (SequenceModel m : {SequenceModel(DaCunhaCastelle{}), SequenceModel(LognormalSwap::make({0.5, 0.2}))})
    {
        auto run = run_averages(m, {3, 10, 40}, 5, 77);
        for (std::size_t p = 0; p < 5; ++p)
        {
            auto path = sequence_prefix(m, 40, 77, p);
            CompensatedSum s;
            std::size_t c = 0;
            for (std::size_t i = 1; i <= 40; ++i)
            {
                s.add(path.values[i - 1]);
                if (i == run.checkpoints[c])
                {
                    CHECK(run.paths[p].averages[c] == doctest::Approx(s.value() / double(i)).epsilon(1e-14));
                    ++c;
                }
            }
            CHECK(*run.paths[p].oracle == doctest::Approx(*oracle_limit(m, path)).epsilon(1e-15));
        }
        auto again = run_averages(m, {3, 10, 40}, 5, 77);
        for (std::size_t p = 0; p < 5; ++p)
            CHECK(again.paths[p].averages == run.paths[p].averages);
    }
}

TEST_CASE("oracle limits")
{
    SequenceModel dac = DaCunhaCastelle{};
    CHECK(*oracle_limit(dac, dacunha_castelle_prefix(0.4, 3)) == 0.0);

    auto m = LognormalSwap::make({0.5, 0.0, 0.0});
    SequencePath s;
    s.drivers = {0.0, 0.3, -1.0};
    CHECK(*oracle_limit(SequenceModel(m), s) == doctest::Approx(std::exp(-0.125)).epsilon(1e-15));

    Matrix atoms(2, 1);
    atoms << 1, 4;
    SequenceModel iid = IidSequence{DiscreteLaw(atoms, {0.5, 0.5})};
    CHECK(*oracle_limit(iid, SequencePath{}) == 2.5);
    CustomLaw c;
    c.draw = [](RngStream& r, RngStream&, double* row) { row[0] = r.normal(); };
    CHECK_FALSE(oracle_limit(SequenceModel(IidSequence{c}), SequencePath{}).has_value());
}

TEST_CASE("lognormal-swap with zero coupling converges to one")
{
    auto run = run_averages(SequenceModel(LognormalSwap::make({0.0})), {100, 10000}, 20, 3);
    auto l1 = l1_diagnostic(run);
    CHECK(l1.median_abs_error[1] < l1.median_abs_error[0]);
    CHECK(l1.median_abs_error[1] < 0.05);
}

TEST_CASE("dacunha-castelle converges almost surely but not in mean")
{
    auto run = run_averages(SequenceModel(DaCunhaCastelle{}), default_checkpoints(), 200000, 9);
    auto l1 = l1_diagnostic(run);
    for (std::size_t c = 0; c < l1.checkpoints.size(); ++c)
        CHECK(std::abs(l1.mean_average[c] - 1.0) <= 4.0 * l1.mean_average_se[c]);
    CHECK(l1.median_average.back() <= 1e-3);
}

TEST_CASE("iid sequence error decays at the CLT rate")
{
    Matrix atoms(2, 1);
    atoms << 0, 2;
    SequenceModel iid = IidSequence{DiscreteLaw(atoms, {0.5, 0.5})};
    auto run = run_averages(iid, {100, 1000, 10000}, 400, 5);
    auto l1 = l1_diagnostic(run);
    std::vector<double> n{100, 1000, 10000};
    double slope = loglog_slope(n, l1.mean_abs_error);
    CHECK(slope >= -0.6);
    CHECK(slope <= -0.4);
}

TEST_CASE("models without an oracle use the cauchy diagnostic")
{
    CustomLaw c;
    c.draw = [](RngStream& r, RngStream&, double* row) { row[0] = r.normal(); };
    SequenceModel m = IidSequence{c};
    auto run = run_averages(m, {10, 100}, 4, 1);
    CHECK_FALSE(run.has_oracle);
    CHECK_THROWS_AS(l1_diagnostic(run), ConfigError);
    auto d = cauchy_diagnostic(m, {100, 1000, 10000}, 50, 2);
    CHECK(d.decreasing);
}

TEST_CASE("limit formula identity")
{
    auto m = LognormalSwap::make({0.5, 0.0});
    auto r = limit_formula_check(m, 20, 100, 4);
    CHECK(r.identity_holds);
    CHECK(r.max_relative_gap <= 1e-12);

    // Z_1 = 1: the formula equals e^{0.5 - 0.125}
    double z1 = 1.0, b1 = 0.5;
    double eta1 = std::exp(z1 + b1 * z1 - 0.5 * (1 + b1 * b1 + 2 * b1));
    double c1 = std::exp((1 + b1) * z1) * std::exp(-(1 + b1 * b1 + 2 * b1) / 2);
    double c2 = std::exp(b1 * z1) * std::exp(-b1 * b1 / 2);
    CHECK(eta1 / c1 * c2 == doctest::Approx(std::exp(0.375)).epsilon(1e-15));

    auto zero = limit_formula_check(LognormalSwap::make({0.0}), 10, 10, 1);
    for (const auto& p : zero.paths)
        CHECK(p.formula == doctest::Approx(1.0).epsilon(1e-15));
}
