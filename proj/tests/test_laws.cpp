#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>

#include "zonoid/error.hpp"
#include "zonoid/laws.hpp"
#include "zonoid/parallel.hpp"
#include "zonoid/sequence.hpp"
#include "zonoid/stats.hpp"

using namespace zonoid;

namespace
{
Matrix mat(std::initializer_list<std::initializer_list<double>> rows)
{
    Matrix m(rows.size(), rows.begin()->size());
    Eigen::Index i = 0;
    for (auto r : rows)
    {
        Eigen::Index k = 0;
        for (double v : r)
            m(i, k++) = v;
        ++i;
    }
    return m;
}

Vector vec(std::initializer_list<double> v)
{
    Vector out(v.size());
    Eigen::Index i = 0;
    for (double x : v)
        out[i++] = x;
    return out;
}
}  // namespace

TEST_CASE("point mass samples are copies of the atom")
{
    LawModel law = DiscreteLaw(mat({{1, 0}}), {1.0});
    Matrix x = sample(law, 3, 11);
    CHECK(x.rows() == 3);
    for (int i = 0; i < 3; ++i)
    {
        CHECK(x(i, 0) == 1.0);
        CHECK(x(i, 1) == 0.0);
    }
}

TEST_CASE("discrete law validation")
{
    CHECK_THROWS_AS(DiscreteLaw(mat({{1}, {2}}), {0.5, 0.6}), ConfigError);
    CHECK_THROWS_AS(DiscreteLaw(mat({{1}, {2}}), {-0.5, 1.5}), ConfigError);
    CHECK_THROWS_AS(DiscreteLaw(mat({{1}, {2}}), {0.0, 0.0}), ConfigError);
    CHECK_NOTHROW(DiscreteLaw(mat({{1}, {2}}), {0.25, 0.75}));
}

TEST_CASE("discrete sampling frequencies pass a chi-square test")
{
    std::vector<double> w{0.1, 0.2, 0.3, 0.4};
    LawModel law = DiscreteLaw(mat({{0}, {1}, {2}, {3}}), w);
    const std::size_t n = 100000;
    Matrix x = sample(law, n, 5);
    std::vector<double> count(4, 0.0);
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        count[static_cast<std::size_t>(x(i, 0))] += 1.0;
    double stat = 0.0;
    for (int k = 0; k < 4; ++k)
    {
        double e = w[k] * n;
        stat += (count[k] - e) * (count[k] - e) / e;
    }
    boost::math::chi_squared chi(3);
    CHECK(stat <= boost::math::quantile(chi, 0.99));
}

TEST_CASE("gaussian sample mean and covariance")
{
    LawModel law = GaussianLaw(vec({0, 0}), mat({{1, 0}, {0, 1}}));
    const std::size_t n = 1000000;
    Matrix x = sample(law, n, 17);
    for (int k = 0; k < 2; ++k)
        CHECK(std::abs(x.col(k).mean()) <= 4.0 / std::sqrt(double(n)));

    Matrix a = mat({{2, 0.5}, {0.5, 1}});
    LawModel g = GaussianLaw(vec({1, -1}), a);
    Matrix y = sample(g, 200000, 3);
    Vector m = y.colwise().mean().transpose();
    Matrix c = y.rowwise() - m.transpose();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
        {
            Vector prod = c.col(i).cwiseProduct(c.col(j));
            auto ms = mean_se({prod.data(), static_cast<std::size_t>(prod.size())});
            CHECK(std::abs(ms.mean - a(i, j)) <= 4.0 * ms.std_error);
        }
}

TEST_CASE("gaussian covariance validation")
{
    CHECK_THROWS_AS(GaussianLaw(vec({0, 0}), mat({{1, 2}, {2, 1}})), ConfigError);
    CHECK_THROWS_AS(GaussianLaw(vec({0, 0}), mat({{1, 0.1}, {0, 1}})), ConfigError);
    // float noise below the PSD tolerance is clipped
    CHECK_NOTHROW(GaussianLaw(vec({0, 0}), mat({{1, 1}, {1, 1 - 1e-13}})));
}

TEST_CASE("lognormal-swap marginals have unit mean")
{
    auto model = LognormalSwap::make({0.5, 0.0, 0.0});
    auto law = lognormal_swap_marginal(model, 3);
    Vector m = law.mean();
    for (int i = 0; i < 3; ++i)
        CHECK(m[i] == doctest::Approx(1.0).epsilon(1e-14));
    Matrix x = sample(LawModel(law), 400000, 9);
    CHECK(x.minCoeff() > 0.0);
    for (int i = 0; i < 3; ++i)
    {
        Vector c = x.col(i);
        auto ms = mean_se({c.data(), static_cast<std::size_t>(c.size())});
        CHECK(std::abs(ms.mean - 1.0) <= 4.0 * ms.std_error);
    }
}

TEST_CASE("dacunha-castelle prefix")
{
    auto p = dacunha_castelle_prefix(0.3, 5);
    CHECK(p.values == std::vector<double>{0, 0, 12, 0, 0});
    auto q = dacunha_castelle_prefix(0.9, 5);
    CHECK(q.values == std::vector<double>{2, 0, 0, 0, 0});
    CHECK(dacunha_castelle_index(1.0) == 1);
    CHECK(dacunha_castelle_index(0.5) == 2);
    CHECK(dacunha_castelle_index(1.0 / 3.0) == 3);

    SequenceModel m = DaCunhaCastelle{};
    for (std::uint64_t path = 0; path < 200; ++path)
    {
        auto s = sequence_prefix(m, 50, 1, path);
        int nonzero = 0;
        for (double v : s.values)
            nonzero += v != 0.0;
        auto k = dacunha_castelle_index(*s.omega);
        CHECK(nonzero == (k <= 50 ? 1 : 0));
    }
}

TEST_CASE("lognormal-swap with zero coupling is iid standard lognormal times e^{-1/2}")
{
    auto model = LognormalSwap::make({0.0, 0.0});
    CHECK(model.drift(1) == -0.5);
    CHECK(model.drift(7) == -0.5);
    auto s = sequence_prefix(SequenceModel(model), 4, 3, 0);
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(s.values[i] == doctest::Approx(std::exp(s.drivers[i] - 0.5)).epsilon(1e-15));
}

TEST_CASE("lognormal-swap truncation reports the discarded tail")
{
    auto model = LognormalSwap::make({0.5, 0.3, 0.1}, 1);
    CHECK(model.coupling_sq() == 0.25);
    CHECK(model.discarded_tail() == doctest::Approx(0.1));
    CHECK(model.b(2) == 0.0);
    CHECK_THROWS_AS(LognormalSwap::make({0.5}, 0), ConfigError);
}

TEST_CASE("sampling is independent of the worker count")
{
    LawModel law = GaussianLaw(vec({0, 1}), mat({{1, 0.3}, {0.3, 2}}));
    set_worker_count(1);
    Matrix a = sample(law, 20000, 4);
    set_worker_count(4);
    Matrix b = sample(law, 20000, 4);
    set_worker_count(0);
    CHECK(a == b);
}

TEST_CASE("permutation and lift of laws")
{
    LawModel law = DiscreteLaw(mat({{1, 2, 3}}), {1.0});
    auto p = permute(law, {2, 0, 1});
    CHECK(std::get<DiscreteLaw>(p).atom(0) == vec({3, 1, 2}));
    auto l = lift(law);
    CHECK(std::get<DiscreteLaw>(l).atom(0) == vec({1, 1, 2, 3}));
    CHECK_THROWS_AS(validate_permutation({0, 0, 1}, 3), ConfigError);
}
