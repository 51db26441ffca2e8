#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "zonoid/error.hpp"
#include "zonoid/invariance.hpp"
#include "zonoid/levy.hpp"

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

Matrix corr_pair()
{
    Matrix a(2, 2);
    a << 2, 1, 1, 2;
    return a;
}

Matrix random_psd(int d, std::mt19937_64& rng)
{
    std::normal_distribution<double> n;
    Matrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k)
            g(i, k) = n(rng);
    return g * g.transpose() / d;
}
}  // namespace

TEST_CASE("variogram examples")
{
    auto g = variogram(Matrix::Identity(2, 2)).gamma;
    CHECK(g(0, 1) == 2.0);
    CHECK(g(1, 0) == 2.0);
    CHECK(g(0, 0) == 0.0);
    CHECK(variogram(corr_pair()).gamma(0, 1) == 2.0);
    CHECK(variogram(Matrix::Ones(2, 2)).gamma(0, 1) == 0.0);
    Matrix asym(2, 2);
    asym << 1, 0.5, 0, 1;
    CHECK_THROWS_AS(variogram(asym), ConfigError);
}

TEST_CASE("variogram ignores a common additive component")
{
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 20; ++rep)
    {
        Matrix a = random_psd(4, rng);
        Matrix shifted = a.array() + 0.75;
        CHECK((variogram(a).gamma - variogram(shifted).gamma).cwiseAbs().maxCoeff() <= 1e-14);
    }
}

TEST_CASE("u matrix")
{
    Matrix u = u_matrix(3);
    CHECK(u.rows() == 2);
    CHECK(u.cols() == 3);
    CHECK((u * Vector::Ones(3)).norm() == 0.0);
    CHECK(u(0, 0) == 1.0);
    CHECK(u(0, 2) == -1.0);
    CHECK(u(1, 1) == 1.0);
}

TEST_CASE("tilted pushforward examples")
{
    CHECK(tilted_pushforward({{vec({1, 1}), 0.3}}, 2).empty());
    auto a = tilted_pushforward({{vec({1, 0}), 1.0}}, 2);
    REQUIRE(a.size() == 1);
    CHECK(a[0].x[0] == 1.0);
    CHECK(a[0].mass == 1.0);
    auto b = tilted_pushforward({{vec({0, 1}), 1.0}}, 2);
    REQUIRE(b.size() == 1);
    CHECK(b[0].x[0] == -1.0);
    CHECK(b[0].mass == doctest::Approx(std::exp(1.0)).epsilon(1e-15));

    // coincident images merge; kernel atoms drop while the rest keep their tilted mass
    auto m = tilted_pushforward({{vec({2, 1}), 0.5}, {vec({1, 0}), 0.25}, {vec({3, 3}), 1.0}}, 2);
    REQUIRE(m.size() == 1);
    CHECK(m[0].mass == doctest::Approx(0.5 * std::exp(1.0) + 0.25).epsilon(1e-15));
}

TEST_CASE("expectation condition examples")
{
    LevyTriplet g(Matrix::Identity(1, 1), {}, vec({-0.5}));
    CHECK(expectation_condition(g, 0) == 0.0);
    LevyTriplet big(Matrix::Zero(1, 1), {{vec({2}), 1.0}}, vec({0}));
    CHECK(expectation_condition(big, 0) == doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-15));
    LevyTriplet small(Matrix::Zero(1, 1), {{vec({0.5}), 1.0}}, vec({0}));
    CHECK(expectation_condition(small, 0) == doctest::Approx(std::exp(0.5) - 1.5).epsilon(1e-15));
    LevyTriplet huge(Matrix::Zero(1, 1), {{vec({800}), 1.0}}, vec({0}));
    CHECK_THROWS_AS(expectation_condition(huge, 0), std::range_error);
}

TEST_CASE("triplet validation")
{
    CHECK_THROWS_AS(LevyTriplet(Matrix::Identity(1, 1), {{vec({0}), 1.0}}, vec({0})), ConfigError);
    CHECK_THROWS_AS(LevyTriplet(Matrix::Identity(1, 1), {{vec({1}), -1.0}}, vec({0})), ConfigError);
    CHECK_THROWS_AS(LevyTriplet(-Matrix::Identity(1, 1), {}, vec({0})), ConfigError);
}

TEST_CASE("levy triplet equivalence examples")
{
    LevyTriplet a(Matrix::Identity(2, 2), {}, vec({-0.5, -0.5}));
    LevyTriplet b(corr_pair(), {}, vec({-1, -1}));
    auto r = check_log_id_equiv(a, b);
    CHECK(r.pass);
    CHECK(r.failed.empty());

    double bi = -0.5 - 0.1 * (std::exp(1.0) - 1.0);
    LevyTriplet k(Matrix::Identity(2, 2), {{vec({1, 1}), 0.1}}, vec({bi, bi}));
    CHECK(check_log_id_equiv(k, b).pass);

    Matrix bent = corr_pair();
    bent(0, 1) = bent(1, 0) = 1.05;
    auto f = check_log_id_equiv(a, LevyTriplet(bent, {}, vec({-1, -1})));
    CHECK_FALSE(f.pass);
    REQUIRE(f.failed.size() == 1);
    CHECK(f.failed[0] == "a");

    // d = 1: only the expectation condition
    LevyTriplet s1(Matrix::Identity(1, 1), {}, vec({-0.5}));
    LevyTriplet s2(4.0 * Matrix::Identity(1, 1), {}, vec({-2}));
    auto one = check_log_id_equiv(s1, s2);
    CHECK(one.pass);
    CHECK_FALSE(one.variogram_equal.has_value());
}

TEST_CASE("lognormal equivalence checker")
{
    LognormalLaw a(GaussianLaw(vec({-0.5, -0.5}), Matrix::Identity(2, 2)));
    LognormalLaw b(GaussianLaw(vec({-1, -1}), corr_pair()));
    CHECK(check_lognormal_equiv(a, b).pass);
    CHECK(check_lognormal_equiv(a, a).pass);
    LognormalLaw c(GaussianLaw(vec({0, 0}), Matrix::Identity(2, 2)));
    LognormalLaw e(GaussianLaw(vec({0, 0}), 2.0 * Matrix::Identity(2, 2)));
    auto f = check_lognormal_equiv(c, e);
    CHECK_FALSE(f.pass);
    CHECK_FALSE(f.drifts_equal);
}

TEST_CASE("lognormal checker agrees with the triplet checker on random pairs")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> unif(-1, 1);
    int agree = 0, evaluated = 0;
    for (int rep = 0; rep < 200; ++rep)
    {
        Matrix a = random_psd(3, rng);
        Vector mu(3);
        for (int i = 0; i < 3; ++i)
            mu[i] = unif(rng);
        Matrix b = a;
        Vector shift(3);
        for (int i = 0; i < 3; ++i)
            shift[i] = unif(rng);
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k)
                b(i, k) += shift[i] + shift[k] + 3.0;
        Vector nu = mu;
        for (int i = 0; i < 3; ++i)
            nu[i] += 0.5 * (a(i, i) - b(i, i));
        if (rep % 2)
            nu[rep % 3] += 0.3 * unif(rng);
        if (rep % 4 == 1)
            b(0, 1) = b(1, 0) = b(0, 1) + 0.05;
        if (Eigen::SelfAdjointEigenSolver<Matrix>(b).eigenvalues().minCoeff() < 0)
            continue;
        LognormalLaw la(GaussianLaw(mu, a)), lb(GaussianLaw(nu, b));
        bool x = check_lognormal_equiv(la, lb).pass;
        bool y = check_log_id_equiv(LevyTriplet(a, {}, mu), LevyTriplet(b, {}, nu)).pass;
        ++evaluated;
        agree += x == y;
        CHECK(x == y);
    }
    CHECK(evaluated >= 100);
    CHECK(agree == evaluated);
}

TEST_CASE("characteristic function criterion")
{
    LawModel a = LognormalLaw(GaussianLaw(vec({-0.5, -0.5}), Matrix::Identity(2, 2)));
    LawModel b = LognormalLaw(GaussianLaw(vec({-1, -1}), corr_pair()));
    Vector w = barycentre(2);
    auto r = cf_criterion(a, b, {vec({1, -1})}, w, 1e-12);
    CHECK(r.pass);

    // u = 0: both equal E exp(<w, xi>) = exp(<w, mu> + w' A w / 2)
    auto z = cf_criterion(a, b, {vec({0, 0})}, w, 1e-12);
    double moment = std::exp(-0.5 + 0.5 * 0.5);
    CHECK(z.points[0].phi_a.real() == doctest::Approx(moment).epsilon(1e-14));
    CHECK(z.points[0].phi_b.real() == doctest::Approx(moment).epsilon(1e-14));

    Matrix bent = corr_pair();
    bent(0, 1) = bent(1, 0) = 0.5;
    LawModel c = LognormalLaw(GaussianLaw(vec({-1, -1}), bent));
    auto f = cf_criterion(a, c, zero_sum_directions(2, 8, 3), w);
    CHECK_FALSE(f.pass);
    CHECK(f.max_abs_diff > 1e-6);

    CHECK_THROWS_AS(cf_criterion(a, b, {vec({1, 0})}, w), ConfigError);
    CHECK_THROWS_AS(cf_criterion(a, b, {vec({1, -1})}, vec({0.3, 0.3})), ConfigError);

    // another admissible w gives equality as well
    auto other = cf_criterion(a, b, zero_sum_directions(2, 8, 5), vec({0.2, 0.8}));
    CHECK(other.pass);
}

TEST_CASE("cf criterion follows the triplet verdict on random gaussian pairs")
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unif(-1, 1);
    for (int rep = 0; rep < 20; ++rep)
    {
        Matrix a = random_psd(3, rng);
        Vector mu(3);
        for (int i = 0; i < 3; ++i)
            mu[i] = unif(rng);
        Matrix b = a.array() + 1.0;
        Vector nu = mu;
        for (int i = 0; i < 3; ++i)
            nu[i] += 0.5 * (a(i, i) - b(i, i));
        REQUIRE(check_log_id_equiv(LevyTriplet(a, {}, mu), LevyTriplet(b, {}, nu)).pass);
        auto r = cf_criterion(LognormalLaw(GaussianLaw(mu, a)), LognormalLaw(GaussianLaw(nu, b)),
                              zero_sum_directions(3, 10, rep), barycentre(3));
        CHECK(r.max_abs_diff <= 1e-10);
    }
}

TEST_CASE("elliptical equivalence")
{
    EllipticalLaw a(RadialLaw::constant(1.0), Matrix::Identity(2, 2));
    EllipticalLaw b(RadialLaw::constant(2.0), 0.5 * Matrix::Identity(2, 2));
    CHECK(check_elliptical_equiv(a, b).pass);
    Matrix d = Matrix::Identity(2, 2);
    d(1, 1) = 2.0;
    CHECK_FALSE(check_elliptical_equiv(a, EllipticalLaw(RadialLaw::constant(1.0), d)).pass);

    // chi_2 radial part makes R U standard normal in the plane
    LawModel e = EllipticalLaw(RadialLaw::chi(2), Matrix::Identity(2, 2));
    LawModel g = GaussianLaw(vec({0, 0}), Matrix::Identity(2, 2));
    auto exact = test_zonoid_equiv(e, g, DirectionGrid::standard(2), McBudget{});
    CHECK(exact.pass);
    auto mc = test_zonoid_equiv(e, g, DirectionGrid::standard(2), McBudget{400000, 3, true});
    CHECK(mc.pass);
}

TEST_CASE("location-scale recovery")
{
    LocationScaleData std_normal{0.0, 1.0 / std::sqrt(2.0 * M_PI)};
    auto r = recover_location_scale(LocationScaleLaw::Base::normal, std_normal, 1000000, 1);
    CHECK(r.mu == 0.0);
    CHECK(r.sigma >= 0.99);
    CHECK(r.sigma <= 1.01);
    CHECK(r.bracket_hi - r.bracket_lo <= 1e-8);

    LocationScaleData shifted{1.0, oracle::normal_positive_part(1.0, 2.0)};
    auto s = recover_location_scale(LocationScaleLaw::Base::normal, shifted, 1000000, 2);
    CHECK(s.mu == 1.0);
    CHECK(std::abs(s.sigma - 2.0) <= 0.04);

    LocationScaleData uniform{1.0, 1.0};
    CHECK_THROWS_AS(recover_location_scale(LocationScaleLaw::Base::uniform, uniform, 10000, 3), ConfigError);
    CHECK_THROWS_AS(recover_location_scale(LocationScaleLaw::Base::shifted_exponential, uniform, 10000, 3),
                    ConfigError);
    LocationScaleData degenerate{1.0, 1.0};
    CHECK_THROWS_AS(recover_location_scale(LocationScaleLaw::Base::normal, degenerate, 10000, 3), DiagnosticError);
}

TEST_CASE("brown-resnick condition")
{
    std::vector<double> t{-2, -1, 0, 1, 2, 3};
    BrownResnickInput bm;
    bm.times = t;
    for (double s : t)
    {
        bm.means.push_back(-std::abs(s) / 2);
        bm.variances.push_back(std::abs(s));
    }
    bm.increments_asserted = true;
    auto r = brown_resnick_condition(bm);
    CHECK(r.pass);
    CHECK(r.constant == 0.0);

    BrownResnickInput flat = bm;
    for (auto& m : flat.means)
        m = 0.0;
    CHECK_FALSE(brown_resnick_condition(flat).pass);

    BrownResnickInput arb = bm;
    for (std::size_t i = 0; i < t.size(); ++i)
    {
        arb.variances[i] = 0.3 + t[i] * t[i];
        arb.means[i] = 1.0 - 0.5 * arb.variances[i];
    }
    auto a = brown_resnick_condition(arb);
    CHECK(a.pass);
    CHECK(a.constant == doctest::Approx(1.0));

    BrownResnickInput missing = bm;
    missing.variances.pop_back();
    CHECK_THROWS_AS(brown_resnick_condition(missing), ConfigError);

    GaussianProcess gbm;
    gbm.mean.kind = MeanFunction::Kind::neg_half_variance;
    auto from_gp = brown_resnick_condition(brown_resnick_input(gbm, t));
    CHECK(from_gp.pass);
    REQUIRE(from_gp.lag_residual.has_value());
    CHECK(*from_gp.lag_residual <= 1e-12);
}
