#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "zonoid/error.hpp"
#include "zonoid/invariance.hpp"
#include "zonoid/process.hpp"
#include "zonoid/sequence.hpp"

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

DiscreteLaw law_of(std::vector<Vector> atoms, std::vector<double> w)
{
    Matrix m(atoms.size(), atoms.front().size());
    for (std::size_t i = 0; i < atoms.size(); ++i)
        m.row(i) = atoms[i].transpose();
    return DiscreteLaw(m, std::move(w));
}

LawModel lognormal(Vector mu, Matrix a)
{
    return LognormalLaw(GaussianLaw(std::move(mu), std::move(a)));
}

Matrix corr_pair()
{
    Matrix a(2, 2);
    a << 2, 1, 1, 2;
    return a;
}

const McBudget exact_only{};
}  // namespace

TEST_CASE("zonoid equivalence of gaussians")
{
    LawModel a = GaussianLaw(vec({0, 0}), Matrix::Identity(2, 2));
    LawModel b = GaussianLaw(vec({0, 0}), 4.0 * Matrix::Identity(2, 2));
    auto grid = DirectionGrid::standard(2);
    auto same = test_zonoid_equiv(a, a, grid, exact_only);
    CHECK(same.exact);
    CHECK(same.pass);
    CHECK(same.max_abs_discrepancy == 0.0);

    auto diff = test_zonoid_equiv(a, b, grid, exact_only);
    CHECK(diff.exact);
    CHECK_FALSE(diff.pass);
    for (const auto& p : diff.per_direction)
        CHECK(p.h_b / p.h_a == doctest::Approx(2.0).epsilon(1e-14));

    LawModel c = GaussianLaw(vec({0, 0, 0}), Matrix::Identity(3, 3));
    CHECK_THROWS_AS(test_zonoid_equiv(a, c, grid, exact_only), ConfigError);
}

TEST_CASE("sign-augmented zonoid separates symmetric laws with a common zonoid")
{
    // E|u xi| = |u| for both
    LawModel a = law_of({vec({-1}), vec({1})}, {0.5, 0.5});
    LawModel b = law_of({vec({-2}), vec({0}), vec({2})}, {0.25, 0.5, 0.25});
    auto grid = DirectionGrid::standard(2);
    CHECK(test_zonoid_equiv(a, b, DirectionGrid::user_supplied({vec({1})}), exact_only).pass);

    // (eps, xi) with eps = +-1 independent of xi
    LawModel ea = law_of({vec({1, -1}), vec({1, 1}), vec({-1, -1}), vec({-1, 1})}, {0.25, 0.25, 0.25, 0.25});
    LawModel eb = law_of({vec({1, -2}), vec({1, 0}), vec({1, 2}), vec({-1, -2}), vec({-1, 0}), vec({-1, 2})},
                         {0.125, 0.25, 0.125, 0.125, 0.25, 0.125});
    auto r = test_zonoid_equiv(ea, eb, grid, exact_only);
    CHECK(r.exact);
    CHECK_FALSE(r.pass);
    // u = (1, 1)/sqrt2: E|eps + xi| is 1 for a, 1.5 for b
    CHECK(r.max_abs_discrepancy >= 0.5 / std::sqrt(2.0) - 1e-12);
}

TEST_CASE("lognormal pair meeting the variogram and drift conditions is equivalent")
{
    LawModel a = lognormal(vec({-0.5, -0.5}), Matrix::Identity(2, 2));
    LawModel b = lognormal(vec({-1, -1}), corr_pair());
    auto r = test_zonoid_equiv(a, b, DirectionGrid::standard(2), McBudget{1000000, 7, false}, {3.0, false});
    CHECK_FALSE(r.exact);
    CHECK(r.pass);
    auto m = test_max_zonoid_equiv(a, b, DirectionGrid::standard(2), McBudget{1000000, 7, false}, {3.0, false});
    CHECK(m.pass);
    CHECK(m.consistent);
}

TEST_CASE("max-zonoid equivalence of discrete laws")
{
    LawModel a = law_of({vec({1, 2}), vec({2, 1})}, {0.5, 0.5});
    LawModel b = law_of({vec({1, 2})}, {1.0});
    auto grid = DirectionGrid::standard(2);
    auto same = test_max_zonoid_equiv(a, a, grid, exact_only);
    CHECK(same.pass);
    CHECK(same.max_report.exact);
    auto diff = test_max_zonoid_equiv(a, b, grid, exact_only);
    CHECK_FALSE(diff.pass);
    CHECK(diff.consistent);
    auto e = test_max_zonoid_equiv(a, b, DirectionGrid::user_supplied({vec({1, 0})}), exact_only);
    CHECK(e.max_report.per_direction[0].h_a == 1.5);
    CHECK(e.max_report.per_direction[0].h_b == 1.0);
}

TEST_CASE("dacunha-castelle marginal is swap-invariant exactly")
{
    LawModel law = dacunha_castelle_marginal(4);
    auto r = test_swap_invariance(law, all_permutations(4), DirectionGrid::standard(4, 64, 3), exact_only);
    CHECK(r.pass);
    CHECK(r.worst.exact);
    REQUIRE(r.implementations_agree.has_value());
    CHECK(*r.implementations_agree);
    CHECK(r.per_permutation.size() == 23);
}

TEST_CASE("lognormal-swap law is swap-invariant; perturbed drift is not")
{
    auto model = LognormalSwap::make({0.5, 0.0, 0.0});
    LawModel law = lognormal_swap_marginal(model, 3);
    auto grid = DirectionGrid::standard(3);
    McBudget b{200000, 11, false};
    auto r = test_swap_invariance(law, all_permutations(3), grid, b, {3.0, true});
    CHECK(r.pass);

    LawModel bad = lognormal(vec({0.2, 0}), Matrix::Identity(2, 2));
    auto f = test_swap_invariance(bad, all_permutations(2), DirectionGrid::standard(2), b);
    CHECK_FALSE(f.pass);
}

TEST_CASE("permutation helpers")
{
    CHECK(all_permutations(3).size() == 5);
    CHECK_THROWS_AS(all_permutations(7), ConfigError);
    auto s = sampled_permutations(8, 10, 1);
    CHECK(s.size() == 10);
    Vector u = vec({1, 2, 3});
    Vector v = permuted_direction(u, {2, 0, 1});
    CHECK(v == vec({2, 3, 1}));
}

TEST_CASE("lift swap-invariance")
{
    LawModel ones = DiscreteLaw::point_mass(vec({1, 1}));
    auto pass = test_lift_swap_invariance(ones, all_permutations(3), DirectionGrid::standard(3), exact_only);
    CHECK(pass.pass);
    CHECK(pass.worst.exact);

    auto model = LognormalSwap::make({0.0});
    LawModel iid = lognormal_swap_marginal(model, 2);
    auto fail = test_lift_swap_invariance(iid, all_permutations(3), DirectionGrid::standard(3),
                                          McBudget{200000, 2, false});
    CHECK_FALSE(fail.pass);

    // kappa_1 of a swap-invariant law under P^1 is lift swap-invariant
    auto base = law_of({vec({1, 2, 3}), vec({3, 1, 2}), vec({2, 3, 1}), vec({1, 3, 2}), vec({2, 1, 3}),
                        vec({3, 2, 1})},
                       std::vector<double>(6, 1.0 / 6.0));
    auto mc = measure_change(base, 0);
    auto lifted = test_lift_swap_invariance(LawModel(mc.result), all_permutations(3), DirectionGrid::standard(3),
                                            exact_only);
    CHECK(lifted.pass);
}

TEST_CASE("positivity necessity diagnostic")
{
    auto one = check_positivity_necessity(DiscreteLaw::point_mass(vec({1})), exact_only);
    CHECK(one.exact);
    CHECK_FALSE(one.fires);

    auto zero_atom = check_positivity_necessity(law_of({vec({0}), vec({2})}, {0.5, 0.5}), exact_only);
    CHECK(zero_atom.fires);

    auto negative = check_positivity_necessity(law_of({vec({-1}), vec({1.02})}, {0.02, 0.98}), exact_only);
    CHECK(negative.fires);
}

TEST_CASE("measure change examples")
{
    auto a = measure_change(law_of({vec({1, 2}), vec({2, 1})}, {0.5, 0.5}), 0);
    auto r = a.result.canonical();
    REQUIRE(r.size() == 2);
    CHECK(r.atom(0)[0] == 0.5);
    CHECK(r.weights()[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(r.atom(1)[0] == 2.0);
    CHECK(r.weights()[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    auto p = measure_change(DiscreteLaw::point_mass(vec({3, 3})), 0).result.canonical();
    REQUIRE(p.size() == 1);
    CHECK(p.atom(0)[0] == 1.0);
    CHECK(p.weights()[0] == 1.0);

    auto t = measure_change(law_of({vec({1, 1, 2}), vec({1, 2, 1})}, {0.5, 0.5}), 0).result.canonical();
    REQUIRE(t.size() == 2);
    CHECK(t.atom(0) == vec({1, 2}));
    CHECK(t.atom(1) == vec({2, 1}));
    CHECK(t.weights()[0] == 0.5);

    CHECK_THROWS_AS(measure_change(law_of({vec({1, 0})}, {1.0}), 1), ConfigError);
}

TEST_CASE("measure-change relations examples")
{
    auto grid2 = DirectionGrid::standard(2);
    auto sym = test_relations_theorem(law_of({vec({1, 2}), vec({2, 1})}, {0.5, 0.5}), grid2);
    CHECK(sym.a);
    for (bool b : sym.b)
        CHECK(b);
    CHECK(sym.consistent);

    auto asym = test_relations_theorem(law_of({vec({1, 2}), vec({2, 1})}, {0.9, 0.1}), grid2);
    CHECK_FALSE(asym.a);
    for (bool b : asym.b)
        CHECK_FALSE(b);
    CHECK(asym.consistent);

    std::vector<Vector> orbit{vec({1, 2, 4}), vec({1, 4, 2}), vec({2, 1, 4}),
                              vec({2, 4, 1}), vec({4, 1, 2}), vec({4, 2, 1})};
    auto three = test_relations_theorem(law_of(orbit, std::vector<double>(6, 1.0 / 6.0)),
                                        DirectionGrid::standard(3));
    CHECK(three.a);
    REQUIRE(three.c.has_value());
    CHECK(*three.c);
    CHECK(three.c_per_pivot[0]);
    CHECK(three.c_per_pivot[1]);
    CHECK(three.consistent);
}

TEST_CASE("exchangeability of discrete laws")
{
    CHECK(is_exchangeable(law_of({vec({1, 2}), vec({2, 1})}, {0.5, 0.5})));
    CHECK_FALSE(is_exchangeable(law_of({vec({1, 2}), vec({2, 1})}, {0.6, 0.4})));
}

TEST_CASE("zonoid stationarity of geometric brownian motion")
{
    GaussianProcess gbm;
    gbm.mean.kind = MeanFunction::Kind::neg_half_variance;
    gbm.kernel.kind = CovarianceKernel::Kind::brownian;
    gbm.exponentiate = true;
    std::vector<double> times{0.0, 1.0};
    McBudget b{400000, 5, false};
    auto pass = test_zonoid_stationarity(ProcessModel::from(gbm), times, 2.0, DirectionGrid::standard(2), b);
    CHECK(pass.pass);

    GaussianProcess drift = gbm;
    drift.mean.kind = MeanFunction::Kind::constant;
    auto fail = test_zonoid_stationarity(ProcessModel::from(drift), times, 2.0, DirectionGrid::standard(2), b);
    CHECK_FALSE(fail.pass);

    GaussianProcess constant;
    constant.kernel.kind = CovarianceKernel::Kind::constant;
    constant.mean.kind = MeanFunction::Kind::neg_half_variance;
    auto c = test_zonoid_stationarity(ProcessModel::from(constant), times, 5.0, DirectionGrid::standard(2), b);
    CHECK(c.pass);
}

TEST_CASE("even homogeneous functionals")
{
    LawModel a = GaussianLaw(vec({0, 0}), Matrix::Identity(2, 2));
    LawModel b = GaussianLaw(vec({0, 0}), 4.0 * Matrix::Identity(2, 2));
    McBudget budget{200000, 3, false};
    auto fs = builtin_even_functions(2, 2, 9);
    auto same = test_even_homogeneous(a, a, fs, budget);
    CHECK(same.pass);
    for (const auto& f : same.per_function)
        CHECK(f.delta == 0.0);

    auto diff = test_even_homogeneous(a, b, {norm_l1()}, budget);
    CHECK_FALSE(diff.pass);
    CHECK(diff.per_function[0].mean_b / diff.per_function[0].mean_a == doctest::Approx(2.0).epsilon(1e-12));

    LawModel la = lognormal(vec({-0.5, -0.5}), Matrix::Identity(2, 2));
    LawModel lb = lognormal(vec({-1, -1}), corr_pair());
    auto eq = test_even_homogeneous(la, lb, {norm_l2()}, McBudget{1000000, 4, false}, {4.0, false});
    CHECK(eq.pass);

    EvenFunction odd{"odd", [](const Vector& x) { return x.sum(); }};
    CHECK_THROWS_AS(spot_check_even_homogeneous(odd, 2, 1), ConfigError);
    EvenFunction square{"square", [](const Vector& x) { return x.squaredNorm(); }};
    CHECK_THROWS_AS(spot_check_even_homogeneous(square, 2, 1), ConfigError);
}

TEST_CASE("linear images of equivalent laws stay equivalent")
{
    LawModel a = GaussianLaw(vec({0, 0}), Matrix::Identity(2, 2));
    Matrix rot(2, 2);
    rot << std::cos(0.7), -std::sin(0.7), std::sin(0.7), std::cos(0.7);
    LawModel b = GaussianLaw(vec({0, 0}), rot * rot.transpose());
    REQUIRE(test_zonoid_equiv(a, b, DirectionGrid::standard(2), exact_only).pass);
    Matrix m(3, 2);
    m << 1, 2, -1, 0.5, 3, 1;
    auto r = test_zonoid_equiv(linear_image(a, m), linear_image(b, m), DirectionGrid::standard(3), exact_only);
    CHECK(r.exact);
    CHECK(r.pass);
}
