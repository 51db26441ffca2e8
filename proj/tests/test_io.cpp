#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <charconv>
#include <cmath>

#include "zonoid/csv.hpp"
#include "zonoid/error.hpp"
#include "zonoid/io.hpp"

using namespace zonoid;

namespace
{
Json parse(const char* s)
{
    return Json::parse(s);
}

LawModel round_trip(const LawModel& law)
{
    return law_from_json(Json::parse(to_json(law).dump()));
}
}  // namespace

TEST_CASE("law specifications round-trip")
{
    std::vector<const char*> docs{
        R"({"schema": 1, "type": "discrete", "atoms": [[1, 0], [0, 1]], "weights": [0.3, 0.7]})",
        R"({"type": "gaussian", "mean": [0.1, -0.2], "cov": [[1, 0.3], [0.3, 2]]})",
        R"({"type": "lognormal", "mean": [-0.5, -0.5], "cov": [[1, 0], [0, 1]]})",
        R"({"type": "elliptical", "radial": {"kind": "uniform", "value": 1, "upper": 2}, "matrix": [[1, 0], [0.5, 1]]})",
        R"({"type": "location_scale", "base": "laplace", "location": 1.5, "scale": 0.25})",
        R"({"type": "infinitely_divisible", "A": [[1, 0], [0, 1]], "nu": [{"x": [1, 1], "mass": 0.1}],
            "b": [-0.6, -0.6], "exponentiate": true})",
    };
    for (auto* d : docs)
    {
        LawModel law = law_from_json(parse(d));
        CHECK(round_trip(law) == law);
    }
}

TEST_CASE("doubles survive serialisation bit for bit")
{
    Vector v(3);
    v << 0.1, 1.0 / 3.0, std::nextafter(1.0, 2.0);
    LawModel law = GaussianLaw(v, Matrix::Identity(3, 3) * (2.0 / 7.0));
    CHECK(round_trip(law) == law);
    for (double x : {0.1, 1.0 / 3.0, 1e-300, -2.5e17})
    {
        std::string s = format_double(x);
        double y = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), y);
        CHECK(y == x);
    }
}

TEST_CASE("unknown fields and bad schemas are rejected")
{
    CHECK_THROWS_AS(law_from_json(parse(R"({"type": "gaussian", "mean": [0], "cov": [[1]], "extra": 1})")),
                    ConfigError);
    CHECK_THROWS_AS(law_from_json(parse(R"({"type": "weibull"})")), ConfigError);
    CHECK_THROWS_AS(law_from_json(parse(R"({"schema": 2, "type": "gaussian", "mean": [0], "cov": [[1]]})")),
                    ConfigError);
    CHECK_THROWS_AS(law_from_json(parse(R"({"type": "gaussian", "mean": [0]})")), ConfigError);
    CHECK_THROWS_AS(check_schema(parse(R"({"type": "gaussian"})"), "doc"), ConfigError);
    CHECK_THROWS_AS(triplet_from_json(parse(R"({"A": [[1]], "nu": [{"x": [1], "mass": 1, "w": 2}], "b": [0]})")),
                    ConfigError);
    CHECK_THROWS_AS(law_from_json(parse(R"({"type": "gaussian", "mean": ["a"], "cov": [[1]]})")), ConfigError);
    CHECK_THROWS_AS(law_from_json(parse(R"({"type": "gaussian", "mean": [0, 0], "cov": [[1, 0], [0]]})")),
                    ConfigError);
}

TEST_CASE("triplet, sequence and process specifications round-trip")
{
    auto t = triplet_from_json(parse(R"({"A": [[1, 0], [0, 1]], "nu": [{"x": [0, 1], "mass": 2}], "b": [0, 1]})"));
    CHECK(triplet_from_json(to_json(t)) == t);

    for (auto* d : {R"({"type": "dacunha_castelle"})", R"({"type": "lognormal_swap", "b": [0.5, 0.1], "truncation": 1})",
                    R"({"type": "iid", "base": {"type": "gaussian", "mean": [1], "cov": [[1]]}})"})
    {
        auto m = sequence_from_json(parse(d));
        CHECK(sequence_from_json(to_json(m)) == m);
    }
    auto swap = std::get<LognormalSwap>(sequence_from_json(parse(R"({"type": "lognormal_swap", "b": [0.5, 0.1], "truncation": 1})")));
    CHECK(swap.discarded_tail() == doctest::Approx(0.01));

    auto gp = process_from_json(parse(R"({"type": "gaussian_process", "mean": {"kind": "neg_half_variance"},
                                          "kernel": {"kind": "fbm", "hurst": 0.3}, "exponentiate": true})"));
    CHECK(process_from_json(to_json(gp)) == gp);
    CHECK_THROWS_AS(process_from_json(parse(R"({"type": "gaussian_process", "mean": {"kind": "constant"},
                                                "kernel": {"kind": "fbm", "hurst": 1.5}})")),
                    ConfigError);
}

TEST_CASE("infinite values are written as strings")
{
    CHECK(number_json(INFINITY) == "inf");
    CHECK(number_json(-INFINITY) == "-inf");
    CHECK(number_json(1.5) == 1.5);
    CHECK(std::isinf(number_of(Json("inf"), "x")));
}

TEST_CASE("csv quoting follows RFC 4180")
{
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_escape("two\nlines") == "\"two\nlines\"");
    CsvTable t;
    t.header = {"u_1", "value"};
    t.add_row({0.5, 1.0 / 3.0});
    CHECK(t.str() == "u_1,value\r\n0.5,0.3333333333333333\r\n");
    t.rows.push_back({"1"});
    CHECK_THROWS_AS(t.str(), ConfigError);
}

TEST_CASE("config hash is stable and key-order independent")
{
    Json a = parse(R"({"x": 1, "y": [1, 2]})");
    Json b = parse(R"({"y": [1, 2], "x": 1})");
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);
    CHECK(config_hash(a) != config_hash(parse(R"({"x": 2, "y": [1, 2]})")));
    auto m = run_manifest(7, a);
    CHECK(m["seed"] == 7);
    CHECK(m.contains("timestamp"));
    CHECK(m.contains("version"));
}
