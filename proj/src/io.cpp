#include "zonoid/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "zonoid/error.hpp"

namespace zonoid
{
namespace
{

template<class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template<class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string kind_name(RadialLaw::Kind k)
{
    switch (k)
    {
        case RadialLaw::Kind::constant:
            return "constant";
        case RadialLaw::Kind::chi:
            return "chi";
        case RadialLaw::Kind::exponential:
            return "exponential";
        case RadialLaw::Kind::uniform:
            return "uniform";
    }
    return "constant";
}

RadialLaw radial_from_json(const Json& j)
{
    ObjectReader r(j, "radial");
    auto kind = r.required("kind").get<std::string>();
    RadialLaw out;
    if (kind == "constant")
        out.kind = RadialLaw::Kind::constant;
    else if (kind == "chi")
        out.kind = RadialLaw::Kind::chi;
    else if (kind == "exponential")
        out.kind = RadialLaw::Kind::exponential;
    else if (kind == "uniform")
        out.kind = RadialLaw::Kind::uniform;
    else
        throw ConfigError("radial: unknown kind '" + kind + "'");
    out.value = number_of(r.required("value"), "radial.value");
    if (auto* u = r.optional("upper"))
        out.upper = number_of(*u, "radial.upper");
    r.finish();
    out.validate();
    return out;
}

std::vector<LevyAtom> nu_from_json(const Json& j)
{
    require(j.is_array(), "nu must be an array");
    std::vector<LevyAtom> nu;
    for (const auto& a : j)
    {
        ObjectReader r(a, "nu atom");
        LevyAtom atom;
        atom.x = vector_of(r.required("x"), "nu.x");
        atom.mass = number_of(r.required("mass"), "nu.mass");
        r.finish();
        nu.push_back(std::move(atom));
    }
    return nu;
}

Json nu_json(const std::vector<LevyAtom>& nu)
{
    Json out = Json::array();
    for (const auto& a : nu)
        out.push_back({{"x", to_json(a.x)}, {"mass", a.mass}});
    return out;
}

void optional_schema(ObjectReader& r, const std::string& what)
{
    if (auto* s = r.optional("schema"))
        require(s->is_number_integer() && s->get<int>() == kSchemaVersion,
                what + ": unsupported schema version");
}

std::string mean_kind_name(MeanFunction::Kind k)
{
    switch (k)
    {
        case MeanFunction::Kind::constant:
            return "constant";
        case MeanFunction::Kind::linear_abs:
            return "linear_abs";
        case MeanFunction::Kind::neg_half_variance:
            return "neg_half_variance";
    }
    return "constant";
}

std::string kernel_kind_name(CovarianceKernel::Kind k)
{
    switch (k)
    {
        case CovarianceKernel::Kind::brownian:
            return "brownian";
        case CovarianceKernel::Kind::fbm:
            return "fbm";
        case CovarianceKernel::Kind::constant:
            return "constant";
    }
    return "brownian";
}

Json complex_json(std::complex<double> z)
{
    return Json::array({z.real(), z.imag()});
}

}  // namespace

//---------------------------------------------------------------------------//
// Readers
//---------------------------------------------------------------------------//

ObjectReader::ObjectReader(const Json& j, std::string what) : j_(j), what_(std::move(what))
{
    require(j_.is_object(), what_ + ": expected a JSON object");
}

const Json& ObjectReader::required(const std::string& key)
{
    auto it = j_.find(key);
    require(it != j_.end(), what_ + ": missing field '" + key + "'");
    seen_.insert(key);
    return *it;
}

const Json* ObjectReader::optional(const std::string& key)
{
    auto it = j_.find(key);
    if (it == j_.end())
        return nullptr;
    seen_.insert(key);
    return &*it;
}

void ObjectReader::finish() const
{
    for (auto it = j_.begin(); it != j_.end(); ++it)
        require(seen_.count(it.key()) != 0, what_ + ": unknown field '" + it.key() + "'");
}

void check_schema(const Json& j, const std::string& what)
{
    require(j.is_object(), what + ": expected a JSON object");
    auto it = j.find("schema");
    require(it != j.end(), what + ": missing \"schema\": 1");
    require(it->is_number_integer() && it->get<int>() == kSchemaVersion,
            what + ": unsupported schema version");
}

double number_of(const Json& j, const std::string& what)
{
    if (j.is_string())
    {
        auto s = j.get<std::string>();
        if (s == "inf")
            return INFINITY;
        if (s == "-inf")
            return -INFINITY;
    }
    require(j.is_number(), what + ": expected a number");
    double x = j.get<double>();
    require(std::isfinite(x), what + ": expected a finite number");
    return x;
}

Vector vector_of(const Json& j, const std::string& what)
{
    require(j.is_array(), what + ": expected an array of numbers");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = number_of(j[i], what);
    return v;
}

Matrix matrix_of(const Json& j, const std::string& what)
{
    require(j.is_array() && !j.empty(), what + ": expected a non-empty array of rows");
    const auto rows = j.size();
    require(j[0].is_array(), what + ": expected an array of rows");
    const auto cols = j[0].size();
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i)
    {
        require(j[i].is_array() && j[i].size() == cols, what + ": ragged matrix");
        for (std::size_t k = 0; k < cols; ++k)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = number_of(j[i][k], what);
    }
    return m;
}

std::vector<Vector> vectors_of(const Json& j, const std::string& what)
{
    require(j.is_array(), what + ": expected an array of vectors");
    std::vector<Vector> out;
    for (const auto& v : j)
        out.push_back(vector_of(v, what));
    return out;
}

Json to_json(const Vector& v)
{
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(number_json(v[i]));
    return out;
}

Json to_json(const Matrix& m)
{
    Json out = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
    {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k)
            row.push_back(number_json(m(i, k)));
        out.push_back(std::move(row));
    }
    return out;
}

Json number_json(double x)
{
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    if (std::isnan(x))
        return nullptr;
    return x;
}

//---------------------------------------------------------------------------//
// Laws
//---------------------------------------------------------------------------//

LocationScaleLaw::Base base_from_string(const std::string& s)
{
    if (s == "normal")
        return LocationScaleLaw::Base::normal;
    if (s == "uniform")
        return LocationScaleLaw::Base::uniform;
    if (s == "laplace")
        return LocationScaleLaw::Base::laplace;
    if (s == "shifted_exponential")
        return LocationScaleLaw::Base::shifted_exponential;
    throw ConfigError("unknown location-scale base '" + s + "'");
}

std::string to_string(LocationScaleLaw::Base b)
{
    switch (b)
    {
        case LocationScaleLaw::Base::normal:
            return "normal";
        case LocationScaleLaw::Base::uniform:
            return "uniform";
        case LocationScaleLaw::Base::laplace:
            return "laplace";
        case LocationScaleLaw::Base::shifted_exponential:
            return "shifted_exponential";
    }
    return "normal";
}

LawModel law_from_json(const Json& j)
{
    ObjectReader r(j, "law");
    optional_schema(r, "law");
    auto type = r.required("type");
    require(type.is_string(), "law: type must be a string");
    const auto t = type.get<std::string>();

    auto finish = [&r](LawModel law) {
        r.finish();
        return law;
    };

    if (t == "discrete")
    {
        Matrix atoms = matrix_of(r.required("atoms"), "law.atoms");
        Vector w = vector_of(r.required("weights"), "law.weights");
        return finish(DiscreteLaw(std::move(atoms), std::vector<double>(w.data(), w.data() + w.size())));
    }
    if (t == "gaussian" || t == "lognormal")
    {
        GaussianLaw g(vector_of(r.required("mean"), "law.mean"), matrix_of(r.required("cov"), "law.cov"));
        if (t == "gaussian")
            return finish(std::move(g));
        return finish(LognormalLaw(std::move(g)));
    }
    if (t == "elliptical")
    {
        RadialLaw radial = radial_from_json(r.required("radial"));
        return finish(EllipticalLaw(radial, matrix_of(r.required("matrix"), "law.matrix")));
    }
    if (t == "location_scale")
    {
        auto base = base_from_string(r.required("base").get<std::string>());
        double loc = number_of(r.required("location"), "law.location");
        double scale = number_of(r.required("scale"), "law.scale");
        return finish(LocationScaleLaw(base, loc, scale));
    }
    if (t == "infinitely_divisible")
    {
        LevyTriplet triplet(matrix_of(r.required("A"), "law.A"), nu_from_json(r.required("nu")),
                            vector_of(r.required("b"), "law.b"));
        bool expo = false;
        if (auto* e = r.optional("exponentiate"))
        {
            require(e->is_boolean(), "law.exponentiate must be a boolean");
            expo = e->get<bool>();
        }
        return finish(InfDivLaw(std::move(triplet), expo));
    }
    throw ConfigError("law: unknown type '" + t + "'");
}

Json to_json(const LawModel& law)
{
    return std::visit(
        overloaded{
            [](const DiscreteLaw& l) -> Json {
                return {{"type", "discrete"}, {"atoms", to_json(l.atoms())}, {"weights", l.weights()}};
            },
            [](const GaussianLaw& l) -> Json {
                return {{"type", "gaussian"}, {"mean", to_json(l.mean())}, {"cov", to_json(l.cov())}};
            },
            [](const LognormalLaw& l) -> Json {
                return {{"type", "lognormal"},
                        {"mean", to_json(l.log_law().mean())},
                        {"cov", to_json(l.log_law().cov())}};
            },
            [](const EllipticalLaw& l) -> Json {
                Json radial = {{"kind", kind_name(l.radial().kind)}, {"value", l.radial().value}};
                if (l.radial().kind == RadialLaw::Kind::uniform)
                    radial["upper"] = l.radial().upper;
                return {{"type", "elliptical"}, {"radial", radial}, {"matrix", to_json(l.matrix())}};
            },
            [](const LocationScaleLaw& l) -> Json {
                return {{"type", "location_scale"},
                        {"base", to_string(l.base())},
                        {"location", l.location()},
                        {"scale", l.scale()}};
            },
            [](const InfDivLaw& l) -> Json {
                return {{"type", "infinitely_divisible"},
                        {"A", to_json(l.triplet().gaussian())},
                        {"nu", nu_json(l.triplet().levy_measure())},
                        {"b", to_json(l.triplet().drift())},
                        {"exponentiate", l.exponentiate()}};
            },
            [](const CustomLaw& l) -> Json { return {{"type", "custom"}, {"name", l.name}}; },
        },
        law);
}

LevyTriplet triplet_from_json(const Json& j)
{
    ObjectReader r(j, "triplet");
    optional_schema(r, "triplet");
    LevyTriplet t(matrix_of(r.required("A"), "triplet.A"), nu_from_json(r.required("nu")),
                  vector_of(r.required("b"), "triplet.b"));
    r.finish();
    return t;
}

Json to_json(const LevyTriplet& t)
{
    return {{"A", to_json(t.gaussian())}, {"nu", nu_json(t.levy_measure())}, {"b", to_json(t.drift())}};
}

SequenceModel sequence_from_json(const Json& j)
{
    ObjectReader r(j, "sequence model");
    optional_schema(r, "sequence model");
    const auto t = r.required("type").get<std::string>();
    SequenceModel out;
    if (t == "dacunha_castelle")
        out = DaCunhaCastelle{};
    else if (t == "lognormal_swap")
    {
        Vector b = vector_of(r.required("b"), "sequence.b");
        std::vector<double> coef(b.data(), b.data() + b.size());
        std::size_t k = coef.size();
        if (auto* kk = r.optional("truncation"))
        {
            require(kk->is_number_integer() && kk->get<long long>() >= 1,
                    "sequence.truncation must be a positive integer");
            k = kk->get<std::size_t>();
        }
        out = LognormalSwap::make(std::move(coef), k);
    }
    else if (t == "iid")
        out = IidSequence{law_from_json(r.required("base"))};
    else
        throw ConfigError("sequence model: unknown type '" + t + "'");
    r.finish();
    validate(out);
    return out;
}

Json to_json(const SequenceModel& model)
{
    return std::visit(overloaded{
                          [](const DaCunhaCastelle&) -> Json { return {{"type", "dacunha_castelle"}}; },
                          [](const LognormalSwap& m) -> Json {
                              return {{"type", "lognormal_swap"},
                                      {"b", m.coefficients},
                                      {"truncation", m.truncation}};
                          },
                          [](const IidSequence& m) -> Json {
                              return {{"type", "iid"}, {"base", to_json(m.base)}};
                          },
                      },
                      model);
}

GaussianProcess process_from_json(const Json& j)
{
    ObjectReader r(j, "process");
    optional_schema(r, "process");
    auto type = r.required("type").get<std::string>();
    require(type == "gaussian_process", "process: unknown type '" + type + "'");
    GaussianProcess gp;

    ObjectReader m(r.required("mean"), "process.mean");
    auto mk = m.required("kind").get<std::string>();
    if (mk == "constant")
        gp.mean.kind = MeanFunction::Kind::constant;
    else if (mk == "linear_abs")
        gp.mean.kind = MeanFunction::Kind::linear_abs;
    else if (mk == "neg_half_variance")
        gp.mean.kind = MeanFunction::Kind::neg_half_variance;
    else
        throw ConfigError("process.mean: unknown kind '" + mk + "'");
    if (auto* o = m.optional("offset"))
        gp.mean.offset = number_of(*o, "process.mean.offset");
    if (auto* s = m.optional("slope"))
        gp.mean.slope = number_of(*s, "process.mean.slope");
    m.finish();

    ObjectReader k(r.required("kernel"), "process.kernel");
    auto kk = k.required("kind").get<std::string>();
    if (kk == "brownian")
        gp.kernel.kind = CovarianceKernel::Kind::brownian;
    else if (kk == "fbm")
        gp.kernel.kind = CovarianceKernel::Kind::fbm;
    else if (kk == "constant")
        gp.kernel.kind = CovarianceKernel::Kind::constant;
    else
        throw ConfigError("process.kernel: unknown kind '" + kk + "'");
    if (auto* s = k.optional("scale"))
        gp.kernel.scale = number_of(*s, "process.kernel.scale");
    if (auto* h = k.optional("hurst"))
        gp.kernel.hurst = number_of(*h, "process.kernel.hurst");
    k.finish();
    gp.kernel.validate();

    if (auto* e = r.optional("exponentiate"))
    {
        require(e->is_boolean(), "process.exponentiate must be a boolean");
        gp.exponentiate = e->get<bool>();
    }
    r.finish();
    return gp;
}

Json to_json(const GaussianProcess& gp)
{
    return {{"type", "gaussian_process"},
            {"mean", {{"kind", mean_kind_name(gp.mean.kind)}, {"offset", gp.mean.offset}, {"slope", gp.mean.slope}}},
            {"kernel",
             {{"kind", kernel_kind_name(gp.kernel.kind)}, {"scale", gp.kernel.scale}, {"hurst", gp.kernel.hurst}}},
            {"exponentiate", gp.exponentiate}};
}

//---------------------------------------------------------------------------//
// Reports
//---------------------------------------------------------------------------//

Json to_json(const SupportEstimate& e)
{
    return {{"value", e.value}, {"std_error", e.std_error}, {"n", e.n}, {"exact", e.exact}};
}

Json to_json(const EquivalenceReport& r)
{
    Json out = {{"kind", to_string(r.kind)},
                {"mode", r.exact ? "exact" : "statistical"},
                {"tau", r.tau},
                {"threshold", r.threshold},
                {"grid_size", r.per_direction.size()},
                {"grid_construction", to_string(r.construction)},
                {"max_abs_discrepancy", r.max_abs_discrepancy},
                {"max_standardized_discrepancy", number_json(r.max_standardized)},
                {"samples", r.samples},
                {"verdict", r.pass ? "pass" : "fail"},
                {"notes", r.notes}};
    if (r.exact)
        out["exact_tolerance"] = kExactTol;
    if (!r.per_direction.empty())
    {
        const auto& w = r.per_direction[r.worst];
        out["worst_direction"] = {{"u", to_json(w.u)},
                                  {"h_a", w.h_a},
                                  {"h_b", w.h_b},
                                  {"delta", w.delta},
                                  {"se", w.se}};
    }
    return out;
}

Json to_json(const MaxEquivalenceReport& r)
{
    return {{"max_zonoid", to_json(r.max_report)},
            {"zonoid", to_json(r.zonoid_report)},
            {"consistent", r.consistent},
            {"verdict", r.pass ? "pass" : "fail"}};
}

Json to_json(const SwapReport& r)
{
    Json perms = Json::array();
    for (const auto& p : r.per_permutation)
        perms.push_back({{"perm", p.perm},
                         {"max_abs_discrepancy", p.max_abs_discrepancy},
                         {"max_standardized_discrepancy", number_json(p.max_standardized)},
                         {"pass", p.pass}});
    Json out = {{"worst", to_json(r.worst)},
                {"worst_permutation", r.worst_perm},
                {"permutations", perms},
                {"verdict", r.pass ? "pass" : "fail"}};
    if (r.implementations_agree)
    {
        out["implementations_agree"] = *r.implementations_agree;
        out["implementation_gap"] = r.implementation_gap;
    }
    return out;
}

Json to_json(const PositivityDiagnostic& r)
{
    return {{"means", to_json(r.means)},
            {"mean_se", to_json(r.mean_se)},
            {"nonpositive_mass", r.nonpositive_mass},
            {"exact", r.exact},
            {"fires", r.fires},
            {"reasons", r.reasons}};
}

Json to_json(const RelationsReport& r)
{
    Json out = {{"a_swap_invariant", r.a},
                {"b_lift_swap_invariant", r.b},
                {"c_exchangeable_per_pivot", r.c_per_pivot},
                {"consistent", r.consistent},
                {"notes", r.notes}};
    if (r.c)
        out["c_exchangeable"] = *r.c;
    return out;
}

Json to_json(const EvenHomogeneousReport& r)
{
    Json fs = Json::array();
    for (const auto& f : r.per_function)
        fs.push_back({{"name", f.name},
                      {"mean_a", f.mean_a},
                      {"mean_b", f.mean_b},
                      {"delta", f.delta},
                      {"se", f.se},
                      {"exact", f.exact},
                      {"pass", f.pass}});
    return {{"functions", fs}, {"threshold", r.tau}, {"verdict", r.pass ? "pass" : "fail"}};
}

Json to_json(const LevyCheckReport& r)
{
    Json out = {{"dim", r.dim},
                {"c_expectations_equal", r.expectations_equal},
                {"expectation_residual", r.expectation_residual},
                {"tol", r.tol},
                {"failed_conditions", r.failed},
                {"verdict", r.pass ? "pass" : "fail"}};
    if (r.variogram_equal)
    {
        out["a_variogram_equal"] = *r.variogram_equal;
        out["variogram_residual"] = r.variogram_residual;
    }
    if (r.pushforward_equal)
    {
        out["b_pushforward_equal"] = *r.pushforward_equal;
        out["pushforward_residual"] = r.pushforward_residual;
    }
    return out;
}

Json to_json(const LognormalCheckReport& r)
{
    return {{"variogram_equal", r.variogram_equal},
            {"variogram_residual", r.variogram_residual},
            {"drifts_equal", r.drifts_equal},
            {"drift_residual", r.drift_residual},
            {"verdict", r.pass ? "pass" : "fail"}};
}

Json to_json(const CfCriterionReport& r)
{
    Json pts = Json::array();
    for (const auto& p : r.points)
        pts.push_back({{"u", to_json(p.u)},
                       {"phi_a", complex_json(p.phi_a)},
                       {"phi_b", complex_json(p.phi_b)},
                       {"abs_diff", p.abs_diff}});
    return {{"w", to_json(r.w)},
            {"points", pts},
            {"max_abs_diff", r.max_abs_diff},
            {"tol", r.tol},
            {"verdict", r.pass ? "pass" : "fail"}};
}

Json to_json(const EllipticalCheckReport& r)
{
    return {{"matrix_a", to_json(r.m_a)},
            {"matrix_b", to_json(r.m_b)},
            {"residual", r.residual},
            {"verdict", r.pass ? "pass" : "fail"}};
}

Json to_json(const LocationScaleRecovery& r)
{
    return {{"mu", r.mu},
            {"sigma", r.sigma},
            {"bracket", {r.bracket_lo, r.bracket_hi}},
            {"bracket_width", r.bracket_hi - r.bracket_lo},
            {"iterations", r.iterations},
            {"samples", r.samples}};
}

Json to_json(const BrownResnickReport& r)
{
    Json out = {{"constant", r.constant},
                {"max_deviation", r.max_deviation},
                {"constant_ok", r.constant_ok},
                {"increments_ok", r.increments_ok},
                {"verdict", r.pass ? "pass" : "fail"}};
    if (r.lag_residual)
        out["lag_residual"] = *r.lag_residual;
    return out;
}

Json to_json(const CfReport& r)
{
    Json es = Json::array();
    for (const auto& e : r.entries)
        es.push_back({{"u", to_json(e.u)},
                      {"empirical", complex_json(e.empirical)},
                      {"predicted", e.predicted},
                      {"support", e.support},
                      {"discrepancy", e.discrepancy},
                      {"bootstrap_se", e.bootstrap_se}});
    return {{"entries", es}, {"sup_discrepancy", r.sup_discrepancy}, {"paths", r.paths}, {"terms", r.terms}};
}

Json to_json(const TwoSampleReport& r)
{
    return {{"statistic", r.statistic},
            {"threshold", r.threshold},
            {"level", r.level},
            {"permutations", r.permutations},
            {"projections", r.projections},
            {"verdict", r.pass ? "pass" : "fail"}};
}

Json to_json(const StationarityCrossCheck& r)
{
    return {{"zonoid", to_json(r.zonoid)},
            {"simulated", to_json(r.simulated)},
            {"agree", r.agree},
            {"verdict", r.pass ? "pass" : "fail"}};
}

Json to_json(const MeanWidthCheck& r)
{
    return {{"norm_mean", r.norm_mean},
            {"norm_se", r.norm_se},
            {"mean_width", r.mean_width},
            {"identity_side", r.identity_side},
            {"identity_se", r.identity_se},
            {"abs_difference", r.abs_difference},
            {"difference_se", r.difference_se},
            {"nodes", r.nodes},
            {"exact", r.exact}};
}

Json to_json(const Zonotope2D& z)
{
    Json v = Json::array(), g = Json::array();
    for (const auto& x : z.vertices())
        v.push_back(to_json(x));
    for (const auto& x : z.generators())
        g.push_back(to_json(x));
    return {{"vertices", v}, {"generators", g}, {"area", z.area()}};
}

Json to_json(const L1Diagnostic& r)
{
    return {{"checkpoints", r.checkpoints},
            {"mean_abs_error", r.mean_abs_error},
            {"mean_abs_error_se", r.mean_abs_error_se},
            {"median_abs_error", r.median_abs_error},
            {"mean_average", r.mean_average},
            {"mean_average_se", r.mean_average_se},
            {"median_average", r.median_average}};
}

Json to_json(const CauchyDiagnostic& r)
{
    return {{"n", r.n}, {"median_increment", r.median_increment}, {"decreasing", r.decreasing}};
}

Json to_json(const LimitFormulaReport& r)
{
    return {{"paths", r.paths.size()},
            {"n", r.n},
            {"max_relative_gap", r.max_relative_gap},
            {"identity_holds", r.identity_holds},
            {"median_abs_error", r.median_abs_error}};
}

//---------------------------------------------------------------------------//
// Files
//---------------------------------------------------------------------------//

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot open " + path);
    try
    {
        return Json::parse(in);
    }
    catch (const Json::parse_error& e)
    {
        throw ConfigError(path + ": invalid JSON: " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), "cannot write " + path);
    out << text;
    require(static_cast<bool>(out), "write failed for " + path);
}

std::string config_hash(const Json& config)
{
    std::string s = config.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s)
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Json run_manifest(std::optional<std::uint64_t> seed, const Json& config)
{
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
    Json m = {{"version", ZONOID_VERSION}, {"config_hash", config_hash(config)}, {"timestamp", stamp}};
    m["seed"] = seed ? Json(*seed) : Json(nullptr);
    return m;
}

}  // namespace zonoid
