#include "zonoid/levy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "zonoid/error.hpp"
#include "zonoid/rng.hpp"
#include "zonoid/stats.hpp"
#include "zonoid/support.hpp"

namespace zonoid
{
namespace
{
using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;

constexpr double kConstraintTol = 1e-12;

ComplexVector complex_argument(const Vector& u, const Vector& w)
{
    return u.cast<Complex>() - Complex(0.0, 1.0) * w.cast<Complex>();
}

Complex gaussian_exponent(const Vector& b, const Matrix& a, const ComplexVector& z)
{
    const Complex i(0.0, 1.0);
    Complex quad = z.transpose() * a.cast<Complex>() * z;
    return i * b.cast<Complex>().dot(z) - 0.5 * quad;
}

bool lex_less(const Vector& x, const Vector& y)
{
    for (Eigen::Index j = 0; j < x.size(); ++j)
        if (x[j] != y[j])
            return x[j] < y[j];
    return false;
}
}  // namespace

//---------------------------------------------------------------------------//
// LevyTriplet
//---------------------------------------------------------------------------//

LevyTriplet::LevyTriplet(Matrix a, std::vector<LevyAtom> nu, Vector b)
    : a_(std::move(a)), nu_(std::move(nu)), b_(std::move(b))
{
    const auto d = b_.size();
    require(d >= 1, "triplet dimension must be >= 1");
    require(a_.rows() == d && a_.cols() == d, "triplet: A shape does not match b");
    require(a_.allFinite() && b_.allFinite(), "triplet: non-finite entry");
    require(asymmetry(a_) <= kPsdTol, "triplet: A is not symmetric");
    require(min_eigenvalue(a_) >= -kPsdTol, "triplet: A is not positive semidefinite");
    for (const auto& atom : nu_)
    {
        require(atom.x.size() == d, "triplet: Levy atom dimension does not match b");
        require(atom.x.allFinite(), "triplet: non-finite Levy atom");
        require(!atom.x.isZero(0.0), "triplet: Levy measure has an atom at the origin");
        require(std::isfinite(atom.mass) && atom.mass > 0.0, "triplet: Levy masses must be > 0");
    }
}

Variogram variogram(const Matrix& a)
{
    require(a.rows() == a.cols(), "variogram: matrix must be square");
    require(asymmetry(a) <= kSymmetryTol, "variogram: matrix is not symmetric");
    const auto d = a.rows();
    Matrix g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            g(i, j) = a(i, i) + a(j, j) - 2.0 * a(i, j);
    return {g};
}

Matrix u_matrix(int d)
{
    require(d >= 2, "U matrix needs d >= 2");
    Matrix u = Matrix::Zero(d - 1, d);
    for (int i = 0; i < d - 1; ++i)
    {
        u(i, i) = 1.0;
        u(i, d - 1) = -1.0;
    }
    return u;
}

std::vector<LevyAtom> tilted_pushforward(const std::vector<LevyAtom>& nu, int d)
{
    require(d >= 2, "tilted pushforward needs d >= 2");
    Matrix u = u_matrix(d);
    std::vector<LevyAtom> images;
    for (const auto& atom : nu)
    {
        require(atom.x.size() == d, "Levy atom dimension mismatch");
        Vector y = u * atom.x;
        if (y.cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, atom.x.cwiseAbs().maxCoeff()))
            continue;
        double tilt = std::exp(atom.x[d - 1]);
        if (!std::isfinite(tilt))
            throw std::range_error("tilted pushforward: e^{x_d} overflows");
        images.push_back({y, atom.mass * tilt});
    }
    std::sort(images.begin(), images.end(),
              [](const LevyAtom& p, const LevyAtom& q) { return lex_less(p.x, q.x); });
    std::vector<LevyAtom> merged;
    for (auto& img : images)
    {
        bool joined = false;
        for (auto& m : merged)
            if ((m.x - img.x).cwiseAbs().maxCoeff() <= kAtomMergeTol)
            {
                m.mass += img.mass;
                joined = true;
                break;
            }
        if (!joined)
            merged.push_back(std::move(img));
    }
    return merged;
}

double expectation_condition(const LevyTriplet& t, int i)
{
    require(i >= 0 && i < t.dim(), "coordinate index out of range");
    double e = t.drift()[i] + 0.5 * t.gaussian()(i, i);
    for (const auto& atom : t.levy_measure())
    {
        double g = std::exp(atom.x[i]);
        if (!std::isfinite(g))
            throw std::range_error("expectation condition: e^{x_i} overflows for a Levy atom");
        double small = atom.x.norm() <= 1.0 ? atom.x[i] : 0.0;
        e += atom.mass * (g - 1.0 - small);
    }
    return e;
}

LevyTriplet gaussian_triplet(const GaussianLaw& g)
{
    return LevyTriplet(g.cov(), {}, g.mean());
}

LevyCheckReport check_log_id_equiv(const LevyTriplet& t1, const LevyTriplet& t2, double tol)
{
    require(t1.dim() == t2.dim(), "triplets differ in dimension");
    require(tol >= 0.0, "tolerance must be >= 0");
    const int d = t1.dim();
    LevyCheckReport r;
    r.dim = d;
    r.tol = tol;

    for (int i = 0; i < d; ++i)
        r.expectation_residual = std::max(
            r.expectation_residual, std::abs(expectation_condition(t1, i) - expectation_condition(t2, i)));
    r.expectations_equal = r.expectation_residual <= tol;

    if (d >= 2)
    {
        r.variogram_residual
            = max_abs_diff(variogram(t1.gaussian()).gamma, variogram(t2.gaussian()).gamma);
        r.variogram_equal = r.variogram_residual <= tol;

        auto p1 = tilted_pushforward(t1.levy_measure(), d);
        auto p2 = tilted_pushforward(t2.levy_measure(), d);
        // Unmatched atoms count with their full mass.
        std::vector<bool> used(p2.size(), false);
        double residual = 0.0;
        for (const auto& a : p1)
        {
            bool found = false;
            for (std::size_t j = 0; j < p2.size(); ++j)
                if (!used[j] && (a.x - p2[j].x).cwiseAbs().maxCoeff() <= kAtomMergeTol)
                {
                    residual = std::max(residual, std::abs(a.mass - p2[j].mass));
                    used[j] = true;
                    found = true;
                    break;
                }
            if (!found)
                residual = std::max(residual, a.mass);
        }
        for (std::size_t j = 0; j < p2.size(); ++j)
            if (!used[j])
                residual = std::max(residual, p2[j].mass);
        r.pushforward_residual = residual;
        r.pushforward_equal = residual <= tol;

        if (!*r.variogram_equal)
            r.failed.push_back("a");
        if (!*r.pushforward_equal)
            r.failed.push_back("b");
    }
    if (!r.expectations_equal)
        r.failed.push_back("c");
    r.pass = r.failed.empty();
    return r;
}

LognormalCheckReport check_lognormal_equiv(const LognormalLaw& l1, const LognormalLaw& l2, double tol)
{
    const auto& g1 = l1.log_law();
    const auto& g2 = l2.log_law();
    require(g1.dim() == g2.dim(), "laws differ in dimension");
    LognormalCheckReport r;
    Vector c1 = g1.mean() + 0.5 * g1.cov().diagonal();
    Vector c2 = g2.mean() + 0.5 * g2.cov().diagonal();
    r.drift_residual = (c1 - c2).cwiseAbs().maxCoeff();
    r.variogram_residual = max_abs_diff(variogram(g1.cov()).gamma, variogram(g2.cov()).gamma);
    r.drifts_equal = r.drift_residual <= tol;
    r.variogram_equal = r.variogram_residual <= tol;
    r.pass = r.drifts_equal && r.variogram_equal;
    return r;
}

//---------------------------------------------------------------------------//
// Characteristic functions
//---------------------------------------------------------------------------//

std::complex<double> characteristic_function(const LevyTriplet& t, const Vector& u, const Vector& w)
{
    require(u.size() == t.dim() && w.size() == t.dim(), "argument dimension mismatch");
    ComplexVector z = complex_argument(u, w);
    const Complex i(0.0, 1.0);
    Complex e = gaussian_exponent(t.drift(), t.gaussian(), z);
    for (const auto& atom : t.levy_measure())
    {
        Complex zx = z.dot(atom.x.cast<Complex>());
        Complex small = atom.x.norm() <= 1.0 ? i * zx : Complex(0.0);
        e += atom.mass * (std::exp(i * zx) - 1.0 - small);
    }
    Complex out = std::exp(e);
    if (!std::isfinite(out.real()) || !std::isfinite(out.imag()))
        throw std::range_error("characteristic function overflows at this argument");
    return out;
}

std::complex<double> log_characteristic_function(const LawModel& law, const Vector& u, const Vector& w)
{
    require(u.size() == dim(law) && w.size() == dim(law), "argument dimension mismatch");
    if (auto* g = std::get_if<GaussianLaw>(&law))
        return characteristic_function(gaussian_triplet(*g), u, w);
    if (auto* l = std::get_if<LognormalLaw>(&law))
        return characteristic_function(gaussian_triplet(l->log_law()), u, w);
    if (auto* l = std::get_if<InfDivLaw>(&law))
    {
        require(l->exponentiate(), "characteristic criterion needs the log-law of a positive vector");
        return characteristic_function(l->triplet(), u, w);
    }
    if (auto* l = std::get_if<DiscreteLaw>(&law))
    {
        const Complex i(0.0, 1.0);
        Complex s = 0.0;
        for (std::size_t k = 0; k < l->size(); ++k)
        {
            Vector x = l->atom(k);
            s += l->weights()[k] * std::exp(i * u.dot(x) + w.dot(x));
        }
        return s;
    }
    throw ConfigError("characteristic criterion supports gaussian, lognormal, "
                      "infinitely divisible and discrete laws, got " + type_name(law));
}

std::vector<Vector> zero_sum_directions(int d, std::size_t count, std::uint64_t seed)
{
    require(d >= 2, "zero-sum directions need d >= 2");
    RngStream rng(seed, 0x7a65726f73756dULL);
    std::vector<Vector> out;
    while (out.size() < count)
    {
        Vector v(d);
        for (int j = 0; j < d; ++j)
            v[j] = rng.normal();
        v.array() -= v.mean();
        double n = v.norm();
        if (n > 1e-9)
            out.push_back(v / n);
    }
    return out;
}

Vector barycentre(int d)
{
    require(d >= 1, "dimension must be >= 1");
    return Vector::Constant(d, 1.0 / d);
}

CfCriterionReport cf_criterion(const LawModel& a,
                               const LawModel& b,
                               const std::vector<Vector>& us,
                               const Vector& w,
                               double tol)
{
    const int d = dim(a);
    require(dim(b) == d, "laws differ in dimension");
    require(w.size() == d, "w dimension mismatch");
    require(std::abs(w.sum() - 1.0) <= kConstraintTol, "w must sum to 1");
    require(!us.empty(), "no u values supplied");
    CfCriterionReport r;
    r.w = w;
    r.tol = tol;
    for (const auto& u : us)
    {
        require(u.size() == d, "u dimension mismatch");
        require(std::abs(u.sum()) <= kConstraintTol, "u must sum to 0");
        CfPoint p{u, log_characteristic_function(a, u, w), log_characteristic_function(b, u, w), 0.0};
        p.abs_diff = std::abs(p.phi_a - p.phi_b);
        r.max_abs_diff = std::max(r.max_abs_diff, p.abs_diff);
        r.points.push_back(std::move(p));
    }
    r.pass = r.max_abs_diff <= tol;
    return r;
}

//---------------------------------------------------------------------------//
// Elliptical and location-scale
//---------------------------------------------------------------------------//

Matrix elliptical_zonoid_matrix(const EllipticalLaw& e)
{
    double c = e.radial_mean() * sphere_abs_coordinate_mean(static_cast<int>(e.matrix().cols()));
    return c * c * e.matrix() * e.matrix().transpose();
}

EllipticalCheckReport check_elliptical_equiv(const EllipticalLaw& a, const EllipticalLaw& b, double tol)
{
    require(a.dim() == b.dim(), "laws differ in dimension");
    EllipticalCheckReport r;
    r.m_a = elliptical_zonoid_matrix(a);
    r.m_b = elliptical_zonoid_matrix(b);
    r.residual = max_abs_diff(r.m_a, r.m_b);
    r.pass = r.residual <= tol;
    return r;
}

LocationScaleData location_scale_data(const LocationScaleLaw& law, std::size_t samples, std::uint64_t seed)
{
    LocationScaleData out;
    out.mean = law.location();
    if (law.base() == LocationScaleLaw::Base::normal)
    {
        out.positive_part_mean = 0.5 * (folded_normal_mean(law.location(), law.scale()) + law.location());
        return out;
    }
    Matrix x = sample(law, samples, seed);
    out.positive_part_mean = x.col(0).cwiseMax(0.0).mean();
    return out;
}

LocationScaleRecovery recover_location_scale(LocationScaleLaw::Base base,
                                             const LocationScaleData& observed,
                                             std::size_t samples,
                                             std::uint64_t seed,
                                             double rel_tol)
{
    LocationScaleLaw probe(base, 0.0, 1.0);
    if (probe.ess_inf_finite() || probe.ess_sup_finite())
        throw ConfigError("scale is not identifiable from zonoid data when the base law has "
                          "bounded support on either side; refusing to recover");
    require(samples >= 2, "need at least 2 samples");
    require(std::isfinite(observed.mean) && std::isfinite(observed.positive_part_mean),
            "observed zonoid data must be finite");

    // Frozen sample, recentred so the objective is exactly monotone in sigma.
    Matrix x = sample(LocationScaleLaw(base, 0.0, 1.0), samples, seed);
    Vector xs = x.col(0);
    xs.array() -= xs.mean();

    const double mu = observed.mean;
    const double target = observed.positive_part_mean;
    auto objective = [&](double sigma) {
        CompensatedSum s;
        for (Eigen::Index i = 0; i < xs.size(); ++i)
            s.add(std::max(0.0, mu + sigma * xs[i]));
        return s.value() / static_cast<double>(xs.size());
    };

    if (!(target > std::max(mu, 0.0)))
        throw DiagnosticError("E xi_+ must exceed max(E xi, 0) for a non-degenerate scale");

    LocationScaleRecovery r;
    r.mu = mu;
    r.samples = samples;
    double lo = 1e-6, hi = 1.0;
    if (objective(lo) >= target)
    {
        r.sigma = r.bracket_lo = r.bracket_hi = lo;
        return r;
    }
    int doublings = 0;
    while (objective(hi) < target)
    {
        lo = hi;
        hi *= 2.0;
        if (++doublings > 200)
            throw DiagnosticError("scale bracket did not close");
    }
    while (hi - lo > rel_tol * hi && r.iterations < 200)
    {
        double mid = 0.5 * (lo + hi);
        if (objective(mid) < target)
            lo = mid;
        else
            hi = mid;
        ++r.iterations;
    }
    r.sigma = 0.5 * (lo + hi);
    r.bracket_lo = lo;
    r.bracket_hi = hi;
    return r;
}

//---------------------------------------------------------------------------//
// Brown-Resnick
//---------------------------------------------------------------------------//

BrownResnickReport brown_resnick_condition(const BrownResnickInput& in, double tol)
{
    const auto n = in.times.size();
    require(n >= 1, "need at least one time");
    require(in.means.size() == n, "one mean per time required");
    require(in.variances.size() == n, "missing variance values: one variance per time required");

    BrownResnickReport r;
    CompensatedSum c;
    for (std::size_t i = 0; i < n; ++i)
        c.add(in.means[i] + 0.5 * in.variances[i]);
    r.constant = c.value() / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        r.max_deviation = std::max(r.max_deviation,
                                   std::abs(in.means[i] + 0.5 * in.variances[i] - r.constant));
    r.constant_ok = r.max_deviation <= tol;

    if (in.variogram)
    {
        const Matrix& g = *in.variogram;
        require(g.rows() == static_cast<Eigen::Index>(n) && g.cols() == g.rows(),
                "variogram shape does not match times");
        // Pairs at equal lag must carry equal variogram values.
        double residual = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t l = k + 1; l < n; ++l)
                    {
                        double lag1 = std::abs(in.times[j] - in.times[i]);
                        double lag2 = std::abs(in.times[l] - in.times[k]);
                        if (std::abs(lag1 - lag2) <= 1e-12 * std::max(1.0, lag1))
                            residual = std::max(residual, std::abs(g(i, j) - g(k, l)));
                    }
        r.lag_residual = residual;
        r.increments_ok = residual <= tol;
    }
    else
    {
        require(in.increments_asserted,
                "increment stationarity must be asserted or a variogram supplied");
        r.increments_ok = true;
    }
    r.pass = r.constant_ok && r.increments_ok;
    return r;
}

BrownResnickInput brown_resnick_input(const GaussianProcess& gp, std::span<const double> times)
{
    BrownResnickInput in;
    in.times.assign(times.begin(), times.end());
    Vector m = gp.means_at(times);
    Matrix c = gp.covariance_at(times);
    in.means.assign(m.data(), m.data() + m.size());
    for (Eigen::Index i = 0; i < c.rows(); ++i)
        in.variances.push_back(c(i, i));
    in.variogram = variogram(c).gamma;
    return in;
}

}  // namespace zonoid
