#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zonoid/invariance.hpp"
#include "zonoid/laws.hpp"
#include "zonoid/process.hpp"
#include "zonoid/support.hpp"

namespace zonoid
{

enum class LePageMode
{
    sum,  //!< sum_k Gamma_k^{-1} xi_k, symmetric 1-stable
    max,  //!< max_k Gamma_k^{-1} xi_k, max-stable with unit Frechet scale
};

std::string to_string(LePageMode mode);

struct LePageConfig
{
    LawModel driver;
    LePageMode mode = LePageMode::sum;
    std::size_t terms = 10000;  //!< N Poisson arrivals per path
    std::size_t paths = 1000;
    std::uint64_t seed = 0;
    /// Sum mode: the caller asserts symmetry of a driver that cannot be
    /// verified exactly (checked on a pilot sample).
    bool declared_symmetric = false;
    /// Max mode: declared bound xi_i <= upper_bound enabling early exit.
    std::optional<double> upper_bound;
};

struct LePageResult
{
    Matrix values;                         //!< paths x d
    std::vector<double> tail_start;        //!< Gamma_N^{-1} per path
    std::vector<double> last_increment;    //!< |Gamma_N^{-1} xi_N| (sum mode)
    std::vector<std::size_t> terms_used;   //!< < N only after a max-mode early exit
    std::vector<std::string> notes;
};

/// Result of the symmetry check required by sum mode.
struct SymmetryCheck
{
    bool symmetric = false;
    bool exact = false;
    std::string reason;
};

SymmetryCheck check_symmetry(const LawModel& driver, bool declared, std::uint64_t seed);

/// Per path p: stream (seed, p); arrivals and marks drawn in fixed blocks so
/// the first N terms do not depend on N.
LePageResult simulate_lepage(const LePageConfig& cfg);

struct CfEntry
{
    Vector u;
    std::complex<double> empirical;
    double predicted = 1.0;
    double support = 0.0;       //!< E|<u, xi>| used for the prediction
    double discrepancy = 0.0;   //!< |empirical - predicted|
    double bootstrap_se = 0.0;  //!< bootstrap SE of the empirical CF
};

struct CfReport
{
    std::vector<CfEntry> entries;
    double sup_discrepancy = 0.0;
    std::size_t paths = 0;
    std::size_t terms = 0;
};

/// Empirical CF of the sum-mode series vs exp(-(pi/2) E|<u, xi>|).
CfReport cf_check(const LePageConfig& cfg,
                  const std::vector<Vector>& us,
                  const McBudget& support_budget,
                  std::size_t bootstrap_resamples = 200);

CfReport cf_check(const LePageResult& sim,
                  const LawModel& driver,
                  const std::vector<Vector>& us,
                  const McBudget& support_budget,
                  std::size_t bootstrap_resamples,
                  std::uint64_t seed);

struct TwoSampleReport
{
    double statistic = 0.0;   //!< max over projections of the KS distance
    double threshold = 0.0;   //!< permutation quantile at `level`
    double level = 0.99;
    std::size_t permutations = 0;
    std::size_t projections = 0;
    bool pass = false;        //!< statistic <= threshold
};

/// Two-sample test on 1-d projections with a permutation threshold.
TwoSampleReport two_sample_projection_test(const Matrix& a,
                                           const Matrix& b,
                                           const std::vector<Vector>& directions,
                                           std::size_t permutations,
                                           double level,
                                           std::uint64_t seed);

struct StationarityCrossCheck
{
    EquivalenceReport zonoid;
    TwoSampleReport simulated;
    bool agree = false;
    bool pass = false;
};

/*!
 * Zonoid stationarity of the driver at (times, times + shift) against a
 * two-sample comparison of the simulated LePage processes at the same time
 * sets (independent streams for the two time sets).
 */
StationarityCrossCheck stationarity_cross_check(const ProcessModel& driver,
                                                std::span<const double> times,
                                                double shift,
                                                const DirectionGrid& grid,
                                                const McBudget& budget,
                                                const TestOptions& options,
                                                LePageMode mode,
                                                std::size_t terms,
                                                std::size_t paths,
                                                std::size_t permutations = 200);

}  // namespace zonoid
