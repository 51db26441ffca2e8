#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zonoid/grid.hpp"
#include "zonoid/process.hpp"
#include "zonoid/support.hpp"

namespace zonoid
{

/// Absolute tolerance for exact-mode verdicts.
inline constexpr double kExactTol = 1e-10;

struct TestOptions
{
    double tau = 3.0;
    /// Replace tau by the Bonferroni-adjusted normal quantile for the grid size.
    bool bonferroni = false;
};

/// Threshold on max |delta| / SE actually applied for a grid of m directions.
double effective_threshold(const TestOptions& options, std::size_t m);

struct DirectionDiscrepancy
{
    Vector u;
    double h_a = 0.0;
    double h_b = 0.0;
    double delta = 0.0;  //!< h_a - h_b
    double se = 0.0;     //!< SE of delta; 0 when both sides are exact
};

//---------------------------------------------------------------------------//
/*!
 * Outcome of comparing two support functions over a grid.
 *
 * Exact mode (all values closed-form): pass iff max |delta| <= 1e-10.
 * Statistical mode: pass iff max |delta| / SE <= threshold.
 */
struct EquivalenceReport
{
    SupportKind kind = SupportKind::centred;
    std::vector<DirectionDiscrepancy> per_direction;
    DirectionGrid::Construction construction = DirectionGrid::Construction::user_supplied;
    bool exact = false;
    double tau = 3.0;
    double threshold = 3.0;
    double max_abs_discrepancy = 0.0;
    double max_standardized = 0.0;
    std::size_t worst = 0;
    std::size_t samples = 0;
    bool pass = false;
    std::vector<std::string> notes;
};

/*!
 * Compare h_a(dirs_a[i]) with h_b(dirs_b[i]). When `same_law` is set the
 * two sides share one sample matrix; otherwise both laws are sampled with
 * the budget seed (common random numbers where the drivers line up).
 */
EquivalenceReport compare_supports(const LawModel& law_a,
                                   const std::vector<Vector>& dirs_a,
                                   const LawModel& law_b,
                                   const std::vector<Vector>& dirs_b,
                                   SupportKind kind,
                                   const McBudget& budget,
                                   const TestOptions& options,
                                   bool same_law = false,
                                   double k = 0.0);

EquivalenceReport test_zonoid_equiv(const LawModel& a,
                                    const LawModel& b,
                                    const DirectionGrid& grid,
                                    const McBudget& budget,
                                    const TestOptions& options = {});

struct MaxEquivalenceReport
{
    EquivalenceReport max_report;
    EquivalenceReport zonoid_report;
    /// Max-zonoid and zonoid verdicts agree (they must for positive laws).
    bool consistent = true;
    bool pass = false;
};

MaxEquivalenceReport test_max_zonoid_equiv(const LawModel& a,
                                           const LawModel& b,
                                           const DirectionGrid& grid,
                                           const McBudget& budget,
                                           const TestOptions& options = {});

//---------------------------------------------------------------------------//
// Swap-invariance
//---------------------------------------------------------------------------//

/// All permutations of {0..d-1} except the identity (d <= 6).
std::vector<std::vector<int>> all_permutations(int d);

/// `count` uniformly random non-identity permutations.
std::vector<std::vector<int>> sampled_permutations(int d, std::size_t count, std::uint64_t seed);

/// Direction v with <v, xi> = <u, pi xi>, i.e. v[perm[i]] = u[i].
Vector permuted_direction(const Vector& u, const std::vector<int>& perm);

struct PermutationResult
{
    std::vector<int> perm;
    double max_abs_discrepancy = 0.0;
    double max_standardized = 0.0;
    bool pass = false;
};

struct SwapReport
{
    /// Report of the worst permutation.
    EquivalenceReport worst;
    std::vector<int> worst_perm;
    std::vector<PermutationResult> per_permutation;
    /// Exact paths only: comparing the permuted law gives the same values.
    std::optional<bool> implementations_agree;
    double implementation_gap = 0.0;
    bool pass = false;
};

SwapReport test_swap_invariance(const LawModel& law,
                                const std::vector<std::vector<int>>& permutations,
                                const DirectionGrid& grid,
                                const McBudget& budget,
                                const TestOptions& options = {});

/// Swap test of (1, xi); the grid lives in R^{d+1}.
SwapReport test_lift_swap_invariance(const LawModel& law,
                                     const std::vector<std::vector<int>>& permutations,
                                     const DirectionGrid& grid,
                                     const McBudget& budget,
                                     const TestOptions& options = {});

struct PositivityDiagnostic
{
    Vector means;
    Vector mean_se;
    double nonpositive_mass = 0.0;  //!< P(some component <= 0), exact or sampled
    bool exact = false;
    bool fires = false;
    std::vector<std::string> reasons;
};

/*!
 * For a law that passed a lift swap test: components must be positive with
 * mean one. A firing diagnostic marks that verdict as a false positive.
 */
PositivityDiagnostic check_positivity_necessity(const LawModel& law, const McBudget& budget);

//---------------------------------------------------------------------------//
// Measure change and the relations between the symmetry notions
//---------------------------------------------------------------------------//

/// kappa_j(x) = (x_i / x_j)_{i != j}.
Vector ratio_map(const Vector& x, int j);

struct MeasureChangedLaw
{
    DiscreteLaw base;
    int pivot = 0;  //!< 0-based
    DiscreteLaw result;
};

/// Law of kappa_j(eta) under dP^j = eta_j / E eta_j dP (pivot 0-based).
MeasureChangedLaw measure_change(const DiscreteLaw& base, int j);

/// Exact exchangeability of a discrete law (atoms merged within tol).
bool is_exchangeable(const DiscreteLaw& law, double tol = 1e-9);

struct RelationsReport
{
    bool a = false;                    //!< eta swap-invariant
    std::vector<bool> b;               //!< per pivot: kappa_j lift swap-invariant under P^j
    std::vector<bool> c_per_pivot;     //!< per pivot: kappa_j exchangeable under P^j
    std::optional<bool> c;             //!< d >= 3: exchangeable for at least two pivots
    bool consistent = false;
    std::vector<std::string> notes;
};

RelationsReport test_relations_theorem(const DiscreteLaw& base,
                                       const DirectionGrid& grid,
                                       const TestOptions& options = {});

//---------------------------------------------------------------------------//
// Stationarity and even homogeneous functionals
//---------------------------------------------------------------------------//

std::vector<double> shifted(std::span<const double> times, double s);

EquivalenceReport test_zonoid_stationarity(const ProcessModel& process,
                                           std::span<const double> times,
                                           double shift,
                                           const DirectionGrid& grid,
                                           const McBudget& budget,
                                           const TestOptions& options = {});

/// f with f(c x) = c f(x) for c >= 0 and f(-x) = f(x).
struct EvenFunction
{
    std::string name;
    std::function<double(const Vector&)> f;
};

EvenFunction norm_l1();
EvenFunction norm_l2();
EvenFunction norm_linf();
/// h_K(x) + h_K(-x) for the polytope K = conv(vertices).
EvenFunction polytope_width(std::vector<Vector> vertices, std::string name = "polytope");
/// Polytope with `m` standard normal vertices.
EvenFunction random_polytope_width(int d, std::size_t m, std::uint64_t seed);

/// Builtin family: l1, l2, linf and `polytopes` random polytope widths.
std::vector<EvenFunction> builtin_even_functions(int d, std::size_t polytopes, std::uint64_t seed);

/// Throws ConfigError when f fails homogeneity or evenness at random points.
void spot_check_even_homogeneous(const EvenFunction& f, int d, std::uint64_t seed);

struct FunctionComparison
{
    std::string name;
    double mean_a = 0.0;
    double mean_b = 0.0;
    double delta = 0.0;
    double se = 0.0;
    bool exact = false;
    bool pass = false;
};

struct EvenHomogeneousReport
{
    std::vector<FunctionComparison> per_function;
    double tau = 3.0;
    bool pass = false;
};

EvenHomogeneousReport test_even_homogeneous(const LawModel& a,
                                            const LawModel& b,
                                            const std::vector<EvenFunction>& functions,
                                            const McBudget& budget,
                                            const TestOptions& options = {});

}  // namespace zonoid
