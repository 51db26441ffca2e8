#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zonoid/sequence.hpp"

namespace zonoid
{

struct ErgodicPath
{
    std::uint64_t index = 0;
    std::vector<double> averages;  //!< one per checkpoint
    std::optional<double> oracle;  //!< closed-form a.s. limit, when known
    std::optional<double> omega;   //!< DaCunhaCastelle state
};

struct ErgodicRun
{
    SequenceModel model;
    std::vector<std::size_t> checkpoints;
    std::vector<ErgodicPath> paths;
    std::uint64_t seed = 0;
    bool has_oracle = false;
};

/// Default checkpoints {10^2, 10^3, 10^4, 10^5}.
std::vector<std::size_t> default_checkpoints();

/*!
 * n^{-1} sum_{i<=n} xi_i at every checkpoint from one evolving prefix per
 * path (compensated summation). Path p uses stream (seed, p), the same
 * stream as sequence_prefix.
 */
ErgodicRun run_averages(const SequenceModel& model,
                        const std::vector<std::size_t>& checkpoints,
                        std::size_t paths,
                        std::uint64_t seed);

/// Closed-form limit for the path, or nullopt when the model has none.
std::optional<double> oracle_limit(const SequenceModel& model, const SequencePath& path);

struct L1Diagnostic
{
    std::vector<std::size_t> checkpoints;
    std::vector<double> mean_abs_error;    //!< mean over paths of |avg_n - oracle|
    std::vector<double> mean_abs_error_se;
    std::vector<double> median_abs_error;
    std::vector<double> mean_average;      //!< cross-path mean of avg_n
    std::vector<double> mean_average_se;
    std::vector<double> median_average;
};

/// Throws ConfigError when the run has no oracle.
L1Diagnostic l1_diagnostic(const ErgodicRun& run);

/// Diagnostic-only mode: |avg_{2n} - avg_n| per path, for models without an oracle.
struct CauchyDiagnostic
{
    std::vector<std::size_t> n;
    std::vector<double> median_increment;
    bool decreasing = false;
};

CauchyDiagnostic cauchy_diagnostic(const SequenceModel& model,
                                   const std::vector<std::size_t>& n,
                                   std::size_t paths,
                                   std::uint64_t seed);

struct LimitFormulaPath
{
    std::vector<double> drivers;
    double eta1 = 0.0;
    double cond_eta1 = 0.0;  //!< E(eta_1 | tail) = e^{(1+b_1)Z_1} e^{-(1+b_1^2+2b_1)/2}
    double cond_eta2 = 0.0;  //!< E(eta_2 | tail) = e^{b_1 Z_1} e^{-b_1^2/2}
    double formula = 0.0;    //!< eta_1 / E(eta_1 | tail) * E(eta_2 | tail)
    double oracle = 0.0;     //!< exp(sum b_i Z_i - sum b_i^2 / 2)
    double relative_gap = 0.0;
    double average = 0.0;    //!< avg_n on the same path
};

struct LimitFormulaReport
{
    std::vector<LimitFormulaPath> paths;
    double max_relative_gap = 0.0;
    bool identity_holds = false;  //!< max relative gap <= 1e-12
    double median_abs_error = 0.0;  //!< median |avg_n - formula|
    std::size_t n = 0;
};

LimitFormulaReport limit_formula_check(const LognormalSwap& model,
                                       std::size_t paths,
                                       std::size_t n,
                                       std::uint64_t seed);

}  // namespace zonoid
