#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "zonoid/laws.hpp"

namespace zonoid
{

/*!
 * xi_n = n(n+1) 1{omega in (1/(n+1), 1/n]} on ([0,1], Lebesgue).
 *
 * Swap-invariant (disjoint supports, equal means) but not exchangeable.
 */
struct DaCunhaCastelle
{
    bool operator==(const DaCunhaCastelle&) const = default;
};

/*!
 * eta_i = exp(Z_i + sum_{k<=K} b_k Z_k + mu_i) with i.i.d. standard normal
 * Z and mu_i = -(1 + sum_{k<=K} b_k^2 + 2 b_i) / 2, so E eta_i = 1.
 *
 * `coefficients` may list more terms than the truncation K; those are
 * reported as discarded tail mass and otherwise ignored.
 */
struct LognormalSwap
{
    std::vector<double> coefficients;
    std::size_t truncation = 0;

    static LognormalSwap make(std::vector<double> b);
    static LognormalSwap make(std::vector<double> b, std::size_t truncation);

    void validate() const;
    double b(std::size_t i) const;  //!< 1-based, zero beyond K
    double coupling_sq() const;     //!< sum_{k<=K} b_k^2
    double discarded_tail() const;  //!< sum_{k>K} b_k^2
    double drift(std::size_t i) const;

    bool operator==(const LognormalSwap&) const = default;
};

/// i.i.d. copies of a scalar base law.
struct IidSequence
{
    LawModel base;

    bool operator==(const IidSequence& other) const { return base == other.base; }
};

using SequenceModel = std::variant<DaCunhaCastelle, LognormalSwap, IidSequence>;

void validate(const SequenceModel& model);

/// One realised prefix together with the state oracles need.
struct SequencePath
{
    std::vector<double> values;
    std::optional<double> omega;  //!< DaCunhaCastelle
    std::vector<double> drivers;  //!< LognormalSwap: Z_1..Z_K
};

/// Path `path` of the model, drawn from stream (seed, path).
SequencePath sequence_prefix(const SequenceModel& model,
                             std::size_t n,
                             std::uint64_t seed,
                             std::uint64_t path = 0);

/// DaCunhaCastelle prefix for an explicit omega in (0, 1].
SequencePath dacunha_castelle_prefix(double omega, std::size_t n);

/// The unique k >= 1 with omega in (1/(k+1), 1/k].
std::uint64_t dacunha_castelle_index(double omega);

/// Exact law of (xi_1, ..., xi_n) as a discrete law (n + 1 atoms).
DiscreteLaw dacunha_castelle_marginal(std::size_t n);

/// Joint lognormal law of (eta_1, ..., eta_n).
LognormalLaw lognormal_swap_marginal(const LognormalSwap& model, std::size_t n);

}  // namespace zonoid
