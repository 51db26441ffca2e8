#pragma once

#include <cstdint>
#include <random>

namespace zonoid
{

/// SplitMix64 finaliser; used to derive independent engine seeds.
std::uint64_t mix64(std::uint64_t x);

/// Engine seed for stream `stream` of master seed `seed`.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

//---------------------------------------------------------------------------//
/*!
 * A reproducible random stream identified by (seed, stream index).
 *
 * Every parallel unit of work (a chunk of sample rows, a LePage path, an
 * ergodic path) owns its own stream, so results do not depend on the number
 * of workers or on the order in which units are scheduled.
 */
class RngStream
{
public:
    using engine_type = std::mt19937_64;

    RngStream(std::uint64_t seed, std::uint64_t stream);

    engine_type& engine() { return engine_; }

    /// Uniform on [0, 1).
    double uniform()
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform on (0, 1].
    double uniform_open_left() { return 1.0 - uniform(); }

    double normal() { return normal_(engine_); }

    double exponential();

    /// Fair random sign.
    double sign() { return (engine_() >> 63) ? 1.0 : -1.0; }

private:
    engine_type engine_;
    std::normal_distribution<double> normal_;
};

/// Row chunk size used by matrix samplers; each chunk has its own stream.
inline constexpr std::size_t kChunkRows = 4096;

}  // namespace zonoid
