#include "zonoid/rng.hpp"

#include <cmath>

namespace zonoid
{

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream)
{
    return mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : engine_(stream_seed(seed, stream))
{
}

double RngStream::exponential()
{
    return -std::log(uniform_open_left());
}

}  // namespace zonoid
