#include "shelter/rng.hpp"

namespace shelter::des {

std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t replication, std::string_view stream_name) noexcept
{
    return mix64(mix64(mix64(master_seed) ^ replication) ^ fnv1a64(stream_name));
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t replication, std::string_view stream_name)
    : name_(stream_name), seed_(derive_seed(master_seed, replication, stream_name)), engine_(seed_)
{
}

double RngStream::uniform() noexcept
{
    ++draws_;
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

}  // namespace shelter::des
