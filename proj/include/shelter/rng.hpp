#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace shelter::des {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// 64-bit FNV-1a of a byte string.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// Seed of the substream (master seed, replication index, stream name).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t replication, std::string_view stream_name) noexcept;

/// A named, independently seeded source of uniform draws.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard, and the uniform mapping below uses only integer arithmetic and
/// one exact scaling, so a given (seed, draw index) yields the same value on
/// every conforming platform.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t replication, std::string_view stream_name);

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    /// Uniform on (0, 1].
    double uniform_positive() noexcept { return 1.0 - uniform(); }

    std::uint64_t next_u64() noexcept { return engine_(); }

    const std::string& name() const noexcept { return name_; }
    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t draws() const noexcept { return draws_; }

private:
    std::string name_;
    std::uint64_t seed_;
    std::uint64_t draws_ = 0;
    std::mt19937_64 engine_;
};

}  // namespace shelter::des
