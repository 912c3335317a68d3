#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). The key is the
// seed; the upper 64 bits of the counter select an independent stream, so
// (seed, stream) pairs can be handed to workers without coordination.

#include <array>
#include <cstdint>
#include <limits>

namespace pomr {

class Philox4x32 {
public:
    using result_type = std::uint32_t;
    using Block = std::array<std::uint32_t, 4>;

    explicit Philox4x32(std::uint64_t seed = 0, std::uint64_t stream = 0) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    static Block bijection(Block counter, std::array<std::uint32_t, 2> key) noexcept;

private:
    void refill() noexcept;

    std::array<std::uint32_t, 2> key_;
    Block counter_;
    Block buffer_{};
    int next_ = 4;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Mixes a base seed with a purpose tag and an index into a child seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) noexcept;

}  // namespace pomr
