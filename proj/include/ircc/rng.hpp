// Counter-based pseudo-random generator.
//
// Every draw is a pure function of (seed, stream, draw index), so a run
// partitioned across threads by stream produces bit-identical results to a
// serial run, and individual draws can be addressed lazily without
// generating their predecessors.  The mixing function is the SplitMix64
// output permutation applied twice, which passes the usual statistical
// batteries when driven by a weak counter.
#pragma once

#include <cstdint>

namespace ircc {

namespace detail {

inline std::uint64_t avalanche64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

}  // namespace detail

class CounterRng {
  public:
    // stream is typically a frame or sample index; draws within one stream
    // are addressed by a counter.
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : base_(detail::avalanche64(seed + detail::kGolden * (stream + 1))) {}

    std::uint64_t u64_at(std::uint64_t draw) const {
        return detail::avalanche64(base_ + detail::kGolden * (draw + 1));
    }

    // Uniform on (0, 1]; never returns 0, so -log() of it is finite.
    double unit_at(std::uint64_t draw) const {
        return static_cast<double>((u64_at(draw) >> 11) + 1) * 0x1.0p-53;
    }

    // Mirrored lattice 1 - u shifted back onto (0, 1]; used for antithetic
    // pairs.
    double unit_mirror_at(std::uint64_t draw) const {
        return static_cast<double>((~u64_at(draw) >> 11) + 1) * 0x1.0p-53;
    }

    // Sequential convenience interface.
    std::uint64_t next_u64() { return u64_at(counter_++); }
    double next_unit() { return unit_at(counter_++); }

  private:
    std::uint64_t base_;
    std::uint64_t counter_ = 0;
};

}  // namespace ircc
