#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace prodplan {

// Philox4x32-10 keyed counter permutation (Salmon et al., SC 2011).  Purely
// functional: the caller owns the counter, so any draw of any path can be
// regenerated in O(1) and simulated paths are reproducible regardless of
// evaluation order.
struct Philox4x32 {
    static constexpr std::uint32_t kMult0 = 0xD2511F53u;
    static constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                              std::array<std::uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t product0 = static_cast<std::uint64_t>(kMult0) * counter[0];
            const std::uint64_t product1 = static_cast<std::uint64_t>(kMult1) * counter[2];
            const std::array<std::uint32_t, 4> next = {
                static_cast<std::uint32_t>(product1 >> 32) ^ counter[1] ^ key[0],
                static_cast<std::uint32_t>(product1),
                static_cast<std::uint32_t>(product0 >> 32) ^ counter[3] ^ key[1],
                static_cast<std::uint32_t>(product0),
            };
            counter = next;
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        return counter;
    }
};

// Stream of standard normal draws for one simulation path.  The Philox key
// carries the master seed and the counter carries (draw index, stream index),
// so streams for different paths never overlap and a path's draws do not
// depend on how many other paths were simulated before it.
class NormalStream {
public:
    NormalStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : key_{static_cast<std::uint32_t>(master_seed),
               static_cast<std::uint32_t>(master_seed >> 32)},
          stream_lo_(static_cast<std::uint32_t>(stream_index)),
          stream_hi_(static_cast<std::uint32_t>(stream_index >> 32)) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const std::array<std::uint32_t, 4> words = Philox4x32::block(
            {static_cast<std::uint32_t>(draw_), static_cast<std::uint32_t>(draw_ >> 32),
             stream_lo_, stream_hi_},
            key_);
        ++draw_;

        // 53-bit uniforms; u1 is shifted into (0, 1] so the log below is finite.
        const std::uint64_t bits01 = (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
        const std::uint64_t bits23 = (static_cast<std::uint64_t>(words[2]) << 32) | words[3];
        constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
        const double u1 = static_cast<double>((bits01 >> 11) + 1) * kScale;
        const double u2 = static_cast<double>(bits23 >> 11) * kScale;

        constexpr double kTwoPi = 6.283185307179586476925286766559;
        const double radius = std::sqrt(-2.0 * std::log(u1));
        spare_ = radius * std::sin(kTwoPi * u2);
        have_spare_ = true;
        return radius * std::cos(kTwoPi * u2);
    }

private:
    std::array<std::uint32_t, 2> key_;
    std::uint32_t stream_lo_;
    std::uint32_t stream_hi_;
    std::uint64_t draw_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace prodplan
