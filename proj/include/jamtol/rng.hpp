#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace jamtol {

/// Counter-based random numbers: every variate is a pure integer hash of
/// (master seed, trial index, stream, element). No generator state is
/// shared between trials or threads, so any partitioning of trials over
/// workers reproduces the same bits.
namespace rng {

inline constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ull;

/// SplitMix64 finalizer (Stafford mix13 variant).
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Per-trial key. Injective in the trial index for a fixed master seed
/// (affine step composed with a bijective mixer), so seeds never repeat
/// within a job.
inline constexpr std::uint64_t derive_trial_seed(std::uint64_t master_seed,
                                                 std::uint64_t trial_index) noexcept {
    return mix64(mix64(master_seed ^ 0xA0761D6478BD642Full) + trial_index * golden);
}

/// Independent draw streams within a trial, one per channel-gain family.
enum class Stream : std::uint64_t {
    SrcToRelay = 0,
    RelayToDst,
    RelayToBest,
    SrcToEve,
    BestToEve,
    JamEvePhase1,
    JamEvePhase2,
    RelayPick,
};

inline constexpr std::array<std::uint64_t, 8> stream_salt = {
    0x2545F4914F6CDD1Dull, 0x9E6C63D0873D57A3ull, 0xD1B54A32D192ED03ull,
    0x8CB92BA72F3D8DD7ull, 0xABCC5167CCAD925Full, 0x5851F42D4C957F2Dull,
    0x14057B7EF767814Full, 0x27BB2EE687B0B0FDull,
};

inline constexpr double to_unit(std::uint64_t bits) noexcept {
    return double(bits >> 11) * 0x1.0p-53;  // [0, 1)
}

/// Random access into one trial's draw streams.
class TrialRng {
public:
    explicit constexpr TrialRng(std::uint64_t trial_seed) noexcept {
        for (std::size_t f = 0; f < stream_salt.size(); ++f)
            sub_key_[f] = mix64(trial_seed ^ stream_salt[f]);
    }

    constexpr std::uint64_t bits(Stream s, std::uint64_t element) const noexcept {
        return mix64(sub_key_[static_cast<std::size_t>(s)] + element * golden);
    }

    double uniform(Stream s, std::uint64_t element) const noexcept {
        return to_unit(bits(s, element));
    }

    /// Unit-mean exponential via inverse CDF; -log1p(-u) is exact at u = 0
    /// and finite for every representable u in [0, 1).
    double unit_exp(Stream s, std::uint64_t element) const noexcept {
        return -std::log1p(-uniform(s, element));
    }

private:
    std::array<std::uint64_t, 8> sub_key_{};
};

}  // namespace rng
}  // namespace jamtol
