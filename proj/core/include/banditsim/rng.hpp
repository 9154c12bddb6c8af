#pragma once

#include <cstdint>
#include <random>

namespace banditsim {

// SplitMix64 finalizer: a bijective avalanche mix on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Engine seed of the substream for one trial. Distinct trial indices under
// one master seed give distinct seeds, so trials are reproducible
// independently of execution order and worker count.
constexpr std::uint64_t substream_seed(std::uint64_t master_seed,
                                       std::uint64_t trial_index) noexcept {
    return mix64(mix64(master_seed) + trial_index);
}

// Master seed of one sweep cell. Keyed on the strategy's fixed ordinal and
// on m, so adding strategies or m values to a sweep never perturbs the
// estimates of existing cells.
constexpr std::uint64_t cell_seed(std::uint64_t master_seed,
                                  std::uint64_t strategy_ordinal,
                                  std::uint64_t m) noexcept {
    return mix64(mix64(mix64(master_seed) + strategy_ordinal) + m);
}

// Reward stream for one simulation trial.
//
// The generator is std::mt19937_64 (output sequence fixed by the standard)
// seeded with substream_seed(master_seed, trial_index). Uniform variates use
// the top 53 bits of one 64-bit draw, so a reward sequence is a pure
// function of (master_seed, trial_index) and the order of pulls, bit for
// bit, on every conforming platform.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t trial_index)
        : master_seed_(master_seed),
          trial_index_(trial_index),
          engine_(substream_seed(master_seed, trial_index)) {}

    // Uniform on [0, 1); consumes exactly one engine draw.
    double next_uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t trial_index() const { return trial_index_; }

private:
    std::uint64_t master_seed_;
    std::uint64_t trial_index_;
    std::mt19937_64 engine_;
};

}  // namespace banditsim
