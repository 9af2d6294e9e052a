#pragma once

#include <cstdint>

namespace allpay {

// Counter-based splittable generator (splitmix64 finalizer over an affine
// counter walk). Every value is a pure function of (key, counter), so
// parallel consumers draw from disjoint counter ranges or derived substreams
// without coordination and reproduce bit-identical sequences.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    std::uint64_t at(std::uint64_t counter) const {
        return mix(key_ + (counter + 1) * kGolden);
    }

    // Uniform double strictly inside (0,1).
    double uniform_at(std::uint64_t counter) const {
        return (static_cast<double>(at(counter) >> 11) + 0.5) * 0x1p-53;
    }

    // Independent stream derived from this key.
    CounterRng substream(std::uint64_t index) const {
        return CounterRng(mix(key_ ^ ((2 * index + 1) * kGolden)));
    }

    std::uint64_t key() const { return key_; }

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
    std::uint64_t key_;
};

}  // namespace allpay
