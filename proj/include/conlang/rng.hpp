#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace conlang {

// splitmix64; stable across platforms, unlike the standard distributions.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound), bound > 0. Rejection sampling keeps it unbiased.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform real in [0, 1).
    double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(int num, int den) {
        return below(static_cast<std::uint64_t>(den)) < static_cast<std::uint64_t>(num);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            using std::swap;
            swap(v[i - 1], v[j]);
        }
    }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(below(v.size()))];
    }

  private:
    std::uint64_t state_;
};

// FNV-1a over (seed, id); used wherever a per-id child seed must be stable
// and independent of generation order.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view id) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    auto mix = [&h](unsigned char b) {
        h ^= b;
        h *= 0x100000001B3ULL;
    };
    for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(master_seed >> (8 * i)));
    for (char c : id) mix(static_cast<unsigned char>(c));
    return h;
}

}  // namespace conlang
