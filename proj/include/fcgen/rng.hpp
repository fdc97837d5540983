#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace fcgen {

// All randomness in the pipeline flows through these primitives so that
// output files are byte-identical across runs, platforms, and standard
// libraries. std::shuffle / std::uniform_int_distribution are not
// reproducible across implementations and are deliberately not used.

constexpr uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// splitmix64 stream.
class rng64 {
  public:
    explicit rng64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Unbiased draw in [0, n). n must be > 0.
    uint64_t below(uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
        auto low = static_cast<uint64_t>(m);
        if (low < n) {
            const uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                m   = static_cast<unsigned __int128>(next()) * n;
                low = static_cast<uint64_t>(m);
            }
        }
        return static_cast<uint64_t>(m >> 64);
    }

  private:
    uint64_t state_;
};

// Stable sub-seed for a named stage, so that e.g. the per-function
// generator streams are independent of each other and of the shuffles.
inline uint64_t derive_seed(uint64_t seed, std::string_view label) {
    uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a
    for (const char c : label) {
        h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
    }
    return mix64(seed ^ mix64(h));
}

// In-place Fisher-Yates with the local rng.
template <typename T>
void seeded_shuffle(std::vector<T> & items, rng64 & rng) {
    for (size_t i = items.size(); i > 1; --i) {
        const uint64_t j = rng.below(i);
        using std::swap;
        swap(items[i - 1], items[j]);
    }
}

template <typename T>
void seeded_shuffle(std::vector<T> & items, uint64_t seed) {
    rng64 rng(seed);
    seeded_shuffle(items, rng);
}

// Seeded pseudorandom permutation of [0, domain) built from a 4-round
// Feistel network with cycle walking. Evaluating the first `count`
// indices yields `count` distinct values in O(count) memory, which is how
// the generator samples slot combinations without replacement.
class feistel_permutation {
  public:
    feistel_permutation(uint64_t domain, uint64_t seed) : domain_(domain) {
        half_bits_ = 1;
        while (half_bits_ < 31 &&
               (uint64_t(1) << (2 * half_bits_)) < domain_) {
            ++half_bits_;
        }
        mask_ = (uint64_t(1) << half_bits_) - 1;
        for (int r = 0; r < kRounds; ++r) {
            round_keys_[r] = mix64(seed ^ (0x9e3779b97f4a7c15ULL * (r + 1)));
        }
    }

    uint64_t domain() const { return domain_; }

    // index must be < domain().
    uint64_t operator()(uint64_t index) const {
        uint64_t x = index;
        do {
            x = encrypt(x);
        } while (x >= domain_);
        return x;
    }

  private:
    static constexpr int kRounds = 4;

    uint64_t encrypt(uint64_t x) const {
        uint64_t left  = x >> half_bits_;
        uint64_t right = x & mask_;
        for (int r = 0; r < kRounds; ++r) {
            const uint64_t f = mix64(right ^ round_keys_[r]) & mask_;
            const uint64_t next_right = left ^ f;
            left  = right;
            right = next_right;
        }
        return (left << half_bits_) | right;
    }

    uint64_t domain_;
    int      half_bits_;
    uint64_t mask_;
    uint64_t round_keys_[kRounds];
};

} // namespace fcgen
