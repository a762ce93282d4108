#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace adversim {

// splitmix64. Deterministic across platforms; good enough for sampling and
// for deriving per-round seeds.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound), bound > 0. Multiply-shift keeps it branch-free
    // and platform-independent.
    std::uint64_t below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    bool coin() { return (next() >> 63) != 0; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

private:
    std::uint64_t state_;
};

// Derives an independent stream for (seed, salt); used to give each round of
// a run its own sampling seed so traces replay without shared RNG state.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    Rng r(seed ^ (0xd1b54a32d192ed03ULL * (salt + 1)));
    return r.next();
}

inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
}

// Order-sensitive 64-bit accumulator for state digests. Not cryptographic;
// collisions are only a concern for equality-of-digest comparisons over a
// few thousand states.
class Digest {
public:
    void mix(std::uint64_t v) { h_ = mix64(h_ ^ mix64(v + 0x2545f4914f6cdd1dULL)); }

    void mix_bytes(const std::string& s) {
        std::uint64_t fnv = 0xcbf29ce484222325ULL;
        for (unsigned char c : s) {
            fnv ^= c;
            fnv *= 0x100000001b3ULL;
        }
        mix(fnv);
        mix(s.size());
    }

    std::uint64_t value() const { return h_; }

private:
    std::uint64_t h_ = 0x9e3779b97f4a7c15ULL;
};

std::string to_hex(std::uint64_t v);
std::uint64_t parse_hex(const std::string& s);

// a * b clamped to the maximum representable value.
inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > UINT64_MAX / b) return UINT64_MAX;
    return a * b;
}

inline std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) r = sat_mul(r, base);
    return r;
}

// Thrown when an enumeration or exhaustive sweep would exceed its configured
// cap; carries both numbers so callers can report or fall back.
class BudgetError : public std::runtime_error {
public:
    BudgetError(std::uint64_t count, std::uint64_t cap)
        : std::runtime_error("budget exceeded: " + std::to_string(count) +
                             " candidates > cap " + std::to_string(cap)),
          count(count),
          cap(cap) {}

    std::uint64_t count;
    std::uint64_t cap;
};

}  // namespace adversim
