#pragma once

#include <cstdint>
#include <string_view>

#include "g2cm/bigint.hpp"

namespace g2cm {

// Deterministic seedable stream (splitmix64). Forking derives an
// independent child stream from the parent's origin seed and a label,
// so fork results do not depend on how much the parent has been used.
// That keeps parallel scans byte-reproducible.
class SeedStream {
  public:
    explicit SeedStream(u64 seed) : origin_(seed), state_(seed) {}

    u64 next() {
        u64 z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) by rejection; bound >= 1.
    u64 below(u64 bound) {
        if (bound <= 1) return 0;
        u64 limit = ~u64(0) - (~u64(0) % bound);
        u64 x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    bool coin() { return next() & 1; }

    SeedStream fork(std::string_view label) const {
        u64 h = 0xcbf29ce484222325ULL ^ origin_;
        for (char ch : label) {
            h ^= static_cast<unsigned char>(ch);
            h *= 0x100000001b3ULL;
        }
        h += 0x9e3779b97f4a7c15ULL;
        h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
        h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
        return SeedStream(h ^ (h >> 31));
    }

    u64 origin() const { return origin_; }

  private:
    u64 origin_;
    u64 state_;
};

}  // namespace g2cm
