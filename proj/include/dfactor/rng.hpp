#pragma once

#include <cstdint>

#include "dfactor/rational.hpp"

namespace dfactor {

// xoshiro256++ seeded through splitmix64. Same (seed, stream) gives the same
// sequence on every platform; std:: engines are avoided for that reason.
class RngStream {
public:
    explicit RngStream(uint64_t seed, uint64_t stream = 0);

    // independent child stream; deterministic function of (seed, stream)
    RngStream split(uint64_t stream) const { return RngStream(seed_, stream); }

    uint64_t seed() const { return seed_; }
    uint64_t stream() const { return stream_; }

    uint64_t next_u64();

    // unbiased uniform draw from [0, bound) via rejection
    uint64_t uniform_below(uint64_t bound);

    double next_unit();  // [0,1), 53-bit

    // exact Bernoulli(p) for rational p in [0,1]; compares the binary
    // expansion of a uniform real against p, drawing 64 bits at a time
    bool bernoulli(const Rational& p);

private:
    uint64_t s_[4];
    uint64_t seed_;
    uint64_t stream_;
};

}  // namespace dfactor
