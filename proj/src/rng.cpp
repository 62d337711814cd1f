#include "dfactor/rng.hpp"

namespace dfactor {

namespace {

uint64_t splitmix64(uint64_t& x) {
    uint64_t z = (x += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

RngStream::RngStream(uint64_t seed, uint64_t stream) : seed_(seed), stream_(stream) {
    uint64_t x = seed ^ (0xa0761d6478bd642full * (stream + 1));
    for (auto& s : s_) s = splitmix64(x);
    // xoshiro must not start in the all-zero state
    if (!(s_[0] | s_[1] | s_[2] | s_[3])) s_[0] = 1;
}

uint64_t RngStream::next_u64() {
    uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

uint64_t RngStream::uniform_below(uint64_t bound) {
    if (bound <= 1) return 0;
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        uint64_t r = next_u64();
        if (r >= threshold) return r % bound;
    }
}

double RngStream::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

bool RngStream::bernoulli(const Rational& p) {
    if (p.sign() <= 0) return false;
    if (p >= Rational(1)) return true;
    // long division of num/den in base 2^64; U < p decided digit by digit
    BigInt rem = p.num();
    const BigInt& den = p.den();
    const BigInt shift = BigInt(1ull << 32) * BigInt(1ull << 32);
    for (;;) {
        rem = rem * shift;
        BigInt q, r;
        BigInt::divmod(rem, den, q, r);
        uint64_t digit = q.to_u64();
        uint64_t w = next_u64();
        if (w < digit) return true;
        if (w > digit) return false;
        if (r.is_zero()) return false;  // U == p from here on has measure zero below p
        rem = std::move(r);
    }
}

}  // namespace dfactor
