#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dfactor {

// Arbitrary-precision signed integer, sign-magnitude with base 2^32 limbs.
// Only the operations the exact-probability machinery needs.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);
    BigInt(unsigned long long v);
    BigInt(long v) : BigInt(static_cast<long long>(v)) {}
    BigInt(unsigned long v) : BigInt(static_cast<unsigned long long>(v)) {}
    BigInt(int v) : BigInt(static_cast<long long>(v)) {}
    BigInt(unsigned v) : BigInt(static_cast<unsigned long long>(v)) {}

    static BigInt from_i128(__int128 v);
    static BigInt from_u128(unsigned __int128 v);
    static BigInt from_string(const std::string& s);

    bool is_zero() const { return limbs_.empty(); }
    bool is_negative() const { return negative_; }
    int sign() const { return limbs_.empty() ? 0 : (negative_ ? -1 : 1); }

    BigInt operator-() const;
    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const;
    BigInt operator*(const BigInt& o) const;
    BigInt operator/(const BigInt& o) const;  // truncates toward zero
    BigInt operator%(const BigInt& o) const;  // sign follows dividend

    BigInt& operator+=(const BigInt& o) { *this = *this + o; return *this; }
    BigInt& operator-=(const BigInt& o) { *this = *this - o; return *this; }
    BigInt& operator*=(const BigInt& o) { *this = *this * o; return *this; }

    // quotient and remainder in one pass; remainder has dividend's sign
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);

    bool operator==(const BigInt& o) const { return negative_ == o.negative_ && limbs_ == o.limbs_; }
    bool operator!=(const BigInt& o) const { return !(*this == o); }
    bool operator<(const BigInt& o) const { return cmp(o) < 0; }
    bool operator<=(const BigInt& o) const { return cmp(o) <= 0; }
    bool operator>(const BigInt& o) const { return cmp(o) > 0; }
    bool operator>=(const BigInt& o) const { return cmp(o) >= 0; }

    int cmp(const BigInt& o) const;

    BigInt abs() const;
    static BigInt gcd(BigInt a, BigInt b);

    // true iff the value fits in the target width
    bool fits_u64() const;
    uint64_t to_u64() const;
    double to_double() const;

    std::string to_string() const;

private:
    // invariant: no leading zero limbs; zero is the empty vector with negative_ == false
    std::vector<uint32_t> limbs_;
    bool negative_ = false;

    void trim();
    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    // requires |a| >= |b|
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                           std::vector<uint32_t>& q, std::vector<uint32_t>& r);
};

}  // namespace dfactor
