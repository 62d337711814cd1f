#pragma once

#include <string>

#include "dfactor/bigint.hpp"

namespace dfactor {

// Exact rational, always normalized: den > 0, gcd(num, den) == 1.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(int n) : num_(static_cast<long long>(n)), den_(1) {}
    Rational(BigInt n, BigInt d);

    static Rational from_i128(__int128 v) { return Rational(BigInt::from_i128(v)); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_ == BigInt(1); }
    int sign() const { return num_.sign(); }

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;

    Rational& operator+=(const Rational& o) { *this = *this + o; return *this; }
    Rational& operator-=(const Rational& o) { *this = *this - o; return *this; }
    Rational& operator*=(const Rational& o) { *this = *this * o; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return cmp(o) < 0; }
    bool operator<=(const Rational& o) const { return cmp(o) <= 0; }
    bool operator>(const Rational& o) const { return cmp(o) > 0; }
    bool operator>=(const Rational& o) const { return cmp(o) >= 0; }
    int cmp(const Rational& o) const;

    double to_double() const { return num_.to_double() / den_.to_double(); }
    std::string to_string() const;

private:
    BigInt num_;
    BigInt den_;
    void normalize();
};

}  // namespace dfactor
