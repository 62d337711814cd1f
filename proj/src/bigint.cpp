#include "dfactor/bigint.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace dfactor {

namespace {
constexpr uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(long long v) {
    negative_ = v < 0;
    unsigned long long m = negative_ ? -static_cast<unsigned long long>(v) : static_cast<unsigned long long>(v);
    while (m) {
        limbs_.push_back(static_cast<uint32_t>(m & 0xffffffffu));
        m >>= 32;
    }
}

BigInt::BigInt(unsigned long long v) {
    while (v) {
        limbs_.push_back(static_cast<uint32_t>(v & 0xffffffffu));
        v >>= 32;
    }
}

BigInt BigInt::from_u128(unsigned __int128 v) {
    BigInt r;
    while (v) {
        r.limbs_.push_back(static_cast<uint32_t>(v & 0xffffffffu));
        v >>= 32;
    }
    return r;
}

BigInt BigInt::from_i128(__int128 v) {
    if (v >= 0) return from_u128(static_cast<unsigned __int128>(v));
    BigInt r = from_u128(-static_cast<unsigned __int128>(v));
    r.negative_ = true;
    return r;
}

BigInt BigInt::from_string(const std::string& s) {
    BigInt r;
    size_t pos = 0;
    bool neg = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
        neg = s[pos] == '-';
        ++pos;
    }
    if (pos == s.size()) throw std::invalid_argument("BigInt::from_string: empty");
    for (; pos < s.size(); ++pos) {
        if (s[pos] < '0' || s[pos] > '9') throw std::invalid_argument("BigInt::from_string: bad digit");
        r = r * BigInt(10) + BigInt(static_cast<long long>(s[pos] - '0'));
    }
    r.negative_ = neg && !r.is_zero();
    return r;
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) negative_ = false;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

int BigInt::cmp(const BigInt& o) const {
    if (negative_ != o.negative_) return negative_ ? -1 : 1;
    int m = cmp_mag(limbs_, o.limbs_);
    return negative_ ? -m : m;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    const std::vector<uint32_t>& x = a.size() >= b.size() ? a : b;
    const std::vector<uint32_t>& y = a.size() >= b.size() ? b : a;
    std::vector<uint32_t> r(x.size() + 1, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        uint64_t s = carry + x[i] + (i < y.size() ? y[i] : 0u);
        r[i] = static_cast<uint32_t>(s & 0xffffffffu);
        carry = s >> 32;
    }
    r[x.size()] = static_cast<uint32_t>(carry);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    assert(cmp_mag(a, b) >= 0);
    std::vector<uint32_t> r(a.size(), 0);
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t s = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0u);
        if (s < 0) {
            s += static_cast<int64_t>(kBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r[i] = static_cast<uint32_t>(s);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < b.size(); ++j) {
            uint64_t cur = r[i + j] + carry + static_cast<uint64_t>(a[i]) * b[j];
            r[i + j] = static_cast<uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        size_t k = i + b.size();
        while (carry) {
            uint64_t cur = r[k] + carry;
            r[k] = static_cast<uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
            ++k;
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

// Knuth algorithm D on 32-bit limbs.
void BigInt::divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                        std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
    assert(!b.empty());
    if (cmp_mag(a, b) < 0) {
        q.clear();
        r = a;
        return;
    }
    if (b.size() == 1) {
        uint64_t d = b[0];
        q.assign(a.size(), 0);
        uint64_t rem = 0;
        for (size_t i = a.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | a[i];
            q[i] = static_cast<uint32_t>(cur / d);
            rem = cur % d;
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        r.clear();
        if (rem) r.push_back(static_cast<uint32_t>(rem));
        return;
    }

    // normalize so the divisor's top limb has its high bit set
    int shift = 0;
    uint32_t top = b.back();
    while (!(top & 0x80000000u)) {
        top <<= 1;
        ++shift;
    }
    size_t n = b.size(), m = a.size() - n;
    std::vector<uint32_t> u(a.size() + 1, 0), v(n, 0);
    for (size_t i = a.size(); i-- > 0;) {
        u[i] = a[i] << shift;
        if (shift && i > 0) u[i] |= static_cast<uint32_t>(static_cast<uint64_t>(a[i - 1]) >> (32 - shift));
    }
    if (shift) u[a.size()] = static_cast<uint32_t>(static_cast<uint64_t>(a.back()) >> (32 - shift));
    for (size_t i = n; i-- > 0;) {
        v[i] = b[i] << shift;
        if (shift && i > 0) v[i] |= static_cast<uint32_t>(static_cast<uint64_t>(b[i - 1]) >> (32 - shift));
    }

    q.assign(m + 1, 0);
    for (size_t j = m + 1; j-- > 0;) {
        uint64_t num = (static_cast<uint64_t>(u[j + n]) << 32) | u[j + n - 1];
        uint64_t qhat = num / v[n - 1];
        uint64_t rhat = num % v[n - 1];
        while (qhat >= kBase ||
               qhat * v[n - 2] > ((rhat << 32) | u[j + n - 2])) {
            --qhat;
            rhat += v[n - 1];
            if (rhat >= kBase) break;
        }
        // multiply-subtract
        int64_t borrow = 0;
        uint64_t carry = 0;
        for (size_t i = 0; i < n; ++i) {
            uint64_t p = qhat * v[i] + carry;
            carry = p >> 32;
            int64_t t = static_cast<int64_t>(u[i + j]) - borrow - static_cast<int64_t>(p & 0xffffffffu);
            if (t < 0) {
                t += static_cast<int64_t>(kBase);
                borrow = 1;
            } else {
                borrow = 0;
            }
            u[i + j] = static_cast<uint32_t>(t);
        }
        int64_t t = static_cast<int64_t>(u[j + n]) - borrow - static_cast<int64_t>(carry);
        if (t < 0) {
            // qhat was one too large; add divisor back
            t += static_cast<int64_t>(kBase);
            --qhat;
            uint64_t c = 0;
            for (size_t i = 0; i < n; ++i) {
                uint64_t s = static_cast<uint64_t>(u[i + j]) + v[i] + c;
                u[i + j] = static_cast<uint32_t>(s & 0xffffffffu);
                c = s >> 32;
            }
            t += static_cast<int64_t>(c);
            t &= 0xffffffffll;
        }
        u[j + n] = static_cast<uint32_t>(t);
        q[j] = static_cast<uint32_t>(qhat);
    }
    while (!q.empty() && q.back() == 0) q.pop_back();

    r.assign(n, 0);
    for (size_t i = 0; i < n; ++i) {
        r[i] = u[i] >> shift;
        if (shift && i + 1 < u.size()) r[i] |= static_cast<uint32_t>(static_cast<uint64_t>(u[i + 1]) << (32 - shift));
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    if (!r.is_zero()) r.negative_ = !r.negative_;
    return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
    BigInt r;
    if (negative_ == o.negative_) {
        r.limbs_ = add_mag(limbs_, o.limbs_);
        r.negative_ = negative_;
    } else if (cmp_mag(limbs_, o.limbs_) >= 0) {
        r.limbs_ = sub_mag(limbs_, o.limbs_);
        r.negative_ = negative_;
    } else {
        r.limbs_ = sub_mag(o.limbs_, limbs_);
        r.negative_ = o.negative_;
    }
    r.trim();
    return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
    BigInt r;
    r.limbs_ = mul_mag(limbs_, o.limbs_);
    r.negative_ = negative_ != o.negative_;
    r.trim();
    return r;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
    BigInt qq, rr;
    divmod_mag(a.limbs_, b.limbs_, qq.limbs_, rr.limbs_);
    qq.negative_ = a.negative_ != b.negative_;
    rr.negative_ = a.negative_;
    qq.trim();
    rr.trim();
    q = std::move(qq);
    r = std::move(rr);
}

BigInt BigInt::operator/(const BigInt& o) const {
    BigInt q, r;
    divmod(*this, o, q, r);
    return q;
}

BigInt BigInt::operator%(const BigInt& o) const {
    BigInt q, r;
    divmod(*this, o, q, r);
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    r.negative_ = false;
    return r;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.negative_ = false;
    b.negative_ = false;
    while (!b.is_zero()) {
        BigInt q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool BigInt::fits_u64() const { return !negative_ && limbs_.size() <= 2; }

uint64_t BigInt::to_u64() const {
    assert(fits_u64());
    uint64_t v = 0;
    for (size_t i = limbs_.size(); i-- > 0;) v = (v << 32) | limbs_[i];
    return v;
}

double BigInt::to_double() const {
    double v = 0;
    for (size_t i = limbs_.size(); i-- > 0;) v = v * 4294967296.0 + limbs_[i];
    return negative_ ? -v : v;
}

std::string BigInt::to_string() const {
    if (is_zero()) return "0";
    std::vector<uint32_t> rem = limbs_;
    std::string digits;
    // peel 9 decimal digits at a time
    while (!rem.empty()) {
        uint64_t carry = 0;
        for (size_t i = rem.size(); i-- > 0;) {
            uint64_t cur = (carry << 32) | rem[i];
            rem[i] = static_cast<uint32_t>(cur / 1000000000ull);
            carry = cur % 1000000000ull;
        }
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
        for (int k = 0; k < 9; ++k) {
            digits.push_back(static_cast<char>('0' + carry % 10));
            carry /= 10;
        }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    if (negative_) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

}  // namespace dfactor
