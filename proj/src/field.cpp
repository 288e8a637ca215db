#include "dgq/field.hpp"

#include <algorithm>

namespace dgq {

// ---------------------------------------------------------------- BigInt

BigInt::BigInt(long long v) {
    if (v == 0) { sign_ = 0; return; }
    sign_ = v > 0 ? 1 : -1;
    unsigned long long m = v > 0 ? (unsigned long long)v : 0ull - (unsigned long long)v;
    while (m) { mag_.push_back((uint32_t)(m & 0xffffffffull)); m >>= 32; }
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r;
    r.reserve(std::max(a.size(), b.size()) + 1);
    uint64_t carry = 0;
    for (size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        uint64_t s = carry;
        if (i < a.size()) s += a[i];
        if (i < b.size()) s += b[i];
        r.push_back((uint32_t)(s & 0xffffffffull));
        carry = s >> 32;
    }
    if (carry) r.push_back((uint32_t)carry);
    return r;
}

// requires |a| >= |b|
std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r = a;
    int64_t borrow = 0;
    for (size_t i = 0; i < r.size(); ++i) {
        int64_t v = (int64_t)r[i] - borrow - (i < b.size() ? (int64_t)b[i] : 0);
        if (v < 0) { v += (int64_t)1 << 32; borrow = 1; } else borrow = 0;
        r[i] = (uint32_t)v;
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
            uint64_t cur = (uint64_t)a[i] * b[j] + r[i + j] + carry;
            r[i + j] = (uint32_t)(cur & 0xffffffffull);
            carry = cur >> 32;
        }
        size_t k = i + b.size();
        while (carry) {
            uint64_t cur = r[k] + carry;
            r[k] = (uint32_t)(cur & 0xffffffffull);
            carry = cur >> 32;
            ++k;
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
    if (sign_ == 0) return o;
    if (o.sign_ == 0) return *this;
    BigInt r;
    if (sign_ == o.sign_) {
        r.sign_ = sign_;
        r.mag_ = add_mag(mag_, o.mag_);
    } else {
        int c = cmp_mag(mag_, o.mag_);
        if (c == 0) return BigInt();
        if (c > 0) { r.sign_ = sign_; r.mag_ = sub_mag(mag_, o.mag_); }
        else { r.sign_ = o.sign_; r.mag_ = sub_mag(o.mag_, mag_); }
    }
    r.trim();
    return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
    BigInt r;
    if (sign_ == 0 || o.sign_ == 0) return r;
    r.sign_ = sign_ * o.sign_;
    r.mag_ = mul_mag(mag_, o.mag_);
    r.trim();
    return r;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.is_zero()) throw error("BigInt: division by zero");
    if (cmp_mag(a.mag_, b.mag_) < 0) { q = BigInt(); r = a; return; }
    // Base-2^32 long division, shift-and-subtract per output limb via binary search.
    BigInt rem;
    std::vector<uint32_t> qmag(a.mag_.size(), 0);
    BigInt babs = b.abs();
    for (size_t i = a.mag_.size(); i-- > 0;) {
        // rem = rem * 2^32 + limb
        if (!rem.mag_.empty() || a.mag_[i] != 0) {
            rem.mag_.insert(rem.mag_.begin(), a.mag_[i]);
            rem.sign_ = 1;
            rem.trim();
        }
        if (cmp_mag(rem.mag_, babs.mag_) < 0) continue;
        uint64_t lo = 0, hi = 0xffffffffull;
        while (lo < hi) {  // largest d with babs*d <= rem
            uint64_t mid = (lo + hi + 1) >> 1;
            BigInt t = babs * BigInt((long long)mid);
            if (cmp_mag(t.mag_, rem.mag_) <= 0) lo = mid; else hi = mid - 1;
        }
        qmag[i] = (uint32_t)lo;
        rem = rem - babs * BigInt((long long)lo);
    }
    q.mag_ = qmag;
    q.sign_ = 1;
    q.trim();
    q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
    r = rem;
    r.sign_ = r.mag_.empty() ? 0 : a.sign_;
}

BigInt BigInt::operator/(const BigInt& o) const { BigInt q, r; divmod(*this, o, q, r); return q; }
BigInt BigInt::operator%(const BigInt& o) const { BigInt q, r; divmod(*this, o, q, r); return r; }

bool BigInt::operator<(const BigInt& o) const {
    if (sign_ != o.sign_) return sign_ < o.sign_;
    int c = cmp_mag(mag_, o.mag_);
    return sign_ >= 0 ? c < 0 : c > 0;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a = a.abs();
    b = b.abs();
    while (!b.is_zero()) {
        BigInt q, r;
        divmod(a, b, q, r);
        a = b;
        b = r.abs();
    }
    return a;
}

BigInt BigInt::from_decimal(const std::string& s) {
    if (s.empty()) throw error("BigInt: empty literal");
    size_t i = 0;
    int sgn = 1;
    if (s[0] == '-') { sgn = -1; i = 1; }
    else if (s[0] == '+') i = 1;
    if (i == s.size()) throw error("BigInt: bad literal '" + s + "'");
    BigInt r;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw error("BigInt: bad literal '" + s + "'");
        r = r * BigInt(10) + BigInt(s[i] - '0');
    }
    if (sgn < 0) r = -r;
    return r;
}

std::string BigInt::to_string() const {
    if (is_zero()) return "0";
    BigInt t = abs();
    std::string digits;
    BigInt ten(10);
    while (!t.is_zero()) {
        BigInt q, r;
        divmod(t, ten, q, r);
        digits.push_back(char('0' + (r.mag_.empty() ? 0 : r.mag_[0])));
        t = q;
    }
    if (sign_ < 0) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

uint64_t BigInt::mod_u64(uint64_t p) const {
    if (p == 0) throw error("mod 0");
    uint64_t acc = 0;
    for (size_t i = mag_.size(); i-- > 0;) {
        // acc = (acc * 2^32 + limb) mod p; p < 2^32 in practice, use 128-bit safe path
        __uint128_t v = ((__uint128_t)acc << 32) + mag_[i];
        acc = (uint64_t)(v % p);
    }
    if (sign_ < 0 && acc != 0) acc = p - acc;
    return acc;
}

// ---------------------------------------------------------------- Rational

namespace {
__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}
constexpr long long kSmallMax = (1ll << 62);
}  // namespace

Rational Rational::from_i128(__int128 n, __int128 d) {
    if (d == 0) throw error("Rational: zero denominator");
    if (n == 0) return Rational();
    if (d < 0) { n = -n; d = -d; }
    __int128 g = gcd128(n, d);
    n /= g;
    d /= g;
    if (n < kSmallMax && n > -kSmallMax && d < kSmallMax) {
        Rational r;
        r.n_ = (long long)n;
        r.d_ = (long long)d;
        return r;
    }
    // promote; rebuild exact BigInts from the 128-bit values
    auto to_big = [](__int128 v) {
        bool neg = v < 0;
        unsigned __int128 m = neg ? -(unsigned __int128)v : (unsigned __int128)v;
        unsigned long long lo64 = (unsigned long long)(m & 0xffffffffffffffffull);
        BigInt b = BigInt((long long)(m >> 64));
        BigInt shift = BigInt(1ll << 32) * BigInt(1ll << 32);
        b = b * shift + BigInt((long long)(lo64 >> 32)) * BigInt(1ll << 32) +
            BigInt((long long)(lo64 & 0xffffffffull));
        return neg ? -b : b;
    };
    return big_of(to_big(n), to_big(d));
}

Rational Rational::big_of(const BigInt& n, const BigInt& d) {
    Rational r;
    r.big_ = true;
    r.N_ = n;
    r.D_ = d;
    r.normalize_big();
    return r;
}

Rational::Rational(BigInt n, BigInt d) : big_(true), N_(std::move(n)), D_(std::move(d)) {
    normalize_big();
}

void Rational::normalize_big() {
    if (D_.is_zero()) throw error("Rational: zero denominator");
    if (N_.is_zero()) {
        big_ = false;
        n_ = 0;
        d_ = 1;
        N_ = BigInt();
        D_ = BigInt();
        return;
    }
    if (D_.is_negative()) {
        N_ = -N_;
        D_ = -D_;
    }
    BigInt g = BigInt::gcd(N_, D_);
    N_ = N_ / g;
    D_ = D_ / g;
    // demote when small again
    BigInt bound((long long)1 << 60);
    if ((N_.abs() < bound) && (D_ < bound)) {
        long long n = 0, d = 0;
        // reconstruct via decimal round trip is wasteful; use mod arithmetic
        n = (long long)N_.abs().mod_u64(0x7fffffffffffffffull);
        if (N_.is_negative()) n = -n;
        d = (long long)D_.mod_u64(0x7fffffffffffffffull);
        big_ = false;
        n_ = n;
        d_ = d;
        N_ = BigInt();
        D_ = BigInt();
    }
}

Rational Rational::operator+(const Rational& o) const {
    if (!big_ && !o.big_)
        return from_i128((__int128)n_ * o.d_ + (__int128)o.n_ * d_, (__int128)d_ * o.d_);
    return Rational(num() * o.den() + o.num() * den(), den() * o.den());
}
Rational Rational::operator-(const Rational& o) const {
    if (!big_ && !o.big_)
        return from_i128((__int128)n_ * o.d_ - (__int128)o.n_ * d_, (__int128)d_ * o.d_);
    return Rational(num() * o.den() - o.num() * den(), den() * o.den());
}
Rational Rational::operator*(const Rational& o) const {
    if (!big_ && !o.big_) return from_i128((__int128)n_ * o.n_, (__int128)d_ * o.d_);
    return Rational(num() * o.num(), den() * o.den());
}
Rational Rational::operator/(const Rational& o) const {
    if (o.is_zero()) throw error("Rational: division by zero");
    if (!big_ && !o.big_) return from_i128((__int128)n_ * o.d_, (__int128)d_ * o.n_);
    return Rational(num() * o.den(), den() * o.num());
}
Rational Rational::operator-() const {
    if (!big_) {
        Rational r;
        r.n_ = -n_;
        r.d_ = d_;
        return r;
    }
    return big_of(-N_, D_);
}

bool Rational::operator==(const Rational& o) const {
    if (!big_ && !o.big_) return n_ == o.n_ && d_ == o.d_;
    return num() == o.num() && den() == o.den();
}

std::string Rational::to_string() const {
    if (!big_) {
        if (d_ == 1) return std::to_string(n_);
        return std::to_string(n_) + "/" + std::to_string(d_);
    }
    if (D_ == BigInt(1)) return N_.to_string();
    return N_.to_string() + "/" + D_.to_string();
}

// ---------------------------------------------------------------- Field / Scalar

Field Field::prime(uint64_t p) {
    if (p < 2) throw error("F_p needs a prime p");
    for (uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) throw error("F_p: " + std::to_string(p) + " is not prime");
    return Field{Kind::Fp, p};
}

std::string Field::name() const {
    return kind == Kind::Q ? "Q" : "F" + std::to_string(p);
}

Scalar::Scalar(Field f, long long v) : field_(f) {
    if (f.kind == Field::Kind::Q) q_ = Rational(v);
    else {
        long long m = v % (long long)f.p;
        if (m < 0) m += (long long)f.p;
        r_ = (uint64_t)m;
    }
}

Scalar::Scalar(Field f, const Rational& q) : field_(f) {
    if (f.kind == Field::Kind::Q) q_ = q;
    else {
        uint64_t n = q.num().mod_u64(f.p);
        uint64_t d = q.den().mod_u64(f.p);
        if (d == 0) throw error("Scalar: denominator divisible by p");
        // Fermat inverse
        uint64_t inv = 1, base = d, e = f.p - 2;
        while (e) {
            if (e & 1) inv = (uint64_t)((__uint128_t)inv * base % f.p);
            base = (uint64_t)((__uint128_t)base * base % f.p);
            e >>= 1;
        }
        r_ = (uint64_t)((__uint128_t)n * inv % f.p);
    }
}

Scalar Scalar::parse(Field f, const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos)
        return Scalar(f, Rational(BigInt::from_decimal(text), BigInt(1)));
    return Scalar(f, Rational(BigInt::from_decimal(text.substr(0, slash)),
                              BigInt::from_decimal(text.substr(slash + 1))));
}

void Scalar::check(const Scalar& o) const {
    if (field_ != o.field_) throw error("field mismatch: " + field_.name() + " vs " + o.field_.name());
}

bool Scalar::is_zero() const {
    return field_.kind == Field::Kind::Q ? q_.is_zero() : r_ == 0;
}

Scalar Scalar::operator+(const Scalar& o) const {
    check(o);
    Scalar r;
    r.field_ = field_;
    if (field_.kind == Field::Kind::Q) r.q_ = q_ + o.q_;
    else r.r_ = (r_ + o.r_) % field_.p;
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
    Scalar r = *this;
    if (field_.kind == Field::Kind::Q) r.q_ = -q_;
    else r.r_ = r_ == 0 ? 0 : field_.p - r_;
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    check(o);
    Scalar r;
    r.field_ = field_;
    if (field_.kind == Field::Kind::Q) r.q_ = q_ * o.q_;
    else r.r_ = (uint64_t)((__uint128_t)r_ * o.r_ % field_.p);
    return r;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw error("Scalar: inverse of zero");
    Scalar r;
    r.field_ = field_;
    if (field_.kind == Field::Kind::Q) r.q_ = Rational(1) / q_;
    else {
        uint64_t inv = 1, base = r_, e = field_.p - 2;
        while (e) {
            if (e & 1) inv = (uint64_t)((__uint128_t)inv * base % field_.p);
            base = (uint64_t)((__uint128_t)base * base % field_.p);
            e >>= 1;
        }
        r.r_ = inv;
    }
    return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
    check(o);
    return field_.kind == Field::Kind::Q ? q_ == o.q_ : r_ == o.r_;
}

std::string Scalar::to_string() const {
    return field_.kind == Field::Kind::Q ? q_.to_string() : std::to_string(r_);
}

// ---------------------------------------------------------------- Rng

uint64_t Rng::next() {
    state_ += 0x9e3779b97f4a7c15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

uint64_t Rng::below(uint64_t n) { return n == 0 ? 0 : next() % n; }

Scalar Rng::scalar(Field f, long long lo, long long hi) {
    long long span = hi - lo + 1;
    return Scalar(f, lo + (long long)below((uint64_t)span));
}

}  // namespace dgq
