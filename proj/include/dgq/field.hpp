#pragma once

#include <cstdint>
#include <string>
#include <vector>
#include <stdexcept>

namespace dgq {

struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Arbitrary-precision integer, sign + base-2^32 magnitude, little endian.
class BigInt {
  public:
    BigInt() = default;
    BigInt(long long v);
    static BigInt from_decimal(const std::string& s);

    bool is_zero() const { return mag_.empty(); }
    bool is_negative() const { return sign_ < 0; }
    int sign() const { return sign_; }

    BigInt operator-() const;
    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const;
    BigInt operator*(const BigInt& o) const;
    // Truncated division (quotient rounds toward zero).
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    BigInt operator/(const BigInt& o) const;
    BigInt operator%(const BigInt& o) const;

    bool operator==(const BigInt& o) const { return sign_ == o.sign_ && mag_ == o.mag_; }
    bool operator!=(const BigInt& o) const { return !(*this == o); }
    bool operator<(const BigInt& o) const;

    static BigInt gcd(BigInt a, BigInt b);
    BigInt abs() const;

    std::string to_string() const;
    // Value reduced mod p (result in [0, p)).
    uint64_t mod_u64(uint64_t p) const;

  private:
    int sign_ = 0;                 // -1, 0, +1
    std::vector<uint32_t> mag_;    // empty iff zero

    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    void trim();
};

// Normalized fraction, denominator > 0. Values stay in a machine-word fast
// path until they overflow, then promote to BigInt arithmetic.
class Rational {
  public:
    Rational() = default;
    Rational(long long n) : n_(n) {}
    Rational(BigInt n, BigInt d);

    BigInt num() const { return big_ ? N_ : BigInt(n_); }
    BigInt den() const { return big_ ? D_ : BigInt(d_); }
    bool is_zero() const { return big_ ? N_.is_zero() : n_ == 0; }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational operator-() const;
    bool operator==(const Rational& o) const;
    bool operator!=(const Rational& o) const { return !(*this == o); }

    std::string to_string() const;

  private:
    bool big_ = false;
    long long n_ = 0, d_ = 1;   // valid when !big_
    BigInt N_, D_;              // valid when big_
    void normalize_big();
    static Rational from_i128(__int128 n, __int128 d);
    static Rational big_of(const BigInt& n, const BigInt& d);
    BigInt as_num() const { return num(); }
};

// Ground field tag: Q or F_p for a prime p.
struct Field {
    enum class Kind { Q, Fp };
    Kind kind = Kind::Q;
    uint64_t p = 0;

    static Field rationals() { return Field{Kind::Q, 0}; }
    static Field prime(uint64_t p);
    bool operator==(const Field& o) const { return kind == o.kind && p == o.p; }
    bool operator!=(const Field& o) const { return !(*this == o); }
    std::string name() const;
};

// Exact field element; arithmetic requires matching fields.
class Scalar {
  public:
    Scalar() = default;              // zero over Q
    Scalar(Field f, long long v);
    Scalar(Field f, const Rational& q);

    static Scalar zero(Field f) { return Scalar(f, 0); }
    static Scalar one(Field f) { return Scalar(f, 1); }
    static Scalar parse(Field f, const std::string& text);  // "3", "-1/2", "4"

    const Field& field() const { return field_; }
    bool is_zero() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar inverse() const;
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::string to_string() const;

  private:
    Field field_ = Field::rationals();
    Rational q_;        // used when kind == Q
    uint64_t r_ = 0;    // used when kind == Fp, in [0, p)

    void check(const Scalar& o) const;
};

// Deterministic splitmix64-based generator for seeded test instances.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    uint64_t next();
    // uniform in [0, n)
    uint64_t below(uint64_t n);
    Scalar scalar(Field f, long long lo, long long hi);  // uniform integer image
  private:
    uint64_t state_;
};

}  // namespace dgq
