#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dgq/field.hpp"

using namespace dgq;

TEST_CASE("bigint arithmetic round trips through decimal strings") {
    BigInt a = BigInt::from_decimal("123456789012345678901234567890");
    BigInt b = BigInt::from_decimal("-98765432109876543210");
    CHECK((a * b).to_string() == "-12193263113702179522496570642237463801111263526900");
    CHECK((a + b) != a);
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    CHECK((q * b + r) == a);
    CHECK(BigInt::gcd(BigInt(48), BigInt(-36)) == BigInt(12));
}

TEST_CASE("rationals normalize and stay exact") {
    Rational x(BigInt(6), BigInt(-8));
    CHECK(x.to_string() == "-3/4");
    Rational y = x + Rational(BigInt(3), BigInt(4));
    CHECK(y.is_zero());
    Rational z = Rational(1) / Rational(BigInt(3), BigInt(1));
    CHECK((z * Rational(3)).to_string() == "1");
}

TEST_CASE("scalar arithmetic over Q and F_p") {
    Field Q = Field::rationals();
    Scalar a = Scalar::parse(Q, "3/7");
    Scalar b = Scalar::parse(Q, "-1/2");
    CHECK((a + b).to_string() == "-1/14");
    CHECK((a * b * b.inverse()).to_string() == "3/7");

    Field F5 = Field::prime(5);
    Scalar u(F5, 3), v(F5, 4);
    CHECK((u * v).to_string() == "2");
    CHECK((u / u).to_string() == "1");
    CHECK((u + v + Scalar(F5, 3)).to_string() == "0");
    CHECK_THROWS_AS(Field::prime(6), error);
    CHECK_THROWS_AS((void)(a + u), error);
}

TEST_CASE("fp scalars built from rationals reduce the fraction mod p") {
    Field F5 = Field::prime(5);
    Scalar s = Scalar::parse(F5, "3/7");   // 7 = 2 mod 5, 2^{-1} = 3, 3*3 = 4
    CHECK(s.to_string() == "4");
}

TEST_CASE("seeded rng is deterministic") {
    Rng r1(42), r2(42);
    for (int i = 0; i < 10; ++i) CHECK(r1.next() == r2.next());
}
