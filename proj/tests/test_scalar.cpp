#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "xms/scalar.hpp"

#include <random>

using xms::Scalar;
using xms::Rational;

TEST_CASE("cyclotomic polynomials") {
    auto phi1 = xms::cyclotomic_polynomial(1);
    CHECK(phi1 == std::vector<mpz_class>{-1, 1});
    auto phi2 = xms::cyclotomic_polynomial(2);
    CHECK(phi2 == std::vector<mpz_class>{1, 1});
    auto phi4 = xms::cyclotomic_polynomial(4);
    CHECK(phi4 == std::vector<mpz_class>{1, 0, 1});
    auto phi6 = xms::cyclotomic_polynomial(6);
    CHECK(phi6 == std::vector<mpz_class>{1, -1, 1});
    auto phi12 = xms::cyclotomic_polynomial(12);
    CHECK(phi12 == std::vector<mpz_class>{1, 0, -1, 0, 1});
}

TEST_CASE("rational arithmetic through Scalar") {
    Scalar a(1, 3), b(2, 5);
    CHECK((a * b).rational_part() == Rational(2, 15));
    CHECK((a + b).rational_part() == Rational(11, 15));
    CHECK((a - b).rational_part() == Rational(-1, 15));
    CHECK(a.inverse().rational_part() == Rational(3));
    CHECK((a / b).rational_part() == Rational(5, 6));
    CHECK(Scalar(0, 1).is_zero());
    CHECK_THROWS(Scalar(0, 1).inverse());
}

TEST_CASE("roots of unity satisfy zeta^n = 1 exactly") {
    for (unsigned n : {1u, 2u, 3u, 4u, 5u, 6u, 8u, 12u}) {
        Scalar z = Scalar::root_of_unity(n);
        CHECK(z.pow(n).is_one());
        for (unsigned k = 1; k < n; ++k)
            CHECK_FALSE(z.pow(k).is_one());
        CHECK((z * z.inverse()).is_one());
    }
}

TEST_CASE("minus one identities across orders") {
    CHECK(Scalar::root_of_unity(2) == Scalar(-1, 1));
    CHECK(Scalar::root_of_unity(4).pow(2) == Scalar(-1, 1));
    CHECK(Scalar::root_of_unity(6).pow(3) == Scalar(-1, 1));
}

TEST_CASE("lifting is an embedding") {
    Scalar z3 = Scalar::root_of_unity(3);
    Scalar in12 = z3.lifted(12);
    CHECK(in12.pow(3).is_one());
    CHECK(in12 == Scalar::root_of_unity(12).pow(4));
    // mixed-order arithmetic goes through lcm
    Scalar z4 = Scalar::root_of_unity(4);
    Scalar prod = z3 * z4;
    CHECK(prod.pow(12).is_one());
    CHECK(prod == Scalar::root_of_unity(12).pow(7));
}

TEST_CASE("field axioms on random samples") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> pw(0, 3);
    for (int trial = 0; trial < 200; ++trial) {
        auto rnd = [&](unsigned order) {
            Scalar s = Scalar(num(rng), 1) +
                       Scalar::root_of_unity(order).pow(pw(rng)) * Scalar(num(rng), 1);
            return s;
        };
        Scalar a = rnd(4), b = rnd(4), c = rnd(4);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
    }
}

TEST_CASE("string round trip pieces") {
    Scalar z = Scalar::root_of_unity(4);
    Scalar s = z - Scalar(1, 2);
    CHECK(s.to_string() == "-1/2 + z4^1");
    auto [re, im] = s.approx();
    CHECK(re == doctest::Approx(-0.5));
    CHECK(im == doctest::Approx(1.0));
}
