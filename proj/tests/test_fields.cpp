#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pqs/fields.hpp"
#include "support/generators.hpp"

using namespace pqs;

TEST_CASE("prime field basics") {
    PrimeField f7(7);
    CHECK(f7(3).inverse() == f7(5));  // 3*5 = 15 = 1 mod 7
    CHECK(f7(3) * f7(5) == f7(1));

    PrimeField f5(5);
    CHECK(-f5(2) == f5(3));
    CHECK((f5(4) + f5(3)) == f5(2));
    CHECK((f5(1) - f5(3)) == f5(3));
}

TEST_CASE("rational basics") {
    RationalField q;
    CHECK(q.fraction(1, 2) + q.fraction(1, 3) == q.fraction(5, 6));
    CHECK(q(6) * q.fraction(1, 3) == q(2));
    CHECK(q.fraction(-4, 8) == q.fraction(1, -2));
    CHECK(q.fraction(2, 4).str() == "1/2");
}

TEST_CASE("division by zero is a distinct error") {
    PrimeField f7(7);
    RationalField q;
    CHECK_THROWS_AS(f7(0).inverse(), DivisionByZero);
    CHECK_THROWS_AS(q(0).inverse(), DivisionByZero);
    CHECK_THROWS_AS(q(1) / q(0), DivisionByZero);
    CHECK_THROWS_AS(RationalField{}.fraction(1, 0), DivisionByZero);
}

TEST_CASE("field axioms on random pairs") {
    std::mt19937_64 rng(12345);
    PrimeField f7(7), f101(101);
    RationalField q;

    auto run = [&](const auto& k) {
        for (int it = 0; it < 1000; ++it) {
            const auto a = testgen::random_elem(k, rng, -50, 50);
            auto b = testgen::random_elem(k, rng, -50, 50);
            if (b.is_zero()) b = k(1);
            CHECK((a * b) * b.inverse() == a);
            CHECK(a + (-a) == k(0));
            CHECK(a * k(1) == a);
        }
    };
    run(f7);
    run(f101);
    run(q);
}

TEST_CASE("prime field validation") {
    CHECK_THROWS_AS(PrimeField(2), UnsupportedField);
    CHECK_THROWS_AS(PrimeField(9), UnsupportedField);
    CHECK_THROWS_AS(PrimeField(1), UnsupportedField);
    CHECK_NOTHROW(PrimeField(3));
    CHECK_NOTHROW(PrimeField(101));
}

TEST_CASE("integer literals adopt the field they meet") {
    PrimeField f7(7);
    const Fp attached = f7(3);
    const Fp lit(11);
    CHECK(attached + lit == f7(0));
    CHECK((lit * attached).characteristic() == 7);
    CHECK(Fp(0).is_zero());

    PrimeField f5(5);
    CHECK_THROWS_AS(f7(1) + f5(1), MixedField);
}

TEST_CASE("pow") {
    PrimeField f101(101);
    CHECK(f101(3).pow(100) == f101(1));  // Fermat
    RationalField q;
    CHECK(q(2).pow(10) == q(1024));
}
