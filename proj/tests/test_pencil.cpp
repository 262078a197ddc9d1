#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pqs/pencil.hpp"
#include "support/build.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace pqs;
using testbuild::diag;
using testbuild::qf;

namespace {
RationalField q;
using LQ = Laurent<Rational>;
}  // namespace

TEST_CASE("plucker coordinates") {
    SECTION("disjoint monomials") {
        Pencil<Rational> p(qf(q, 2, {{1, 1, "1"}}), qf(q, 2, {{2, 2, "1"}}));
        const auto pl = p.plucker();
        REQUIRE(pl.minors.size() == 3);
        CHECK(pl.minors[0].is_zero());            // (x1^2, x1x2)
        CHECK(pl.minors[1] == LQ(q(1)));          // (x1^2, x2^2)
        CHECK(pl.minors[2].is_zero());            // (x1x2, x2^2)
    }
    SECTION("shared monomial") {
        Pencil<Rational> p(qf(q, 2, {{1, 1, "1"}}), qf(q, 2, {{1, 1, "1"}, {2, 2, "t"}}));
        const auto pl = p.plucker();
        CHECK(pl.minors[1] == LQ(q(1), 1));
        CHECK(pl.minors[0].is_zero());
        CHECK(pl.minors[2].is_zero());
    }
    SECTION("dependent pencil rejected") {
        auto f = qf(q, 2, {{1, 1, "1"}, {2, 2, "2"}});
        CHECK_THROWS_AS(Pencil<Rational>(f, f), DependentPencil);
        CHECK_THROWS_AS(Pencil<Rational>(f, f.scaled(LQ(q(3), 1))), DependentPencil);
    }
}

TEST_CASE("weight and coordinate action") {
    const auto id5 = CoordinateChange<Rational>::identity(5);
    SECTION("identity action") {
        Pencil<Rational> p(diag(q, {"1", "1", "1", "1", "1"}), diag(q, {"1", "2", "3", "4", "5"}));
        CHECK(act(p, WeightSystem{{0, 0, 0, 0, 0}}, id5) == p);
    }
    SECTION("single variable weight") {
        Pencil<Rational> p(qf(q, 2, {{1, 1, "1"}}), qf(q, 2, {{2, 2, "1"}}));
        const auto moved = act(p, WeightSystem{{1, 0}}, CoordinateChange<Rational>::identity(2));
        CHECK(moved.f().at(0, 0) == LQ(q(1), 2));  // t^2 x1^2
        CHECK(moved.g().at(1, 1) == LQ(q(1)));
    }
    SECTION("diagonal pencil conjugation by diag(t,1)") {
        Pencil<Rational> p(diag(q, {"1", "1"}), diag(q, {"1", "2"}));
        const auto moved = act(p, WeightSystem{{1, 0}}, CoordinateChange<Rational>::identity(2));
        CHECK(moved.f() == diag(q, {"t^2", "1"}));
        CHECK(moved.g() == qf(q, 2, {{1, 1, "t^2"}, {2, 2, "2"}}));
    }
    SECTION("weights add up") {
        std::mt19937_64 rng(7);
        PrimeField f7(7);
        const auto id = CoordinateChange<Fp>::identity(4);
        for (int it = 0; it < 20; ++it) {
            const auto p = testgen::random_smooth_pencil(f7, rng, 4, 1);
            const auto r1 = testgen::random_effective_weights(f7, rng, 4, 2);
            const auto r2 = testgen::random_effective_weights(f7, rng, 4, 2);
            WeightSystem sum{r1.w};
            for (std::size_t i = 0; i < sum.w.size(); ++i) sum.w[i] += r2.w[i];
            CHECK(act(act(p, r1, id), r2, id) == act(p, sum, id));
        }
    }
}

TEST_CASE("coordinate change validation") {
    CHECK_THROWS_AS(CoordinateChange<Rational>(2, {LQ(q(1), 1), LQ(), LQ(), LQ(q(1))}), Error);
    CHECK_THROWS_AS(CoordinateChange<Rational>(2, {LQ(q(1), -1), LQ(), LQ(), LQ(q(1), 1)}), Error);
    CHECK_NOTHROW(CoordinateChange<Rational>(
        2, {LQ(q(1)), LQ(q(5), 2), LQ(), LQ(q(1)) + LQ(q(1), 1)}));
}

TEST_CASE("saturation") {
    SECTION("shared line, one power shed") {
        const auto f = qf(q, 2, {{1, 1, "1"}});
        const auto g = qf(q, 2, {{1, 1, "1"}, {2, 2, "t"}});
        const auto sat = saturate(f, g);
        CHECK(sat.shed == 1);
        CHECK(sat.pencil.is_normalized());
        CHECK(oracle::same_k_pencil(sat.pencil, Pencil<Rational>(f, g)));
    }
    SECTION("common t^2 factor after elimination") {
        const auto f = diag(q, {"t^2", "1"});
        const auto g = qf(q, 2, {{1, 1, "t^2"}, {2, 2, "2"}});
        const auto sat = saturate(f, g);
        CHECK(sat.shed == 2);
        CHECK(sat.pencil.is_normalized());
        CHECK(oracle::same_k_pencil(sat.pencil, Pencil<Rational>(f, g)));
    }
    SECTION("normalized input is a fixed point") {
        Pencil<Rational> p(diag(q, {"1", "1", "1"}), diag(q, {"1", "2", "3"}));
        const auto sat = saturate(p);
        CHECK(sat.shed == 0);
        CHECK(oracle::same_k_pencil(sat.pencil, p));
        const auto again = saturate(sat.pencil);
        CHECK(again.shed == 0);
        CHECK(again.pencil == sat.pencil);
    }
}

TEST_CASE("multiplicity") {
    SECTION("two disjoint squares") {
        Pencil<Rational> p(qf(q, 2, {{1, 1, "1"}}), qf(q, 2, {{2, 2, "1"}}));
        CHECK(multiplicity(p, WeightSystem{{1, 0}}, CoordinateChange<Rational>::identity(2)) == 2);
    }
    SECTION("zero weights on a normalized pencil") {
        Pencil<Rational> p(diag(q, {"1", "1", "1", "1", "1"}), diag(q, {"1", "2", "3", "4", "5"}));
        CHECK(multiplicity(p, WeightSystem{{0, 0, 0, 0, 0}},
                           CoordinateChange<Rational>::identity(5)) == 0);
    }
    SECTION("five-variable example attains the weighted-valuation bound") {
        const auto f = qf(q, 5, {{1, 1, "1"}, {2, 3, "1"}, {5, 5, "t"}});
        const auto g = qf(q, 5, {{4, 4, "1"}, {1, 3, "1"}, {2, 2, "t^2"}});
        Pencil<Rational> p(f, g);
        REQUIRE(p.is_normalized());
        const WeightSystem rho{{1, 0, 1, 1, 0}};
        CHECK(weighted_valuation(f, rho) == 1);
        CHECK(weighted_valuation(g, rho) == 2);
        CHECK(multiplicity(p, rho, CoordinateChange<Rational>::identity(5)) == 3);
    }
}

TEST_CASE("weighted valuation") {
    SECTION("single monomial") {
        const auto f = qf(q, 3, {{1, 1, "1"}});
        CHECK(weighted_valuation(f, WeightSystem{{1, 0, 0}}) == 2);
    }
    SECTION("minimum over monomials") {
        const auto f = qf(q, 3, {{1, 2, "1"}, {3, 3, "t"}});
        CHECK(weighted_valuation(f, WeightSystem{{1, 1, 0}}) == 1);
    }
    SECTION("zero weights give the entry valuation minimum") {
        const auto f = qf(q, 3, {{1, 2, "t^3"}, {3, 3, "t"}});
        CHECK(weighted_valuation(f, WeightSystem{{0, 0, 0}}) == 1);
    }
    SECTION("zero form rejected") {
        CHECK_THROWS_AS(weighted_valuation(QuadraticForm<Rational>(3), WeightSystem{{0, 0, 0}}),
                        ZeroForm);
    }
}

TEST_CASE("multiplicity equals Smith shed and the elimination-loop shed") {
    std::mt19937_64 rng(2024);
    PrimeField f7(7);
    PrimeField f101(101);

    auto run = [&](const auto& k, int rounds) {
        for (int it = 0; it < rounds; ++it) {
            const int n = static_cast<int>(testgen::pick(rng, 2, 6));
            const auto p = testgen::random_smooth_pencil(k, rng, n, 1);
            const auto rho = testgen::random_effective_weights(k, rng, n, 3);
            const auto c = testgen::random_coordinate_change(k, rng, n);

            const auto moved = act(p, rho, c);
            const auto m = multiplicity(p, rho, c);
            const auto sat = saturate(moved);
            CHECK(m == sat.shed);
            const auto loop = oracle::loop_saturate(moved.f(), moved.g());
            CHECK(m == loop.shed);

            // lower bound by weighted valuations, for any R-basis after the
            // coordinate change
            const Pencil<std::decay_t<decltype(k(0))>> conj(p.f().conjugated(c.entries()),
                                                            p.g().conjugated(c.entries()));
            CHECK(m >= weighted_valuation(conj.f(), rho) + weighted_valuation(conj.g(), rho));
            const auto mixed = mix_basis(conj, testgen::random_basis_mix(k, rng));
            CHECK(m >= weighted_valuation(mixed.f(), rho) + weighted_valuation(mixed.g(), rho));
        }
    };
    run(f7, 260);
    run(f101, 150);
    run(q, 90);
}

TEST_CASE("basis changes move every plucker coordinate by one unit") {
    std::mt19937_64 rng(515);
    PrimeField f7(7);
    for (int it = 0; it < 60; ++it) {
        const int n = static_cast<int>(testgen::pick(rng, 2, 5));
        const auto p = testgen::random_smooth_pencil(f7, rng, n, 2);
        const auto mix = testgen::random_basis_mix(f7, rng);
        const auto mixed = mix_basis(p, mix);
        const Laurent<Fp> det = mix[0] * mix[3] - mix[1] * mix[2];
        REQUIRE(det.is_unit());
        const auto before = p.plucker().minors;
        const auto after = mixed.plucker().minors;
        for (std::size_t i = 0; i < before.size(); ++i) CHECK(after[i] == det * before[i]);
        CHECK(mixed.is_normalized() == p.is_normalized());
    }
}

TEST_CASE("saturate is idempotent on random K-bases") {
    std::mt19937_64 rng(31);
    PrimeField f5(5);
    for (int it = 0; it < 80; ++it) {
        const int n = static_cast<int>(testgen::pick(rng, 2, 5));
        auto f = testgen::random_form(f5, rng, n, 2);
        const auto g = testgen::random_form(f5, rng, n, 2);
        // random pole on one side
        f = f.scaled(Laurent<Fp>(f5(1), -testgen::pick(rng, 0, 2)));
        try {
            const auto sat = saturate(f, g);
            CHECK(sat.pencil.is_normalized());
            const auto again = saturate(sat.pencil);
            CHECK(again.shed == 0);
            CHECK(again.pencil == sat.pencil);
        } catch (const DependentPencil&) {
        }
    }
}
