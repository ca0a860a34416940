// Arithmetic core: factored integers, congruences, CRT, systems.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <random>

#include "covering/congruence.hpp"
#include "covering/errors.hpp"
#include "covering/factored.hpp"

using namespace covering;

TEST_CASE("factor_smooth recovers exponents") {
    FactoredInteger f = factor_smooth(172800);
    CHECK(f.a() == 8);
    CHECK(f.b() == 3);
    CHECK(f.c() == 2);
    CHECK(f.value() == 172800);

    CHECK(factor_smooth(1).value() == 1);
    CHECK(factor_smooth(2).a() == 1);
    CHECK(factor_smooth(45).b() == 2);
    CHECK(factor_smooth(45).c() == 1);

    CHECK_THROWS_AS(factor_smooth(7), NotSmoothError);
    CHECK_THROWS_AS(factor_smooth(14), NotSmoothError);
    CHECK_THROWS_AS(factor_smooth(0), Error);
}

TEST_CASE("factor_smooth round-trips random exponent triples") {
    std::mt19937_64 rng(20260826);
    for (int t = 0; t < 200; ++t) {
        unsigned a = rng() % 10, b = rng() % 7, c = rng() % 5;
        FactoredInteger f = FactoredInteger::from_exponents(a, b, c);
        FactoredInteger g = factor_smooth(f.value());
        CHECK(g == f);
    }
}

TEST_CASE("lcm, gcd, divides, str") {
    FactoredInteger x = factor_smooth(12), y = factor_smooth(90);
    CHECK(lcm(x, y).value() == 180);
    CHECK(gcd(x, y).value() == 6);
    CHECK(factor_smooth(6).divides(factor_smooth(180)));
    CHECK_FALSE(factor_smooth(8).divides(factor_smooth(180)));
    CHECK(factor_smooth(180).str() == "2^2 3^2 5");
    CHECK(factor_smooth(2).str() == "2");
    CHECK(FactoredInteger::one().str() == "1");
    CHECK_THROWS_AS(FactoredInteger::from_exponents(64, 0, 0), Error);  // > 64 bits
}

TEST_CASE("congruence canonicalizes negative residues") {
    Congruence c(-1, factor_smooth(4));
    CHECK(c.residue() == 3);
    CHECK(c.contains(3));
    CHECK(c.contains(7));
    CHECK_FALSE(c.contains(4));
    CHECK(Congruence(13, factor_smooth(4)).residue() == 1);
}

TEST_CASE("intersection agrees with the gcd criterion and with brute force") {
    Congruence odd(1, factor_smooth(2));
    Congruence two_mod4(2, factor_smooth(4));
    CHECK_FALSE(odd.intersects(two_mod4));
    CHECK(odd.intersects(Congruence(0, factor_smooth(3))));

    std::mt19937_64 rng(7);
    for (int t = 0; t < 500; ++t) {
        std::uint64_t m1 = FactoredInteger::from_exponents(rng() % 4, rng() % 3, rng() % 2).value();
        std::uint64_t m2 = FactoredInteger::from_exponents(rng() % 4, rng() % 3, rng() % 2).value();
        if (m1 < 2 || m2 < 2) continue;
        Congruence c1(static_cast<std::int64_t>(rng() % m1), factor_smooth(m1));
        Congruence c2(static_cast<std::int64_t>(rng() % m2), factor_smooth(m2));
        bool brute = false;
        for (std::uint64_t x = 0; x < m1 * m2 && !brute; ++x)
            brute = c1.contains(x) && c2.contains(x);
        CHECK(c1.intersects(c2) == brute);
    }
}

TEST_CASE("crt_combine merges coprime prime-power parts") {
    Congruence c = crt_combine({{1, 2}, {2, 9}, {3, 5}});
    CHECK(c.modulus().value() == 90);
    CHECK(c.residue() == 83);

    Congruence single = crt_combine({{3, 8}});
    CHECK(single.residue() == 3);
    CHECK(single.modulus().value() == 8);

    CHECK_THROWS_AS(crt_combine({{1, 2}, {1, 4}}), NonCoprimePartsError);
    CHECK_THROWS_AS(crt_combine({{0, 6}}), Error);  // 6 is not a prime power
}

TEST_CASE("crt_combine against a brute-force scan") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 300; ++t) {
        std::uint64_t p2 = 1ull << (1 + rng() % 4);
        std::uint64_t p3 = rng() % 2 ? 3 : 9;
        std::uint64_t p5 = rng() % 2 ? 5 : 25;
        std::int64_t r2 = static_cast<std::int64_t>(rng() % p2);
        std::int64_t r3 = static_cast<std::int64_t>(rng() % p3);
        std::int64_t r5 = static_cast<std::int64_t>(rng() % p5);
        Congruence c = crt_combine({{r2, p2}, {r3, p3}, {r5, p5}});
        std::uint64_t n = p2 * p3 * p5;
        CHECK(c.modulus().value() == n);
        std::uint64_t hits = 0, witness = 0;
        for (std::uint64_t x = 0; x < n; ++x)
            if (x % p2 == static_cast<std::uint64_t>(r2) &&
                x % p3 == static_cast<std::uint64_t>(r3) &&
                x % p5 == static_cast<std::uint64_t>(r5)) {
                ++hits;
                witness = x;
            }
        CHECK(hits == 1);
        CHECK(c.residue() == witness);
    }
}

TEST_CASE("congruence system derives L, m, M, multiplicities") {
    std::vector<Congruence> cs = {
        Congruence(1, factor_smooth(2)), Congruence(2, factor_smooth(4)),
        Congruence(0, factor_smooth(3)), Congruence(4, factor_smooth(6)),
        Congruence(8, factor_smooth(12))};
    CongruenceSystem sys(cs);
    CHECK(sys.lcm().value() == 12);
    CHECK(sys.min_modulus() == 2);
    CHECK(sys.max_modulus() == 12);
    CHECK(sys.is_distinct());
    CHECK(sys.multiplicities().at(6) == 1);

    cs.push_back(Congruence(5, factor_smooth(6)));
    CongruenceSystem dup(cs);
    CHECK_FALSE(dup.is_distinct());
    CHECK(dup.multiplicities().at(6) == 2);

    CongruenceSystem empty;
    CHECK(empty.empty());
    CHECK(empty.min_modulus() == 0);
    CHECK(empty.lcm().value() == 1);
}
