// Transcribed constructions, towers, and the least-modulus-6 truncations.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "covering/catalog.hpp"
#include "covering/errors.hpp"
#include "covering/verifier.hpp"

using namespace covering;

TEST_CASE("the catalog lists every entry with its claims") {
    std::vector<CatalogEntry> entries = list_entries();
    std::set<std::string> ids;
    for (const CatalogEntry& e : entries) ids.insert(e.id);
    for (const char* id :
         {"davenport", "thm1.5-iv", "thm1.6-v", "thm1.7-iii", "thm1.7-v", "thm1.7-vi",
          "thm1.8-iii", "thm1.8-vi", "thm1.8-viii", "thm1.11", "thm1.10-truncated"})
        CHECK(ids.count(id) == 1);
    for (const CatalogEntry& e : entries) {
        if (e.id == "davenport") {
            CHECK(e.claimed_m == 2);
            CHECK(e.claimed_L.value() == 12);
        }
        if (e.id == "thm1.11") {
            CHECK(e.claimed_m == 8);
            CHECK(e.claimed_L.value() == 172800);
        }
        if (e.id == "thm1.10-truncated") CHECK_FALSE(e.claims_covering);
    }
}

TEST_CASE("loading entries") {
    SystemDocument doc = load_entry("davenport");
    CHECK(doc.claimed_m == 2);
    CHECK(doc.congruences.size() == 5);
    CHECK_THROWS_AS(load_entry("nonsense"), UnknownIdError);
    CHECK_THROWS_AS(load_entry("thm1.5-v"), NotTranscribedError);
}

TEST_CASE("tower congruences follow the two defining congruences") {
    // Worked example: the first rung through d = 15 above r = 38.
    std::vector<Congruence> t = tower({3, 15, 38, 1});
    REQUIRE(t.size() == 1);
    CHECK(t[0].modulus().value() == 120);
    CHECK(t[0].residue() == 98);

    // General shape for a = 3, d = 3, r = 1.
    std::vector<Congruence> u = tower({3, 3, 1, 4});
    REQUIRE(u.size() == 4);
    for (unsigned j = 1; j <= 4; ++j) {
        const Congruence& c = u[j - 1];
        std::uint64_t mod2 = 1ull << (3 + j - 1);
        CHECK(c.modulus().value() == mod2 * 3);
        CHECK(c.residue() % 3 == 1);
        CHECK(c.residue() % mod2 == (1 + (mod2 >> 1)) % mod2);
    }
    CHECK(overlap_pairs(CongruenceSystem(u)).empty());

    CHECK_THROWS_AS(tower({3, 6, 0, 2}), EvenDError);
    CHECK_THROWS_AS(tower({3, 7, 0, 2}), NotSmoothError);
}

TEST_CASE("towers are disjoint and fill their class at the expected rate") {
    std::mt19937_64 rng(2717);
    for (int t = 0; t < 25; ++t) {
        TowerSpec spec;
        spec.a = 1 + rng() % 3;
        spec.d = FactoredInteger::from_exponents(0, rng() % 3, rng() % 2).value();
        spec.depth = 1 + rng() % 6;
        std::uint64_t base = (1ull << (spec.a - 1)) * spec.d;
        spec.r = static_cast<std::int64_t>(rng() % (2 * base));
        CongruenceSystem sys(tower(spec));
        CHECK(overlap_pairs(sys).empty());
        CoverageResult cov = uncovered_set(sys);
        Rational expected =
            (Rational(1) - make_rational(1, Int(1) << spec.depth)) / Rational(base);
        CHECK(cov.density == expected);
        // Everything the tower covers lies in the class r mod 2^(a-1) d.
        for (const Congruence& c : sys.congruences())
            CHECK(c.residue() % base == static_cast<std::uint64_t>(spec.r) % base);
    }
}

TEST_CASE("least-modulus-6 truncations grow toward full density") {
    Rational prev(0);
    for (unsigned depth = 1; depth <= 5; ++depth) {
        SystemDocument doc = build_m6_infinite_truncation(depth);
        CongruenceSystem sys = doc.system();
        CHECK(sys.min_modulus() == 6);
        CHECK(sys.is_distinct());
        CHECK(doc.congruences.size() == 11 + 6 * depth);
        for (const Congruence& c : doc.congruences) {
            FactoredInteger n = c.modulus();
            CHECK(n.b() <= 2);
            CHECK(n.c() <= 1);
        }
        CoverageResult cov = uncovered_set(sys);
        CHECK(cov.density > prev);
        CHECK(cov.density < 1);
        prev = cov.density;
    }
}
