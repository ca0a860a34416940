// Sieve coverage, claim verification, overlaps, truncation density.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "covering/catalog.hpp"
#include "covering/errors.hpp"
#include "covering/verifier.hpp"

using namespace covering;

namespace {

std::vector<Congruence> davenport() {
    return {Congruence(1, factor_smooth(2)), Congruence(2, factor_smooth(4)),
            Congruence(0, factor_smooth(3)), Congruence(4, factor_smooth(6)),
            Congruence(8, factor_smooth(12))};
}

}  // namespace

TEST_CASE("the classical m=2 system covers the integers") {
    CoverageResult cov = uncovered_set(CongruenceSystem(davenport()));
    CHECK(cov.is_covering);
    CHECK(cov.covered_count == 12);
    CHECK(cov.uncovered_count == 0);
    CHECK(cov.density == Rational(1));
}

TEST_CASE("dropping a congruence reveals the exact uncovered classes") {
    std::vector<Congruence> cs = davenport();
    cs.pop_back();  // remove 8 mod 12
    CoverageResult cov = uncovered_set(CongruenceSystem(cs));
    CHECK_FALSE(cov.is_covering);
    CHECK(cov.uncovered == std::vector<std::uint64_t>{8});
    CHECK(cov.density == Rational(11, 12));
}

TEST_CASE("coverage is invariant under domain scaling") {
    CongruenceSystem sys(davenport());
    CoverageResult base = uncovered_set(sys);
    CoverageResult wide = uncovered_set(sys, factor_smooth(12 * 30));
    CHECK(wide.is_covering == base.is_covering);
    CHECK(wide.density == base.density);
    CHECK(wide.covered_count == 30 * base.covered_count);
    // The domain must be a multiple of every modulus.
    CHECK_THROWS_AS(uncovered_set(sys, factor_smooth(6)), Error);
}

TEST_CASE("sieve agrees with a naive per-integer scan on random systems") {
    std::mt19937_64 rng(314159);
    for (int t = 0; t < 50; ++t) {
        std::vector<Congruence> cs;
        std::size_t k = 1 + rng() % 6;
        for (std::size_t i = 0; i < k; ++i) {
            FactoredInteger n =
                FactoredInteger::from_exponents(rng() % 4, rng() % 3, rng() % 2);
            if (n.value() < 2) n = factor_smooth(2);
            cs.emplace_back(static_cast<std::int64_t>(rng() % n.value()), n);
        }
        CongruenceSystem sys(cs);
        CoverageResult cov = uncovered_set(sys);
        std::uint64_t L = sys.lcm().value();
        std::uint64_t naive = 0;
        for (std::uint64_t x = 0; x < L; ++x) {
            bool hit = false;
            for (const Congruence& c : cs) hit = hit || c.contains(x);
            naive += hit;
        }
        CHECK(cov.covered_count == naive);
        CHECK(cov.density == Rational(naive, L));
    }
}

TEST_CASE("verify_claims accepts correct headers and rejects wrong ones") {
    SystemDocument doc;
    doc.claimed_L = factor_smooth(12);
    doc.claimed_m = 2;
    doc.congruences = davenport();
    CHECK(verify_claims(doc).pass());

    SystemDocument wrong_m = doc;
    wrong_m.claimed_m = 3;
    ClaimReport r1 = verify_claims(wrong_m);
    CHECK_FALSE(r1.min_modulus_ok);
    CHECK_FALSE(r1.pass());

    SystemDocument wrong_L = doc;
    wrong_L.claimed_L = factor_smooth(24);
    CHECK_FALSE(verify_claims(wrong_L).lcm_ok);

    SystemDocument excluded = doc;
    excluded.exclude.moduli = {6};
    CHECK_FALSE(verify_claims(excluded).exclusions_ok);

    SystemDocument dup = doc;
    dup.congruences.push_back(Congruence(5, factor_smooth(6)));
    CHECK_FALSE(verify_claims(dup).distinctness_ok);

    SystemDocument partial = doc;
    partial.congruences.pop_back();
    ClaimReport r2 = verify_claims(partial);
    CHECK_FALSE(r2.covering_ok);
    CHECK_FALSE(r2.pass());
}

TEST_CASE("overlap_pairs finds exactly the intersecting index pairs") {
    // A tower is pairwise disjoint.
    CongruenceSystem disjoint(tower({3, 3, 1, 5}));
    CHECK(overlap_pairs(disjoint).empty());

    CongruenceSystem sys(davenport());
    auto pairs = overlap_pairs(sys);
    const auto& cs = sys.congruences();
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            bool listed = false;
            for (auto [a, b] : pairs) listed = listed || (a == i && b == j);
            CHECK(listed == cs[i].intersects(cs[j]));
        }
}

TEST_CASE("truncation density is f(k)/g(k) over growing prefixes") {
    std::vector<Congruence> cs = davenport();
    CHECK(truncation_density(cs, 1) == Rational(1, 2));
    CHECK(truncation_density(cs, 2) == Rational(3, 4));   // odd or 2 mod 4
    CHECK(truncation_density(cs, 3) == Rational(5, 6));    // 4 and 8 mod 12 open
    CHECK(truncation_density(cs, 4) == Rational(11, 12));  // only 8 mod 12 open
    CHECK(truncation_density(cs, 5) == Rational(1));
}
