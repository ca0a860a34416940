// Acceptance checks: one pass/fail line per criterion.
//
// Usage: acceptance [criterion...]   (no arguments: run 1-9; "5x" runs the
// optional large max-coverage instance). Exit code 0 iff every criterion that
// ran passed.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "covering/bounds.hpp"
#include "covering/catalog.hpp"
#include "covering/notation.hpp"
#include "covering/solver.hpp"
#include "covering/verifier.hpp"

using namespace covering;
using Clock = std::chrono::steady_clock;

namespace {

bool g_all_ok = true;

void report(const std::string& id, bool ok, const std::string& what, double seconds) {
    std::printf("criterion %s: %s — %s (%.2fs)\n", id.c_str(), ok ? "PASS" : "FAIL",
                what.c_str(), seconds);
    std::fflush(stdout);
    g_all_ok = g_all_ok && ok;
}

struct Timer {
    Clock::time_point start = Clock::now();
    double seconds() const { return std::chrono::duration<double>(Clock::now() - start).count(); }
};

// --------------------------------------------------------------------------
// 1. Catalog construction verification with the exact published claims.
void criterion1() {
    Timer t;
    struct Expected {
        const char* id;
        std::uint64_t m, L;
    };
    const Expected expected[] = {
        {"davenport", 2, 12},      {"thm1.5-iv", 3, 180},   {"thm1.6-v", 4, 480},
        {"thm1.7-iii", 5, 5400},   {"thm1.7-v", 5, 3600},   {"thm1.7-vi", 5, 2160},
        {"thm1.8-iii", 6, 10800},  {"thm1.8-vi", 6, 12960}, {"thm1.8-viii", 6, 8640},
        {"thm1.11", 8, 172800},
    };
    bool ok = true;
    for (const Expected& e : expected) {
        SystemDocument doc = load_entry(e.id);
        ok = ok && doc.claimed_m == e.m && doc.claimed_L.value() == e.L;
        ok = ok && verify_claims(doc).pass();
    }
    // Exclusion claims stated alongside the constructions.
    ok = ok && load_entry("thm1.5-iv").exclude.moduli == std::vector<std::uint64_t>{5, 180};
    ok = ok && load_entry("thm1.6-v").exclude.moduli == std::vector<std::uint64_t>{240};
    ok = ok && load_entry("thm1.7-iii").exclude.multiples_of == 675;
    ok = ok &&
         load_entry("thm1.7-v").exclude.moduli == std::vector<std::uint64_t>{25, 100, 300, 900};
    ok = ok && load_entry("thm1.7-vi").exclude.moduli == std::vector<std::uint64_t>{180};
    ok = ok &&
         load_entry("thm1.8-iii").exclude.moduli == std::vector<std::uint64_t>{180, 900};
    ok = ok && load_entry("thm1.8-vi").exclude.multiples_of == 405;
    ok = ok &&
         load_entry("thm1.8-viii").exclude.moduli == std::vector<std::uint64_t>{270, 540, 720};
    double dt = t.seconds();
    report("1", ok && dt < 5.0, "all ten transcribed constructions verify", dt);
}

// --------------------------------------------------------------------------
// 2. Bound certificates.
void criterion2() {
    Timer t;
    bool ok = certificate_lemma51(4).final_bound == Rational(217, 240);
    for (unsigned a = 4; a <= 12; ++a) {
        BoundBreakdown b = certificate_lemma51(a);
        Rational formula = Rational(59, 60) - make_rational(19, Int(15) * (Int(1) << a));
        ok = ok && b.final_bound == formula && b.conclusive();
    }
    BoundBreakdown c = certificate_thm112();
    ok = ok && c.single_sum == Rational(383, 360) && c.bound == Rational(481, 480) &&
         c.refinement == Rational(1, 144) && c.final_bound == Rational(1433, 1440) &&
         c.conclusive();
    double dt = t.seconds();
    report("2", ok && dt < 1.0, "minimum-modulus 5 and 10 certificates exact", dt);
}

// --------------------------------------------------------------------------
// 3. Closed forms vs summed bound on full divisor families.
void criterion3() {
    Timer t;
    bool ok = true;
    for (unsigned a = 0; a <= 4; ++a)
        for (unsigned b = 0; b <= 4; ++b)
            for (unsigned c = 0; c <= 4; ++c) {
                if (a + b + c == 0) continue;
                ClosedFormTerms cf = closed_form_terms(a, b, c);
                BoundBreakdown sums = ie3_bound(
                    ModulusFamily::divisors(FactoredInteger::from_exponents(a, b, c), 2));
                ok = ok && cf.single == sums.single_sum && cf.pairs == sums.coprime_pair_sum &&
                     cf.triples == sums.coprime_triple_sum;
            }
    double dt = t.seconds();
    report("3", ok && dt < 30.0, "closed forms match sums for all exponents <= 4", dt);
}

// --------------------------------------------------------------------------
// 4. Infeasibility reproductions + LP shape for the two large instances.
void criterion4() {
    Timer t;
    SolveProblem p900 = SolveProblem::divisors(factor_smooth(900), 4, SolveMode::Feasibility);
    p900.time_budget = std::chrono::minutes(10);
    bool ok = solve_feasibility(p900).status == SolveStatus::InfeasibleExhausted;

    SolveProblem p1800 = SolveProblem::divisors(factor_smooth(1800), 5, SolveMode::Feasibility);
    p1800.time_budget = std::chrono::minutes(30);
    ok = ok && solve_feasibility(p1800).status == SolveStatus::InfeasibleExhausted;

    // The two larger instances are exported, not solved: check model shapes.
    auto lp_counts = [](const SolveProblem& p, std::size_t& vars, std::size_t& rows) {
        std::string lp = export_lp(p);
        vars = 0;
        std::size_t pos = lp.find("Binary");
        for (std::size_t i = lp.find("x_", pos); i != std::string::npos; i = lp.find("x_", i + 1))
            ++vars;
        rows = 0;
        for (std::size_t i = lp.find("mult_"); i != std::string::npos && i < lp.find("Bounds");
             i = lp.find("mult_", i + 1))
            ++rows;
        for (std::size_t i = lp.find("cover_"); i != std::string::npos && i < lp.find("Bounds");
             i = lp.find("cover_", i + 1))
            ++rows;
    };
    // divisors >= 6 of 2^3 3^3 5^3: sum of moduli = sigma(27000) - (1+2+3+4+5)
    //   sigma(27000) = 15*40*156 = 93600; x-vars 93585; rows = 59 + 27000.
    SolveProblem big1 = SolveProblem::divisors(factor_smooth(27000), 6, SolveMode::Feasibility);
    std::size_t vars = 0, rows = 0;
    lp_counts(big1, vars, rows);
    ok = ok && vars == 93585 && rows == 59 + 27000;
    // divisors >= 6 of 2^4 3^4 5: sigma(6480) = 31*121*6 = 22506; minus 15 -> 22491.
    SolveProblem big2 = SolveProblem::divisors(factor_smooth(6480), 6, SolveMode::Feasibility);
    lp_counts(big2, vars, rows);
    ok = ok && vars == 22491 && rows == 45 + 6480;
    report("4", ok, "min-4/900 and min-5/1800 infeasible; large LP shapes exact", t.seconds());
}

// --------------------------------------------------------------------------
// 5. Max-coverage table values.
void run_maxcover(std::uint64_t L, std::uint64_t expected_uncovered, const char* crit_id,
                  int budget_minutes = 10) {
    Timer t;
    SolveProblem p = SolveProblem::divisors(factor_smooth(L), 6, SolveMode::MaxCoverage);
    p.time_budget = std::chrono::minutes(budget_minutes);
    SolveVerdict v = solve_max_coverage(p);
    bool ok = v.status == SolveStatus::Optimal && v.covered &&
              L - *v.covered == expected_uncovered;
    report(crit_id, ok,
           "L=" + std::to_string(L) + " leaves exactly " +
               std::to_string(expected_uncovered) + " residues uncovered",
           t.seconds());
}

void criterion5() {
    Timer t;
    struct Row { std::uint64_t L, uncovered; };
    bool ok = true;
    // The published table lists 52 for L=360, but that value is refuted by an
    // explicit witness: the 19 distinct divisors >= 6 of 360 admit residue
    // choices covering 309 classes (sieve-verified), so the true optimum
    // leaves 51 uncovered.  The solver's witness for each row is re-sieved
    // independently below rather than trusting the reported count.
    for (Row row : {Row{45, 36}, Row{90, 40}, Row{180, 51}, Row{360, 51}}) {
        SolveProblem p =
            SolveProblem::divisors(factor_smooth(row.L), 6, SolveMode::MaxCoverage);
        p.time_budget = std::chrono::minutes(10);
        SolveVerdict v = solve_max_coverage(p);
        bool row_ok = v.status == SolveStatus::Optimal && v.covered && v.witness &&
                      row.L - *v.covered == row.uncovered;
        if (row_ok) {
            CoverageResult sieve = uncovered_set(*v.witness, p.L);
            row_ok = sieve.covered_count == *v.covered;
        }
        if (!row_ok)
            std::printf("  (L=%llu mismatch)\n",
                        static_cast<unsigned long long>(row.L));
        ok = ok && row_ok;
    }
    report("5", ok,
           "uncovered counts 36/40/51/51 for L=45/90/180/360 "
           "(360: published 52 refuted by a verified 309-covered witness)",
           t.seconds());
}

// --------------------------------------------------------------------------
// 6. Oracle equivalence on random instances.
void criterion6() {
    Timer t;
    std::mt19937_64 rng(60626);
    int done = 0;
    bool ok = true;
    while (done < 200) {
        std::vector<std::uint64_t> moduli;
        double product = 1;
        while (true) {
            FactoredInteger n =
                FactoredInteger::from_exponents(rng() % 5, rng() % 3, rng() % 2);
            if (n.value() < 2) continue;
            bool dup = false;
            for (std::uint64_t m : moduli) dup = dup || m == n.value();
            if (dup || product * static_cast<double>(n.value()) > 1e6) break;
            product *= static_cast<double>(n.value());
            moduli.push_back(n.value());
        }
        if (moduli.empty()) continue;
        SolveProblem p;
        p.L = FactoredInteger::one();
        for (std::uint64_t m : moduli) {
            p.moduli.emplace_back(m, 1);
            p.L = lcm(p.L, factor_smooth(m));
        }
        p.mode = SolveMode::Feasibility;
        ok = ok && solve_feasibility(p).status == brute_force_oracle(p).status;
        p.mode = SolveMode::MaxCoverage;
        SolveVerdict fast = solve_max_coverage(p);
        SolveVerdict slow = brute_force_oracle(p);
        ok = ok && fast.status == SolveStatus::Optimal && fast.covered == slow.covered;
        ++done;
        if (!ok) break;
    }
    report("6", ok, "solver agrees with the exhaustive oracle on 200 random instances",
           t.seconds());
}

// --------------------------------------------------------------------------
// 7. Density never exceeds the inclusion-exclusion bound.
void criterion7() {
    Timer t;
    std::mt19937_64 rng(70707);
    bool ok = true;
    int done = 0;
    while (done < 1000) {
        FactoredInteger L =
            FactoredInteger::from_exponents(rng() % 6, rng() % 5, rng() % 4);
        if (L.value() < 2 || L.value() > 10000) continue;
        // Random distinct-moduli system over random divisors of L.
        std::vector<std::uint64_t> divisors;
        for (unsigned i = 0; i <= L.a(); ++i)
            for (unsigned j = 0; j <= L.b(); ++j)
                for (unsigned k = 0; k <= L.c(); ++k) {
                    std::uint64_t d = FactoredInteger::from_exponents(i, j, k).value();
                    if (d > 1) divisors.push_back(d);
                }
        std::vector<Congruence> cs;
        std::vector<std::uint64_t> chosen;
        for (std::uint64_t d : divisors)
            if (rng() % 2) {
                chosen.push_back(d);
                cs.emplace_back(static_cast<std::int64_t>(rng() % d), factor_smooth(d));
            }
        if (chosen.empty()) continue;
        CoverageResult cov = uncovered_set(CongruenceSystem(cs), L);
        BoundBreakdown bound = ie3_bound(ModulusFamily(chosen));
        ok = ok && cov.density <= bound.final_bound;
        ++done;
        if (!ok) break;
    }
    report("7", ok, "sieve density <= inclusion-exclusion bound on 1000 random systems",
           t.seconds());
}

// --------------------------------------------------------------------------
// 8. Notation round-trip.
void criterion8() {
    Timer t;
    bool ok = true;
    for (const CatalogEntry& e : list_entries()) {
        if (!e.transcribed) continue;
        SystemDocument doc = load_entry(e.id);
        NotationContext ctx = doc.context();
        for (const Congruence& c : doc.congruences)
            ok = ok && parse_congruence(format_congruence(c, ctx), ctx) == c;
    }
    const NotationContext ctx{8, 3, 2};
    std::mt19937_64 rng(80808);
    int done = 0;
    while (done < 10000) {
        unsigned a = rng() % (ctx.a + 1), b = rng() % (ctx.b + 1), c = rng() % (ctx.c + 1);
        if (a + b + c == 0) continue;
        FactoredInteger n = FactoredInteger::from_exponents(a, b, c);
        Congruence orig(static_cast<std::int64_t>(rng() % n.value()), n);
        ok = ok && parse_congruence(format_congruence(orig, ctx), ctx) == orig;
        ++done;
    }
    Congruence worked = parse_congruence("(11|20|1)", NotationContext{2, 2, 1});
    ok = ok && worked.residue() == 11 && worked.modulus().value() == 180 &&
         format_congruence(worked, NotationContext{2, 2, 1}) == "(11|20|1)";
    report("8", ok, "parse/format identity on catalog and 10^4 random tokens", t.seconds());
}

// --------------------------------------------------------------------------
// 9. Tower properties and the least-modulus-6 truncations.
void criterion9() {
    Timer t;
    std::mt19937_64 rng(90909);
    bool ok = true;
    for (int i = 0; i < 50; ++i) {
        TowerSpec spec;
        spec.a = 1 + rng() % 3;
        spec.d = FactoredInteger::from_exponents(0, rng() % 3, rng() % 2).value();
        spec.depth = 1 + rng() % 8;
        std::uint64_t base = (1ull << (spec.a - 1)) * spec.d;
        spec.r = static_cast<std::int64_t>(rng() % (3 * base));
        CongruenceSystem sys(tower(spec));
        ok = ok && overlap_pairs(sys).empty();
        Rational expected =
            (Rational(1) - make_rational(1, Int(1) << spec.depth)) / Rational(base);
        ok = ok && uncovered_set(sys).density == expected;
    }
    Rational prev(0);
    for (unsigned depth = 1; depth <= 8; ++depth) {
        CoverageResult cov = uncovered_set(build_m6_infinite_truncation(depth).system());
        ok = ok && cov.density > prev;
        prev = cov.density;
    }
    ok = ok && prev > Rational(1) - Rational(1, 100);
    report("9", ok, "tower disjointness/density and truncation growth exact", t.seconds());
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> which;
    for (int i = 1; i < argc; ++i) which.push_back(argv[i]);
    if (which.empty()) which = {"1", "2", "3", "4", "5", "6", "7", "8", "9"};
    for (const std::string& w : which) {
        if (w == "1") criterion1();
        else if (w == "2") criterion2();
        else if (w == "3") criterion3();
        else if (w == "4") criterion4();
        else if (w == "5") criterion5();
        else if (w == "5x") run_maxcover(720, 52, "5x", 45);
        else if (w == "6") criterion6();
        else if (w == "7") criterion7();
        else if (w == "8") criterion8();
        else if (w == "9") criterion9();
        else {
            std::fprintf(stderr, "unknown criterion '%s'\n", w.c_str());
            return 2;
        }
    }
    return g_all_ok ? 0 : 1;
}
