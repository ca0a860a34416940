#include "covering/bounds.hpp"

#include <algorithm>
#include <numeric>

namespace covering {

ModulusFamily::ModulusFamily(std::vector<std::uint64_t> moduli) : moduli_(std::move(moduli)) {
    if (moduli_.empty()) throw Error("modulus family must be nonempty");
    std::sort(moduli_.begin(), moduli_.end());
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        if (moduli_[i] < 2) throw Error("family moduli must be > 1");
        if (i > 0 && moduli_[i] == moduli_[i - 1])
            throw Error("family moduli must be distinct: " + std::to_string(moduli_[i]));
        factor_smooth(moduli_[i]);  // rejects moduli with prime factors other than 2, 3, 5
    }
}

ModulusFamily ModulusFamily::divisors(const FactoredInteger& L, std::uint64_t min_modulus,
                                      const Exclusions& exclude) {
    std::vector<std::uint64_t> moduli;
    for (unsigned i = 0; i <= L.a(); ++i)
        for (unsigned j = 0; j <= L.b(); ++j)
            for (unsigned k = 0; k <= L.c(); ++k) {
                std::uint64_t d = FactoredInteger::from_exponents(i, j, k).value();
                if (d >= std::max<std::uint64_t>(min_modulus, 2) && !exclude.excludes(d))
                    moduli.push_back(d);
            }
    return ModulusFamily(std::move(moduli));
}

BoundBreakdown ie3_bound(const ModulusFamily& family) {
    const auto& m = family.moduli();
    const std::size_t n = m.size();

    BoundBreakdown out;
    for (std::size_t i = 0; i < n; ++i) out.single_sum += make_rational(1, m[i]);

    // Direct pair/triple loops; families stay small (a few hundred moduli).
    std::vector<std::vector<bool>> coprime(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            coprime[i][j] = std::gcd(m[i], m[j]) == 1;

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (coprime[i][j]) out.coprime_pair_sum += make_rational(1, Int(m[i]) * m[j]);

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!coprime[i][j]) continue;
            for (std::size_t k = j + 1; k < n; ++k)
                if (coprime[i][k] && coprime[j][k])
                    out.coprime_triple_sum += make_rational(1, Int(m[i]) * m[j] * m[k]);
        }

    out.bound = out.single_sum - out.coprime_pair_sum + out.coprime_triple_sum;
    out.refinement = 0;
    out.final_bound = out.bound;
    return out;
}

namespace {

// sum_{n=low..e} p^-n
Rational geometric(unsigned p, unsigned low, unsigned e) {
    Rational sum = 0;
    Int pn = 1;
    for (unsigned n = 0; n <= e; ++n) {
        if (n >= low) sum += make_rational(1, pn);
        pn *= p;
    }
    return sum;
}

}  // namespace

ClosedFormTerms closed_form_terms(unsigned a, unsigned b, unsigned c) {
    if (a == 0 && b == 0 && c == 0) throw Error("closed_form_terms requires (a,b,c) != (0,0,0)");
    Rational s2 = geometric(2, 1, a), s3 = geometric(3, 1, b), s5 = geometric(5, 1, c);
    ClosedFormTerms t;
    t.single = geometric(2, 0, a) * geometric(3, 0, b) * geometric(5, 0, c) - 1;
    t.pairs = s2 * s3 + s2 * s5 + s3 * s5 + 3 * s2 * s3 * s5;
    t.triples = s2 * s3 * s5;
    return t;
}

BoundBreakdown certificate_lemma51(unsigned a) {
    if (a < 1) throw Error("certificate_lemma51 requires a >= 1");
    FactoredInteger L = FactoredInteger::from_exponents(a, 1, 1);
    return ie3_bound(ModulusFamily::divisors(L, 5));
}

BoundBreakdown certificate_thm112() {
    // Infinite family: all 5-smooth integers >= 10, through the closed-form
    // geometric series. Full series minus the lost moduli 1..6, 8, 9.
    BoundBreakdown out;
    Rational full = Rational(2) * Rational(3, 2) * Rational(5, 4);
    Rational lost = 0;
    for (int d : {1, 2, 3, 4, 5, 6, 8, 9}) lost += make_rational(1, d);
    out.single_sum = full - lost;

    // Infinite per-prime tails with the removed prime powers subtracted out.
    Rational t2 = Rational(1) - Rational(1, 2) - Rational(1, 4) - Rational(1, 8);
    Rational t3 = Rational(1, 2) - Rational(1, 3) - Rational(1, 9);
    Rational t5 = Rational(1, 4) - Rational(1, 5);
    // Only 6 among the removed moduli is composite; its cross terms with the
    // powers of 5 come back out of the mixed products.
    out.coprime_pair_sum = t2 * t3 + t2 * t5 + t3 * t5 + Rational(1, 2) * t5 -
                           Rational(1, 6) * t5 + t3 * Rational(1, 4) + t2 * Rational(1, 8);
    out.coprime_triple_sum = t2 * t3 * t5;

    out.bound = out.single_sum - out.coprime_pair_sum + out.coprime_triple_sum;
    out.refinement = parity_refinement({16, 18, 10});
    out.final_bound = out.bound - out.refinement;
    return out;
}

Rational parity_refinement(const std::array<std::uint64_t, 3>& triple) {
    Rational best = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        if (triple[i] % 2 != 0)
            throw RequiresThreeEvenModuliError("parity refinement needs three even moduli, got " +
                                               std::to_string(triple[i]));
        for (std::size_t j = i + 1; j < 3; ++j) {
            Rational term = make_rational(1, std::lcm(triple[i], triple[j]));
            if (best == 0 || term < best) best = term;
        }
    }
    return best;
}

}  // namespace covering
