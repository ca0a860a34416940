#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "covering/factored.hpp"
#include "covering/notation.hpp"
#include "covering/rational.hpp"

namespace covering {

// A set of distinct 5-smooth moduli, all > 1, sorted ascending. The density
// bound is only proved for 5-smooth lcm, so other inputs are refused.
class ModulusFamily {
public:
    explicit ModulusFamily(std::vector<std::uint64_t> moduli);

    // All divisors d of L with d >= min_modulus, minus exclusions.
    static ModulusFamily divisors(const FactoredInteger& L, std::uint64_t min_modulus,
                                  const Exclusions& exclude = {});

    const std::vector<std::uint64_t>& moduli() const { return moduli_; }
    std::size_t size() const { return moduli_.size(); }

private:
    std::vector<std::uint64_t> moduli_;
};

// The inclusion-exclusion upper bound on the density covered by any system
// with distinct moduli drawn from a family:
//   sum 1/m_i  -  sum over coprime pairs 1/(m_i m_j)
//              +  sum over pairwise-coprime triples 1/(m_i m_j m_k),
// optionally lowered further by a refinement term. Conclusive iff final < 1.
struct BoundBreakdown {
    Rational single_sum;
    Rational coprime_pair_sum;
    Rational coprime_triple_sum;
    Rational bound;       // single - pairs + triples
    Rational refinement;  // >= 0
    Rational final_bound; // bound - refinement
    bool conclusive() const { return final_bound < 1; }
};

BoundBreakdown ie3_bound(const ModulusFamily& family);

// Closed forms for the full divisor family of 2^a 3^b 5^c (all divisors > 1).
struct ClosedFormTerms {
    Rational single;
    Rational pairs;
    Rational triples;
};

ClosedFormTerms closed_form_terms(unsigned a, unsigned b, unsigned c);

// Nonexistence certificate for minimum modulus 5 with L = 2^a * 3 * 5:
// the family {d : d | 2^a*3*5, d >= 5}. Equals 59/60 - 19/(15*2^a) for a >= 4.
BoundBreakdown certificate_lemma51(unsigned a);

// Nonexistence certificate for minimum modulus 10 over all 5-smooth moduli,
// evaluated through the infinite geometric series, with the parity
// refinement applied to {16, 18, 10}. Yields 1433/1440.
BoundBreakdown certificate_thm112();

// Given three even moduli, two of them agree mod 2, so their classes
// intersect; min over the three pairs of 1/lcm is a sound extra deduction.
Rational parity_refinement(const std::array<std::uint64_t, 3>& triple);

}  // namespace covering
