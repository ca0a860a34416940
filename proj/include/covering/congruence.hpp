#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "covering/factored.hpp"

namespace covering {

// A residue class r (mod n) with n a 5-smooth integer >= 2. The residue is
// canonicalized into [0, n) at construction, so negative inputs are fine.
class Congruence {
public:
    Congruence(std::int64_t residue, FactoredInteger modulus);

    std::uint64_t residue() const { return residue_; }
    const FactoredInteger& modulus() const { return modulus_; }

    bool contains(std::uint64_t x) const { return x % modulus_.value() == residue_; }

    // Two classes intersect iff their residues agree modulo gcd of the moduli.
    bool intersects(const Congruence& other) const;

    bool operator==(const Congruence&) const = default;

private:
    std::uint64_t residue_;
    FactoredInteger modulus_;
};

struct CrtPart {
    std::int64_t residue;
    std::uint64_t modulus;  // a prime power of 2, 3, or 5
};

// Combines prime-power parts into the unique congruence modulo their product.
// Throws NonCoprimePartsError if two parts share a prime base.
Congruence crt_combine(const std::vector<CrtPart>& parts);

// An ordered list of congruences with the derived quantities of interest:
// L (lcm of moduli), m (least modulus), M (largest modulus), multiplicities.
class CongruenceSystem {
public:
    CongruenceSystem() = default;
    explicit CongruenceSystem(std::vector<Congruence> congruences);

    const std::vector<Congruence>& congruences() const { return congruences_; }
    std::size_t size() const { return congruences_.size(); }
    bool empty() const { return congruences_.empty(); }

    const FactoredInteger& lcm() const { return lcm_; }
    std::uint64_t min_modulus() const { return min_modulus_; }  // 0 for an empty system
    std::uint64_t max_modulus() const { return max_modulus_; }
    const std::map<std::uint64_t, int>& multiplicities() const { return multiplicities_; }

    // True iff every modulus appears exactly once (moduli are > 1 by construction).
    bool is_distinct() const;

private:
    std::vector<Congruence> congruences_;
    FactoredInteger lcm_;
    std::uint64_t min_modulus_ = 0;
    std::uint64_t max_modulus_ = 0;
    std::map<std::uint64_t, int> multiplicities_;
};

}  // namespace covering
