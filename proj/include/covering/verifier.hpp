#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "covering/notation.hpp"
#include "covering/rational.hpp"

namespace covering {

// Exact coverage of [0, domain) measured by sieving. `uncovered` lists at
// most `max_listed` witnesses verbatim; `uncovered_count` is always exact.
struct CoverageResult {
    FactoredInteger domain;
    std::uint64_t covered_count = 0;
    std::uint64_t uncovered_count = 0;
    std::vector<std::uint64_t> uncovered;
    bool is_covering = false;
    Rational density;  // covered_count / domain, in lowest terms
};

inline constexpr std::uint64_t kDefaultSieveLimit = std::uint64_t(1) << 31;

// Marks r, r+n, r+2n, ... in a bit vector of length `domain` (default: the
// system's L) and reports what is left. Every modulus must divide the domain.
CoverageResult uncovered_set(const CongruenceSystem& system,
                             std::optional<FactoredInteger> domain = std::nullopt,
                             std::size_t max_listed = 100,
                             std::uint64_t sieve_limit = kDefaultSieveLimit);

// Mechanized check of a document's claims: distinct moduli > 1, claimed
// minimum modulus, claimed lcm, exclusion list respected, and coverage of Z.
struct ClaimReport {
    bool distinctness_ok = false;
    bool min_modulus_ok = false;
    bool lcm_ok = false;
    bool exclusions_ok = false;
    bool covering_ok = false;
    std::vector<std::string> details;

    bool pass() const {
        return distinctness_ok && min_modulus_ok && lcm_ok && exclusions_ok && covering_ok;
    }
};

ClaimReport verify_claims(const SystemDocument& doc);

// All index pairs (i, j), i < j, whose congruences intersect.
std::vector<std::pair<std::size_t, std::size_t>> overlap_pairs(const CongruenceSystem& system);

// f(k)/g(k): g(k) is the lcm of the first k moduli, f(k) the number of
// integers in [0, g(k)) covered by the first k congruences.
Rational truncation_density(std::span<const Congruence> congruences, std::size_t k,
                            std::uint64_t sieve_limit = kDefaultSieveLimit);

}  // namespace covering
