#include "covering/verifier.hpp"

#include <algorithm>
#include <bit>

namespace covering {

namespace {

class BitSieve {
public:
    explicit BitSieve(std::uint64_t size) : size_(size), words_((size + 63) / 64, 0) {}

    void mark_class(std::uint64_t residue, std::uint64_t modulus) {
        for (std::uint64_t x = residue; x < size_; x += modulus)
            words_[x >> 6] |= std::uint64_t(1) << (x & 63);
    }

    std::uint64_t count_set() const {
        std::uint64_t total = 0;
        for (std::uint64_t w : words_) total += static_cast<std::uint64_t>(std::popcount(w));
        return total;
    }

    bool test(std::uint64_t x) const { return (words_[x >> 6] >> (x & 63)) & 1; }
    std::uint64_t size() const { return size_; }

private:
    std::uint64_t size_;
    std::vector<std::uint64_t> words_;
};

CoverageResult sieve_coverage(std::span<const Congruence> congruences, FactoredInteger domain,
                              std::size_t max_listed, std::uint64_t sieve_limit) {
    if (domain.value() > sieve_limit)
        throw DomainTooLargeError("sieve domain " + std::to_string(domain.value()) +
                                  " exceeds the limit " + std::to_string(sieve_limit));
    for (const Congruence& c : congruences)
        if (!c.modulus().divides(domain))
            throw Error("modulus " + std::to_string(c.modulus().value()) +
                        " does not divide the sieve domain " + std::to_string(domain.value()));

    BitSieve sieve(domain.value());
    for (const Congruence& c : congruences) sieve.mark_class(c.residue(), c.modulus().value());

    CoverageResult result;
    result.domain = domain;
    result.covered_count = sieve.count_set();
    result.uncovered_count = domain.value() - result.covered_count;
    result.is_covering = result.uncovered_count == 0;
    result.density = make_rational(result.covered_count, domain.value());
    if (!result.is_covering) {
        for (std::uint64_t x = 0; x < domain.value() && result.uncovered.size() < max_listed; ++x)
            if (!sieve.test(x)) result.uncovered.push_back(x);
    }
    return result;
}

}  // namespace

CoverageResult uncovered_set(const CongruenceSystem& system, std::optional<FactoredInteger> domain,
                             std::size_t max_listed, std::uint64_t sieve_limit) {
    FactoredInteger d = domain.value_or(system.lcm());
    return sieve_coverage(system.congruences(), d, max_listed, sieve_limit);
}

ClaimReport verify_claims(const SystemDocument& doc) {
    ClaimReport report;
    CongruenceSystem system = doc.system();

    report.distinctness_ok = system.is_distinct() && !system.empty();
    if (!report.distinctness_ok) {
        if (system.empty()) {
            report.details.push_back("system is empty");
        } else {
            for (const auto& [n, count] : system.multiplicities())
                if (count != 1)
                    report.details.push_back("modulus " + std::to_string(n) + " used " +
                                             std::to_string(count) + " times");
        }
    }

    report.min_modulus_ok = !doc.claimed_m || system.min_modulus() == *doc.claimed_m;
    if (!report.min_modulus_ok)
        report.details.push_back("minimum modulus is " + std::to_string(system.min_modulus()) +
                                 ", claimed " + std::to_string(*doc.claimed_m));

    report.lcm_ok = system.lcm() == doc.claimed_L;
    if (!report.lcm_ok)
        report.details.push_back("lcm of moduli is " + std::to_string(system.lcm().value()) +
                                 ", claimed " + std::to_string(doc.claimed_L.value()));

    report.exclusions_ok = true;
    for (const auto& [n, count] : system.multiplicities()) {
        if (doc.exclude.excludes(n)) {
            report.exclusions_ok = false;
            report.details.push_back("excluded modulus " + std::to_string(n) + " is used");
        }
    }

    if (system.empty()) {
        report.covering_ok = false;
        report.details.push_back("empty system covers nothing");
    } else {
        CoverageResult coverage = uncovered_set(system, lcm(doc.claimed_L, system.lcm()));
        report.covering_ok = coverage.is_covering;
        if (!coverage.is_covering) {
            std::string sample;
            for (std::size_t i = 0; i < coverage.uncovered.size() && i < 10; ++i)
                sample += (i ? ", " : "") + std::to_string(coverage.uncovered[i]);
            report.details.push_back(std::to_string(coverage.uncovered_count) +
                                     " residues uncovered (first: " + sample + ")");
        }
    }
    return report;
}

std::vector<std::pair<std::size_t, std::size_t>> overlap_pairs(const CongruenceSystem& system) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    const auto& cs = system.congruences();
    for (std::size_t i = 0; i + 1 < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j)
            if (cs[i].intersects(cs[j])) pairs.emplace_back(i, j);
    return pairs;
}

Rational truncation_density(std::span<const Congruence> congruences, std::size_t k,
                            std::uint64_t sieve_limit) {
    if (k == 0 || k > congruences.size())
        throw Error("truncation index k out of range: " + std::to_string(k));
    FactoredInteger g;
    for (std::size_t i = 0; i < k; ++i) g = lcm(g, congruences[i].modulus());
    CoverageResult coverage = sieve_coverage(congruences.subspan(0, k), g, 0, sieve_limit);
    return coverage.density;
}

}  // namespace covering
