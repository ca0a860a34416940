#include "covering/congruence.hpp"

#include <numeric>

namespace covering {

namespace {

std::uint64_t canonical_residue(std::int64_t r, std::uint64_t n) {
    std::int64_t m = r % static_cast<std::int64_t>(n);
    if (m < 0) m += static_cast<std::int64_t>(n);
    return static_cast<std::uint64_t>(m);
}

// Modular inverse for coprime 64-bit operands via extended Euclid.
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t n) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(n), new_r = static_cast<std::int64_t>(a % n);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(n);
    return static_cast<std::uint64_t>(t);
}

}  // namespace

Congruence::Congruence(std::int64_t residue, FactoredInteger modulus) : modulus_(modulus) {
    if (modulus.value() < 2) throw Error("congruence modulus must be >= 2");
    residue_ = canonical_residue(residue, modulus.value());
}

bool Congruence::intersects(const Congruence& other) const {
    std::uint64_t g = gcd(modulus_, other.modulus()).value();
    return residue_ % g == other.residue() % g;
}

Congruence crt_combine(const std::vector<CrtPart>& parts) {
    if (parts.empty()) throw Error("crt_combine requires at least one part");

    unsigned a = 0, b = 0, c = 0;
    for (const CrtPart& part : parts) {
        FactoredInteger f = factor_smooth(part.modulus);
        int nonzero = (f.a() > 0) + (f.b() > 0) + (f.c() > 0);
        if (part.modulus < 2 || nonzero != 1)
            throw Error("crt part modulus must be a prime power of 2, 3, or 5: " +
                        std::to_string(part.modulus));
        if ((f.a() && a) || (f.b() && b) || (f.c() && c))
            throw NonCoprimePartsError("two crt parts share the prime base of " +
                                       std::to_string(part.modulus));
        a += f.a();
        b += f.b();
        c += f.c();
    }

    FactoredInteger product = FactoredInteger::from_exponents(a, b, c);

    // Fold parts together; moduli are pairwise coprime, so x = r1 + n1*t with
    // t chosen to satisfy the next part. Products stay within 64 bits by the
    // FactoredInteger cap, intermediate products use 128 bits.
    std::uint64_t x = canonical_residue(parts[0].residue, parts[0].modulus);
    std::uint64_t n = parts[0].modulus;
    for (std::size_t i = 1; i < parts.size(); ++i) {
        std::uint64_t ni = parts[i].modulus;
        std::uint64_t ri = canonical_residue(parts[i].residue, ni);
        std::uint64_t diff = canonical_residue(static_cast<std::int64_t>(ri % ni) -
                                                   static_cast<std::int64_t>(x % ni),
                                               ni);
        std::uint64_t t = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(diff) * mod_inverse(n % ni, ni)) % ni);
        x = static_cast<std::uint64_t>(x + static_cast<unsigned __int128>(n) * t);
        n *= ni;
    }
    return Congruence(static_cast<std::int64_t>(x), product);
}

CongruenceSystem::CongruenceSystem(std::vector<Congruence> congruences)
    : congruences_(std::move(congruences)) {
    for (const Congruence& c : congruences_) {
        lcm_ = covering::lcm(lcm_, c.modulus());
        std::uint64_t n = c.modulus().value();
        if (min_modulus_ == 0 || n < min_modulus_) min_modulus_ = n;
        if (n > max_modulus_) max_modulus_ = n;
        ++multiplicities_[n];
    }
}

bool CongruenceSystem::is_distinct() const {
    if (congruences_.empty()) return true;
    for (const auto& [modulus, count] : multiplicities_)
        if (count != 1) return false;
    return true;
}

}  // namespace covering
