#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "covering/errors.hpp"

namespace covering {

// A positive integer of the form 2^a * 3^b * 5^c, kept together with its
// exponents. Values are capped so they always fit in 64 bits.
class FactoredInteger {
public:
    FactoredInteger() = default;  // the integer 1

    static FactoredInteger from_exponents(unsigned a, unsigned b, unsigned c);
    static FactoredInteger one() { return FactoredInteger(); }

    std::uint64_t value() const { return value_; }
    unsigned a() const { return a_; }
    unsigned b() const { return b_; }
    unsigned c() const { return c_; }

    bool divides(const FactoredInteger& other) const {
        return a_ <= other.a_ && b_ <= other.b_ && c_ <= other.c_;
    }

    friend FactoredInteger lcm(const FactoredInteger& x, const FactoredInteger& y);
    friend FactoredInteger gcd(const FactoredInteger& x, const FactoredInteger& y);

    bool operator==(const FactoredInteger&) const = default;
    auto operator<=>(const FactoredInteger& other) const { return value_ <=> other.value_; }

    std::string str() const;  // "2^a 3^b 5^c" with zero-exponent factors omitted

private:
    std::uint64_t value_ = 1;
    unsigned a_ = 0, b_ = 0, c_ = 0;
};

FactoredInteger lcm(const FactoredInteger& x, const FactoredInteger& y);
FactoredInteger gcd(const FactoredInteger& x, const FactoredInteger& y);

// Factors n over {2,3,5}; throws NotSmoothError on any other prime factor.
FactoredInteger factor_smooth(std::uint64_t n);

}  // namespace covering
