#include "covering/factored.hpp"

#include <limits>

namespace covering {

namespace {

// Multiplies acc by base^exp, throwing if the product leaves 64 bits.
std::uint64_t checked_pow_mul(std::uint64_t acc, std::uint64_t base, unsigned exp) {
    for (unsigned i = 0; i < exp; ++i) {
        if (acc > std::numeric_limits<std::uint64_t>::max() / base)
            throw Error("2^a 3^b 5^c exceeds the 64-bit cap");
        acc *= base;
    }
    return acc;
}

}  // namespace

FactoredInteger FactoredInteger::from_exponents(unsigned a, unsigned b, unsigned c) {
    FactoredInteger f;
    std::uint64_t v = 1;
    v = checked_pow_mul(v, 2, a);
    v = checked_pow_mul(v, 3, b);
    v = checked_pow_mul(v, 5, c);
    f.value_ = v;
    f.a_ = a;
    f.b_ = b;
    f.c_ = c;
    return f;
}

FactoredInteger lcm(const FactoredInteger& x, const FactoredInteger& y) {
    return FactoredInteger::from_exponents(std::max(x.a_, y.a_), std::max(x.b_, y.b_),
                                           std::max(x.c_, y.c_));
}

FactoredInteger gcd(const FactoredInteger& x, const FactoredInteger& y) {
    return FactoredInteger::from_exponents(std::min(x.a_, y.a_), std::min(x.b_, y.b_),
                                           std::min(x.c_, y.c_));
}

std::string FactoredInteger::str() const {
    if (value_ == 1) return "1";
    std::string out;
    auto piece = [&out](unsigned p, unsigned e) {
        if (e == 0) return;
        if (!out.empty()) out += ' ';
        out += std::to_string(p);
        if (e > 1) out += '^' + std::to_string(e);
    };
    piece(2, a_);
    piece(3, b_);
    piece(5, c_);
    return out;
}

FactoredInteger factor_smooth(std::uint64_t n) {
    if (n == 0) throw Error("factor_smooth requires n >= 1");
    std::uint64_t orig = n;
    unsigned a = 0, b = 0, c = 0;
    while (n % 2 == 0) n /= 2, ++a;
    while (n % 3 == 0) n /= 3, ++b;
    while (n % 5 == 0) n /= 5, ++c;
    if (n != 1) throw NotSmoothError(orig);
    return FactoredInteger::from_exponents(a, b, c);
}

}  // namespace covering
