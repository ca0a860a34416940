#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "covering/congruence.hpp"

namespace covering {

// Digit widths implied by an ambient L = 2^a 3^b 5^c. A congruence token like
// (11|20|1) uses up to a base-2 digits, b base-3 digits, and c base-5 digits.
struct NotationContext {
    unsigned a = 0, b = 0, c = 0;

    static NotationContext of(const FactoredInteger& L) {
        return NotationContext{L.a(), L.b(), L.c()};
    }
    FactoredInteger value() const { return FactoredInteger::from_exponents(a, b, c); }
};

// Parses the digit-reversed (k|l|m) token. Each component is `*` or a digit
// string; the string length fixes the prime-power modulus and the string read
// right-to-left is the ordinary positional numeral of the residue.
Congruence parse_congruence(std::string_view text, const NotationContext& ctx);

// Inverse of parse_congruence. Component widths come from the exponents of
// c's modulus, not from the context; trailing `*` components are omitted.
std::string format_congruence(const Congruence& c, const NotationContext& ctx);

// Moduli barred from a system, either listed outright or "multiples of k".
struct Exclusions {
    std::vector<std::uint64_t> moduli;
    std::optional<std::uint64_t> multiples_of;

    bool excludes(std::uint64_t n) const;
    bool empty() const { return moduli.empty() && !multiples_of; }
    std::string str() const;
};

// One covering-system file: a header of claims plus the congruence list.
struct SystemDocument {
    FactoredInteger claimed_L;
    std::optional<std::uint64_t> claimed_m;
    Exclusions exclude;
    std::string source;
    std::vector<Congruence> congruences;

    NotationContext context() const { return NotationContext::of(claimed_L); }
    CongruenceSystem system() const { return CongruenceSystem(congruences); }
};

// Line-oriented UTF-8 format, `#` comments:
//   L = 2^a 3^b 5^c            (header, required first)
//   m = <int>                  (optional)
//   exclude = 5, 180           (optional; or "exclude = multiples of 405")
//   source = <free text>       (optional)
//   <r> mod <n>  or  (k|l|m)   (body, one congruence per line)
SystemDocument parse_system_file(std::string_view text);

// Writes a document back out, each congruence either as "r mod n" or in
// (k|l|m) notation.
std::string format_system_file(const SystemDocument& doc, bool use_notation);

}  // namespace covering
