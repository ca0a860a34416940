#include "covering/notation.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>

namespace covering {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::int64_t parse_int(std::string_view s, const char* what) {
    s = trim(s);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw SyntaxError(std::string("bad ") + what + ": '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

constexpr std::array<unsigned, 3> kBases = {2, 3, 5};

}  // namespace

Congruence parse_congruence(std::string_view text, const NotationContext& ctx) {
    text = trim(text);
    if (text.size() < 3 || text.front() != '(' || text.back() != ')')
        throw SyntaxError("congruence token must be parenthesized: '" + std::string(text) + "'");
    std::vector<std::string_view> comps = split(text.substr(1, text.size() - 2), '|');
    if (comps.size() > 3)
        throw SyntaxError("more than three components in '" + std::string(text) + "'");

    const std::array<unsigned, 3> widths = {ctx.a, ctx.b, ctx.c};
    std::vector<CrtPart> parts;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        std::string_view comp = trim(comps[i]);
        if (comp == "*") continue;
        if (comp.empty()) throw SyntaxError("empty component in '" + std::string(text) + "'");
        unsigned base = kBases[i];
        if (comp.size() > widths[i])
            throw WidthExceedsContextError("component '" + std::string(comp) + "' has " +
                                           std::to_string(comp.size()) +
                                           " digits but the context allows " +
                                           std::to_string(widths[i]));
        // Digits are written reversed: the leftmost digit is the units digit.
        std::uint64_t residue = 0, place = 1, modulus = 1;
        for (char ch : comp) {
            if (ch < '0' || ch > '9')
                throw SyntaxError("non-digit '" + std::string(1, ch) + "' in '" +
                                  std::string(text) + "'");
            unsigned digit = static_cast<unsigned>(ch - '0');
            if (digit >= base)
                throw DigitOutOfRangeError("digit " + std::string(1, ch) + " out of range for base " +
                                           std::to_string(base));
            residue += digit * place;
            place *= base;
            modulus *= base;
        }
        parts.push_back({static_cast<std::int64_t>(residue), modulus});
    }
    if (parts.empty())
        throw AllStarError("'" + std::string(text) + "' constrains nothing (modulus would be 1)");
    return crt_combine(parts);
}

std::string format_congruence(const Congruence& c, const NotationContext& ctx) {
    const FactoredInteger& n = c.modulus();
    if (!n.divides(ctx.value()))
        throw ContextMismatchError("modulus " + std::to_string(n.value()) +
                                   " does not divide the context value " +
                                   std::to_string(ctx.value().value()));

    // Width per component is the exponent of the congruence's own modulus.
    const std::array<unsigned, 3> exps = {n.a(), n.b(), n.c()};
    std::array<std::string, 3> comps;
    for (std::size_t i = 0; i < 3; ++i) {
        unsigned e = exps[i];
        if (e == 0) {
            comps[i] = "*";
            continue;
        }
        std::uint64_t pe = 1;
        for (unsigned k = 0; k < e; ++k) pe *= kBases[i];
        std::uint64_t r = c.residue() % pe;
        std::string digits;
        for (unsigned k = 0; k < e; ++k) {
            digits += static_cast<char>('0' + r % kBases[i]);
            r /= kBases[i];
        }
        comps[i] = digits;
    }

    std::size_t last = 2;
    while (last > 0 && comps[last] == "*") --last;
    std::string out = "(";
    for (std::size_t i = 0; i <= last; ++i) {
        if (i) out += '|';
        out += comps[i];
    }
    out += ')';
    return out;
}

bool Exclusions::excludes(std::uint64_t n) const {
    if (multiples_of && n % *multiples_of == 0) return true;
    return std::find(moduli.begin(), moduli.end(), n) != moduli.end();
}

std::string Exclusions::str() const {
    if (multiples_of) return "multiples of " + std::to_string(*multiples_of);
    std::string out;
    for (std::uint64_t n : moduli) {
        if (!out.empty()) out += ", ";
        out += std::to_string(n);
    }
    return out;
}

namespace {

FactoredInteger parse_lcm_spec(std::string_view spec, int line_no) {
    std::istringstream in{std::string(spec)};
    std::string token;
    unsigned exps[3] = {0, 0, 0};
    bool seen[3] = {false, false, false};
    bool any = false;
    while (in >> token) {
        std::size_t caret = token.find('^');
        std::int64_t p = parse_int(token.substr(0, caret), "prime");
        std::int64_t e = 1;
        if (caret != std::string::npos) e = parse_int(token.substr(caret + 1), "exponent");
        int idx = p == 2 ? 0 : p == 3 ? 1 : p == 5 ? 2 : -1;
        if (idx < 0 || e < 0)
            throw SyntaxError("line " + std::to_string(line_no) + ": bad factor '" + token + "'");
        if (seen[idx])
            throw SyntaxError("line " + std::to_string(line_no) + ": repeated prime " + token);
        seen[idx] = true;
        exps[idx] = static_cast<unsigned>(e);
        any = true;
    }
    if (!any) throw SyntaxError("line " + std::to_string(line_no) + ": empty L specification");
    return FactoredInteger::from_exponents(exps[0], exps[1], exps[2]);
}

Exclusions parse_exclude_spec(std::string_view spec) {
    Exclusions ex;
    spec = trim(spec);
    constexpr std::string_view kMultiples = "multiples of";
    if (spec.substr(0, kMultiples.size()) == kMultiples) {
        ex.multiples_of = static_cast<std::uint64_t>(
            parse_int(spec.substr(kMultiples.size()), "exclusion multiple"));
        return ex;
    }
    for (std::string_view piece : split(spec, ','))
        ex.moduli.push_back(static_cast<std::uint64_t>(parse_int(piece, "excluded modulus")));
    return ex;
}

}  // namespace

SystemDocument parse_system_file(std::string_view text) {
    SystemDocument doc;
    bool have_L = false;
    int line_no = 0;
    for (std::string_view raw : split(text, '\n')) {
        ++line_no;
        std::string_view line = raw.substr(0, raw.find('#'));
        line = trim(line);
        if (line.empty()) continue;

        std::size_t eq = line.find('=');
        std::string_view key =
            eq == std::string_view::npos ? std::string_view{} : trim(line.substr(0, eq));
        if (key == "L" || key == "m" || key == "exclude" || key == "source") {
            std::string_view val = trim(line.substr(eq + 1));
            if (key == "L") {
                doc.claimed_L = parse_lcm_spec(val, line_no);
                have_L = true;
            } else if (key == "m") {
                doc.claimed_m = static_cast<std::uint64_t>(parse_int(val, "claimed m"));
            } else if (key == "exclude") {
                doc.exclude = parse_exclude_spec(val);
            } else if (key == "source") {
                doc.source = std::string(val);
            }
            continue;
        }

        if (!have_L) throw HeaderMissingError("line " + std::to_string(line_no) +
                                              ": body before 'L = ...' header");
        try {
            Congruence c = [&]() {
                if (line.front() == '(') return parse_congruence(line, doc.context());
                std::size_t pos = line.find(" mod ");
                if (pos == std::string_view::npos)
                    throw SyntaxError("expected '<r> mod <n>' or '(k|l|m)'");
                std::int64_t r = parse_int(line.substr(0, pos), "residue");
                std::int64_t n = parse_int(line.substr(pos + 5), "modulus");
                if (n < 2) throw SyntaxError("modulus must be >= 2");
                return Congruence(r, factor_smooth(static_cast<std::uint64_t>(n)));
            }();
            if (!c.modulus().divides(doc.claimed_L))
                throw ModulusNotDividingLError("line " + std::to_string(line_no) + ": modulus " +
                                               std::to_string(c.modulus().value()) +
                                               " does not divide claimed L");
            doc.congruences.push_back(c);
        } catch (const ModulusNotDividingLError&) {
            throw;
        } catch (const NotSmoothError& e) {
            throw NotSmoothError(e.n, "line " + std::to_string(line_no));
        } catch (const Error& e) {
            throw SyntaxError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!have_L) throw HeaderMissingError("missing 'L = ...' header");
    return doc;
}

std::string format_system_file(const SystemDocument& doc, bool use_notation) {
    std::string out = "L = " + doc.claimed_L.str() + "\n";
    if (doc.claimed_m) out += "m = " + std::to_string(*doc.claimed_m) + "\n";
    if (!doc.exclude.empty()) out += "exclude = " + doc.exclude.str() + "\n";
    if (!doc.source.empty()) out += "source = " + doc.source + "\n";
    NotationContext ctx = doc.context();
    for (const Congruence& c : doc.congruences) {
        if (use_notation)
            out += format_congruence(c, ctx) + "\n";
        else
            out += std::to_string(c.residue()) + " mod " + std::to_string(c.modulus().value()) +
                   "\n";
    }
    return out;
}

}  // namespace covering
