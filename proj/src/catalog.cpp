#include "covering/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef COVERING_DATA_DIR
#define COVERING_DATA_DIR "data/catalog"
#endif

namespace covering {

namespace {

struct EntrySpec {
    const char* id;
    const char* file;  // nullptr: claims-only placeholder or generated
    unsigned m;
    unsigned la, lb, lc;  // claimed L exponents (placeholders only; files carry their own)
    const char* source;
};

// Placeholder claims for coverings cited from Krukenberg's dissertation but
// not printed here; we never fabricate congruence lists.
constexpr EntrySpec kPlaceholders[] = {
    {"thm1.5-v", nullptr, 3, 3, 1, 1, "Krukenberg (cited)"},
    {"thm1.6-iii", nullptr, 4, 3, 2, 1, "Krukenberg, Example 5.4 (cited)"},
    {"thm1.7-vii", nullptr, 5, 5, 2, 1, "Krukenberg, Chapter V (cited)"},
    {"thm1.8-v", nullptr, 6, 5, 2, 2, "Krukenberg, Chapter V (cited)"},
};

constexpr const char* kTranscribed[][2] = {
    {"davenport", "davenport.cov"},
    {"thm1.5-iv", "thm1.5-iv.cov"},
    {"thm1.6-v", "thm1.6-v.cov"},
    {"thm1.7-iii", "thm1.7-iii.cov"},
    {"thm1.7-v", "thm1.7-v.cov"},
    {"thm1.7-vi", "thm1.7-vi.cov"},
    {"thm1.8-iii", "thm1.8-iii.cov"},
    {"thm1.8-vi", "thm1.8-vi.cov"},
    {"thm1.8-viii", "thm1.8-viii.cov"},
    {"thm1.11", "thm1.11.cov"},
};

std::string data_dir() {
    if (const char* env = std::getenv("COVERING_DATA_DIR")) return env;
    return COVERING_DATA_DIR;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open catalog file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* find_file(const std::string& id) {
    for (const auto& [eid, file] : kTranscribed)
        if (id == eid) return file;
    return nullptr;
}

}  // namespace

std::vector<CatalogEntry> list_entries() {
    std::vector<CatalogEntry> entries;
    for (const auto& [id, file] : kTranscribed) {
        SystemDocument doc = load_entry(id);
        CatalogEntry e;
        e.id = id;
        e.transcribed = true;
        e.claims_covering = true;
        e.claimed_m = doc.claimed_m.value_or(0);
        e.claimed_L = doc.claimed_L;
        e.exclude = doc.exclude;
        e.source = doc.source;
        entries.push_back(std::move(e));
    }
    for (const EntrySpec& spec : kPlaceholders) {
        CatalogEntry e;
        e.id = spec.id;
        e.transcribed = false;
        e.claims_covering = true;
        e.claimed_m = spec.m;
        e.claimed_L = FactoredInteger::from_exponents(spec.la, spec.lb, spec.lc);
        e.source = spec.source;
        entries.push_back(std::move(e));
    }
    {
        SystemDocument doc = build_m6_infinite_truncation(1);
        CatalogEntry e;
        e.id = "thm1.10-truncated";
        e.transcribed = true;
        e.claims_covering = false;  // finite truncation of an infinite covering
        e.claimed_m = 6;
        e.claimed_L = doc.claimed_L;
        e.source = doc.source;
        entries.push_back(std::move(e));
    }
    return entries;
}

SystemDocument load_entry(const std::string& id) {
    if (const char* file = find_file(id))
        return parse_system_file(read_file(data_dir() + "/" + file));
    if (id == "thm1.10-truncated") return build_m6_infinite_truncation(1);
    for (const EntrySpec& spec : kPlaceholders)
        if (id == spec.id)
            throw NotTranscribedError("entry '" + id + "' is claims-only (" + spec.source + ")");
    throw UnknownIdError("no catalog entry '" + id + "'");
}

std::vector<Congruence> tower(const TowerSpec& spec) {
    if (spec.a < 1) throw Error("tower requires a >= 1");
    if (spec.depth < 1) throw Error("tower requires depth >= 1");
    if (spec.d % 2 == 0) throw EvenDError("tower period d must be odd, got " + std::to_string(spec.d));
    FactoredInteger d = factor_smooth(spec.d);

    std::vector<Congruence> out;
    out.reserve(spec.depth);
    for (unsigned j = 1; j <= spec.depth; ++j) {
        unsigned e = spec.a + j - 1;
        std::uint64_t pow2 = std::uint64_t(1) << e;
        std::uint64_t half = std::uint64_t(1) << (e - 1);  // 2^(a+j-2)
        FactoredInteger modulus = FactoredInteger::from_exponents(e + d.a(), d.b(), d.c());
        std::int64_t r2 = spec.r + static_cast<std::int64_t>(half);  // canonicalized downstream
        if (spec.d == 1) {
            out.emplace_back(r2, modulus);
        } else {
            std::vector<CrtPart> parts{{r2, pow2}};
            std::uint64_t p3 = 1, p5 = 1;
            for (unsigned k = 0; k < d.b(); ++k) p3 *= 3;
            for (unsigned k = 0; k < d.c(); ++k) p5 *= 5;
            if (p3 > 1) parts.push_back({spec.r, p3});
            if (p5 > 1) parts.push_back({spec.r, p5});
            out.push_back(crt_combine(parts));
        }
    }
    return out;
}

SystemDocument build_m6_infinite_truncation(unsigned depth) {
    if (depth < 1) throw Error("depth must be >= 1");

    // The eleven fixed congruences of the construction, as plain classes.
    const std::pair<std::int64_t, std::uint64_t> fixed[] = {
        {2, 6},  {5, 12},  {6, 9},   {12, 18}, {21, 36}, {4, 10},
        {18, 20}, {7, 15}, {16, 30}, {27, 45}, {36, 90},
    };
    // The towers and the residue classes they fill.
    const TowerSpec towers[] = {
        {3, 1, 3, depth},   // fills 3 (mod 4)
        {3, 3, 1, depth},   // fills 1 (mod 12)
        {3, 9, 9, depth},   // fills 9 (mod 36)
        {3, 5, 8, depth},   // fills 8 (mod 20)
        {2, 15, 10, depth}, // fills 10 (mod 30)
        {2, 45, 0, depth},  // fills 0 (mod 90)
    };

    std::vector<Congruence> all;
    for (const auto& [r, n] : fixed) all.emplace_back(r, factor_smooth(n));
    for (const TowerSpec& t : towers) {
        std::vector<Congruence> part = tower(t);
        all.insert(all.end(), part.begin(), part.end());
    }
    std::stable_sort(all.begin(), all.end(), [](const Congruence& x, const Congruence& y) {
        return x.modulus().value() < y.modulus().value();
    });

    SystemDocument doc;
    doc.claimed_m = 6;
    doc.source = "strong infinite covering with m=6, truncated to depth " + std::to_string(depth);
    for (const Congruence& c : all) doc.claimed_L = lcm(doc.claimed_L, c.modulus());
    doc.congruences = std::move(all);
    return doc;
}

}  // namespace covering
