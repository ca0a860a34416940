#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "covering/notation.hpp"

namespace covering {

// One transcribed construction (or a claims-only placeholder for coverings
// that are cited but not printed in full anywhere we can transcribe from).
struct CatalogEntry {
    std::string id;
    bool transcribed = false;
    bool claims_covering = true;  // false for truncations of infinite systems
    std::uint64_t claimed_m = 0;
    FactoredInteger claimed_L;
    Exclusions exclude;
    std::string source;
};

std::vector<CatalogEntry> list_entries();

// Loads the full congruence list of a transcribed entry from its data file.
// Throws UnknownIdError / NotTranscribedError.
SystemDocument load_entry(const std::string& id);

// The 2^a "up-arrow" d family: congruence j (1-based) has modulus 2^(a+j-1)*d
// with residue r_j fixed by r_j = r (mod d) and r_j = r + 2^(a+j-2)
// (mod 2^(a+j-1)). The classes are pairwise disjoint and, as depth grows,
// fill the class r (mod 2^(a-1)*d).
struct TowerSpec {
    unsigned a = 1;       // >= 1
    std::uint64_t d = 1;  // odd, 5-smooth
    std::int64_t r = 0;
    unsigned depth = 1;   // >= 1
};

std::vector<Congruence> tower(const TowerSpec& spec);

// The strong infinite covering with least modulus 6 and all moduli 2^x 3^y 5^z
// (y <= 2, z <= 1): eleven fixed congruences plus six towers, each truncated
// to `depth` and the whole list ordered by increasing modulus.
SystemDocument build_m6_infinite_truncation(unsigned depth);

}  // namespace covering
