#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "covering/congruence.hpp"
#include "covering/notation.hpp"

namespace covering {

enum class SolveMode { Feasibility, MaxCoverage };

// One instance of the covering decision/optimization problem: a multiset of
// moduli (distinct values with multiplicities), preset residue classes, and
// search budgets.
struct SolveProblem {
    std::vector<std::pair<std::uint64_t, int>> moduli;  // (m_i, f_i), m_i distinct
    FactoredInteger L;                                  // lcm of the moduli
    std::vector<Congruence> presets;
    SolveMode mode = SolveMode::Feasibility;

    std::chrono::milliseconds time_budget{std::chrono::minutes(10)};
    std::uint64_t node_budget = 1'000'000'000;
    bool reproducible = false;
    // Feasibility accelerators; both are sound and on by default.
    bool density_preprune = true;       // inclusion-exclusion certificate short-cut
    bool break_translation_symmetry = true;

    static SolveProblem divisors(const FactoredInteger& L, std::uint64_t min_modulus,
                                 SolveMode mode, const Exclusions& exclude = {});
};

enum class SolveStatus { Feasible, InfeasibleExhausted, Optimal, BudgetExceeded };

struct SolveVerdict {
    SolveStatus status = SolveStatus::BudgetExceeded;
    std::optional<CongruenceSystem> witness;  // Feasible/Optimal (and best incumbent on budget)
    std::optional<std::uint64_t> covered;     // MaxCoverage
    std::uint64_t nodes_explored = 0;
    std::chrono::duration<double> wall_time{0};
    std::string note;  // e.g. preset-conditional caveat or bound certificate
};

// Depth-first branch-and-bound over the residues of [0, L). Feasible
// witnesses are re-verified by the sieve before being returned.
SolveVerdict solve_feasibility(const SolveProblem& problem);

// Same search skeleton with a "leave uncovered" branch and an incumbent.
SolveVerdict solve_max_coverage(const SolveProblem& problem);

// Exhaustive enumeration over all residue assignments; requires the product
// of the multiset of moduli to be at most 10^7.
SolveVerdict brute_force_oracle(const SolveProblem& problem);

// Emits the instance in LP file format (sections Maximize / Subject To /
// Bounds / Binary / End) with binary variables x_<i>_<j>, 1-based, and y_<b>
// covered indicators in MaxCoverage mode. Presets become fixing bounds.
std::string export_lp(const SolveProblem& problem);

}  // namespace covering
