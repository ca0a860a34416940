#include "covering/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "covering/bounds.hpp"
#include "covering/verifier.hpp"

#include "Highs.h"

namespace covering {

#include <map>
#include <unordered_map>

namespace {

using Clock = std::chrono::steady_clock;

// Sound infeasibility certificate based on prime-power class distributions.
// Pick a prime p dividing the domain; every congruence whose modulus is
// divisible by p commits to one of the p residue classes mod p, and a
// congruence with modulus coprime to p acts inside all p classes at once.
// Each class then poses the same kind of covering problem over a domain
// shrunk by p, with the committed moduli divided by p. Exhausting all
// distributions (up to permutation of the classes) without finding one
// whose subproblems are all plausibly coverable proves the original
// multiset cannot cover the domain. The relaxation lets residues be chosen
// independently per class, so "plausibly coverable" never misses a real
// covering; for a domain that is a pure prime power the criterion is exact
// (a Kraft-style density packing).
class DistributionRelaxation {
public:
    enum class Answer { Infeasible, Unknown };

    DistributionRelaxation(Clock::time_point deadline) : deadline_(deadline) {}

    Answer run(std::uint64_t domain, std::vector<std::uint64_t> moduli) {
        bool plausible = feasible(domain, std::move(moduli));
        if (timed_out_) return Answer::Unknown;
        return plausible ? Answer::Unknown : Answer::Infeasible;
    }

    std::uint64_t nodes() const { return nodes_; }

private:
    bool feasible(std::uint64_t N, std::vector<std::uint64_t> ms) {
        std::sort(ms.begin(), ms.end());
        if (!ms.empty() && ms.front() == 1) return true;
        if (N == 1) return false;
        std::uint64_t density = 0;
        for (std::uint64_t m : ms) density += N / m;
        if (density < N) return false;
        std::uint64_t p = N % 2 == 0 ? 2 : N % 3 == 0 ? 3 : 5;
        std::uint64_t odd_part = N;
        while (odd_part % p == 0) odd_part /= p;
        if (odd_part == 1) return true;  // pure prime power: density test is exact
        auto key = std::make_pair(N, ms);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        if (Clock::now() > deadline_) return timed_out_ = true;
        bool any_p = false;
        for (std::uint64_t m : ms) any_p |= m % p == 0;
        bool res;
        if (!any_p) {
            res = feasible(odd_part, ms);
        } else {
            std::vector<std::uint64_t> fixed, movable;
            for (std::uint64_t m : ms) (m % p == 0 ? movable : fixed).push_back(m);
            std::sort(movable.begin(), movable.end(), std::greater<>());
            res = greedy(N / p, fixed, movable, p);
            if (!res) {
                groups_.assign(p, {});
                std::uint64_t base = 0;
                for (std::uint64_t m : fixed) base += (N / p) / m;
                dens_.assign(p, base);
                tail_.assign(movable.size() + 1, 0);
                for (std::size_t i = movable.size(); i-- > 0;)
                    tail_[i] = tail_[i + 1] + (N / p) / (movable[i] / p);
                res = distribute(0, N / p, fixed, movable, p);
            }
        }
        memo_[key] = res;
        return res;
    }

    // Balanced water-fill: drop each movable modulus into the least-dense
    // class and test that single distribution. A cheap sufficient check that
    // usually finds a witness immediately when the answer is "plausible",
    // sparing the exhaustive enumeration for the infeasible nodes.
    bool greedy(std::uint64_t Np, const std::vector<std::uint64_t>& fixed,
                const std::vector<std::uint64_t>& movable, std::uint64_t p) {
        std::uint64_t base = 0;
        for (std::uint64_t m : fixed) base += Np / m;
        std::vector<std::vector<std::uint64_t>> groups(p);
        std::vector<std::uint64_t> dens(p, base);
        for (std::uint64_t m : movable) {
            std::size_t g = static_cast<std::size_t>(
                std::min_element(dens.begin(), dens.end()) - dens.begin());
            groups[g].push_back(m / p);
            dens[g] += Np / (m / p);
        }
        for (std::uint64_t g = 0; g < p; ++g) {
            std::vector<std::uint64_t> sub = fixed;
            for (std::uint64_t x : groups[g]) sub.push_back(x);
            if (!feasible(Np, std::move(sub))) return false;
        }
        return true;
    }

    bool distribute(std::size_t i, std::uint64_t Np, const std::vector<std::uint64_t>& fixed,
                    const std::vector<std::uint64_t>& movable, std::uint64_t p) {
        if (timed_out_ || ((++nodes_ & 0xffff) == 0 && Clock::now() > deadline_))
            return timed_out_ = true;
        if (i == movable.size()) {
            auto groups = groups_;  // feasible() below reuses the scratch state
            auto dens = dens_;
            auto tail = tail_;
            for (std::uint64_t g = 0; g < p; ++g) {
                std::vector<std::uint64_t> sub = fixed;
                for (std::uint64_t x : groups[g]) sub.push_back(x / p);
                if (!feasible(Np, std::move(sub))) {
                    groups_ = std::move(groups);
                    dens_ = std::move(dens);
                    tail_ = std::move(tail);
                    return false;
                }
            }
            return true;
        }
        std::uint64_t deficit = 0;
        for (std::uint64_t g = 0; g < p; ++g) deficit += dens_[g] < Np ? Np - dens_[g] : 0;
        if (deficit > tail_[i]) return false;
        std::uint64_t gain = Np / (movable[i] / p);
        for (std::uint64_t g = 0; g < p; ++g) {
            bool duplicate = false;  // classes are interchangeable
            for (std::uint64_t h = 0; h < g && !duplicate; ++h)
                duplicate = groups_[h] == groups_[g];
            if (duplicate) continue;
            groups_[g].push_back(movable[i]);
            dens_[g] += gain;
            if (distribute(i + 1, Np, fixed, movable, p)) return true;
            groups_[g].pop_back();
            dens_[g] -= gain;
        }
        return false;
    }

    struct MultisetKeyHash {
        std::size_t operator()(
            const std::pair<std::uint64_t, std::vector<std::uint64_t>>& k) const {
            std::size_t h = k.first * 0x9e3779b97f4a7c15ULL;
            for (std::uint64_t v : k.second) h = (h ^ v) * 0x100000001b3ULL;
            return h;
        }
    };
    std::unordered_map<std::pair<std::uint64_t, std::vector<std::uint64_t>>, bool,
                       MultisetKeyHash>
        memo_;
    std::vector<std::vector<std::uint64_t>> groups_;
    std::vector<std::uint64_t> dens_, tail_;
    Clock::time_point deadline_;
    std::uint64_t nodes_ = 0;
    bool timed_out_ = false;
};

// Max-coverage analog of the distribution relaxation: the same recursive
// class-distribution scheme, but computing an upper bound on how many
// residues the multiset can cover. Moduli coprime to the chosen prime decouple
// across the classes (each class may use them independently), so the value
// never under-estimates a real assignment; when the domain is a pure prime
// power the value is exact (shallow residue classes are packed greedily).
class MaxCoverageRelaxation {
public:
    explicit MaxCoverageRelaxation(Clock::time_point deadline) : deadline_(deadline) {}

    // Upper bound on max coverage, or nullopt if the deadline struck.
    std::optional<std::uint64_t> run(std::uint64_t domain, std::vector<std::uint64_t> moduli) {
        std::uint64_t v = bound(domain, std::move(moduli));
        if (timed_out_) return std::nullopt;
        return v;
    }

    std::uint64_t nodes() const { return nodes_; }

private:
    static std::uint64_t prime_of(std::uint64_t n) {
        return n % 2 == 0 ? 2 : n % 3 == 0 ? 3 : 5;
    }

    // Exact max coverage when every modulus is a power of the single prime of
    // the domain: take residue classes shallowest-first; a class of modulus
    // p^e blocks exactly its own volume of deeper classes, so greed is exact.
    static std::uint64_t pure_power_cover(std::uint64_t N, std::uint64_t p,
                                          const std::vector<std::uint64_t>& ms) {
        std::uint64_t covered = 0, free_slots = 1, level = 1;
        for (std::size_t i = 0; i < ms.size();) {
            std::size_t j = i;
            while (j < ms.size() && ms[j] == ms[i]) ++j;
            while (level < ms[i]) {
                free_slots *= p;
                level *= p;
            }
            std::uint64_t take = std::min<std::uint64_t>(j - i, free_slots);
            covered += take * (N / ms[i]);
            free_slots -= take;
            i = j;
        }
        return covered;
    }

    std::uint64_t bound(std::uint64_t N, std::vector<std::uint64_t> ms) {
        if (timed_out_ || ((++nodes_ & 0x3ff) == 0 && Clock::now() > deadline_)) {
            timed_out_ = true;
            return N;
        }
        if (ms.empty()) return 0;
        std::sort(ms.begin(), ms.end());
        if (ms.front() == 1 || N == 1) return N;
        {
            std::uint64_t sp = prime_of(N), rest = N;
            while (rest % sp == 0) rest /= sp;
            if (rest == 1) {
                bool pure = true;
                for (std::uint64_t m : ms) {
                    std::uint64_t t = m;
                    while (t % sp == 0) t /= sp;
                    pure = pure && t == 1;
                }
                if (pure) return pure_power_cover(N, sp, ms);
            }
        }
        auto key = std::make_pair(N, ms);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        // Recurse on the prime with the fewest coprime moduli: they are the
        // only source of slack, so this keeps the bound tight.
        std::uint64_t p = 0;
        std::size_t fewest = ms.size() + 1;
        for (std::uint64_t cand : {2ull, 3ull, 5ull}) {
            if (N % cand) continue;
            std::size_t coprime = 0;
            for (std::uint64_t m : ms) coprime += m % cand != 0;
            if (coprime < fewest) {
                fewest = coprime;
                p = cand;
            }
        }
        std::vector<std::uint64_t> rest;
        std::vector<std::pair<std::uint64_t, std::uint64_t>> groups;  // (modulus, count)
        for (std::uint64_t m : ms) {
            if (m % p) {
                rest.push_back(m);
            } else if (!groups.empty() && groups.back().first == m) {
                ++groups.back().second;
            } else {
                groups.emplace_back(m, 1);
            }
        }
        std::uint64_t best;
        if (groups.empty()) {
            std::uint64_t q = N;
            while (q % p == 0) q /= p;
            best = std::min(N, (N / q) * bound(q, std::move(rest)));
        } else {
            best = distributed_bound(N, p, rest, groups);
        }
        best = std::min(best, N);
        if (!timed_out_) memo_[key] = best;
        return best;
    }

    // Enumerates, up to permutation of the classes, every way of assigning the
    // p-divisible moduli to the p classes; prunes assignments whose density
    // caps cannot beat the best assignment found so far.
    std::uint64_t distributed_bound(std::uint64_t N, std::uint64_t p,
                                    const std::vector<std::uint64_t>& rest,
                                    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& groups) {
        std::uint64_t Np = N / p;
        std::uint64_t rest_cap = 0;
        for (std::uint64_t m : rest) rest_cap += Np / m;
        // All compositions of each group's count into p ordered parts.
        std::vector<std::vector<std::vector<std::uint64_t>>> comps(groups.size());
        for (std::size_t g = 0; g < groups.size(); ++g) {
            std::vector<std::uint64_t> cur(p, 0);
            auto gen = [&](auto&& self, std::uint64_t pos, std::uint64_t left) -> void {
                if (pos + 1 == p) {
                    cur[pos] = left;
                    comps[g].push_back(cur);
                    return;
                }
                for (std::uint64_t k = 0; k <= left; ++k) {
                    cur[pos] = k;
                    self(self, pos + 1, left - k);
                }
            };
            gen(gen, 0, groups[g].second);
        }
        std::uint64_t best = 0;
        std::vector<std::size_t> pick(groups.size(), 0);
        std::vector<std::uint64_t> cap(p);
        std::uint64_t spins = 0;
        while (!timed_out_) {
            // Non-canonical assignments skip bound(), so the deadline must be
            // polled here too or a wide enumeration can spin past it.
            if ((++spins & 0xffff) == 0 && Clock::now() > deadline_) {
                timed_out_ = true;
                break;
            }
            // Classes are interchangeable: keep only assignments whose
            // per-class columns are lexicographically nonincreasing.
            bool canonical = true;
            for (std::uint64_t c = 1; c < p && canonical; ++c)
                for (std::size_t g = 0; g < groups.size(); ++g) {
                    std::uint64_t a = comps[g][pick[g]][c - 1], b = comps[g][pick[g]][c];
                    if (a != b) {
                        canonical = a > b;
                        break;
                    }
                }
            if (canonical) {
                std::uint64_t cap_total = 0;
                for (std::uint64_t c = 0; c < p; ++c) {
                    std::uint64_t s = rest_cap;
                    for (std::size_t g = 0; g < groups.size(); ++g)
                        s += comps[g][pick[g]][c] * (Np / (groups[g].first / p));
                    cap[c] = std::min(Np, s);
                    cap_total += cap[c];
                }
                if (cap_total > best) {
                    std::uint64_t total = 0, remaining = cap_total;
                    for (std::uint64_t c = 0; c < p; ++c) {
                        remaining -= cap[c];
                        std::vector<std::uint64_t> sub = rest;
                        for (std::size_t g = 0; g < groups.size(); ++g)
                            for (std::uint64_t k = 0; k < comps[g][pick[g]][c]; ++k)
                                sub.push_back(groups[g].first / p);
                        total += bound(Np, std::move(sub));
                        if (total + remaining <= best) {
                            total = 0;
                            break;
                        }
                    }
                    best = std::max(best, total);
                }
            }
            std::size_t g = 0;
            while (g < groups.size()) {
                if (++pick[g] < comps[g].size()) break;
                pick[g] = 0;
                ++g;
            }
            if (g == groups.size()) break;
        }
        return best;
    }

    struct MultisetKeyHash {
        std::size_t operator()(
            const std::pair<std::uint64_t, std::vector<std::uint64_t>>& k) const {
            std::size_t h = k.first * 0x9e3779b97f4a7c15ULL;
            for (std::uint64_t v : k.second) h = (h ^ v) * 0x100000001b3ULL;
            return h;
        }
    };
    std::unordered_map<std::pair<std::uint64_t, std::vector<std::uint64_t>>, std::uint64_t,
                       MultisetKeyHash>
        memo_;
    Clock::time_point deadline_;
    std::uint64_t nodes_ = 0;
    bool timed_out_ = false;
};

struct Instance {
    std::uint64_t L = 0;
    // Moduli ascending; remaining multiplicity is mutated during search.
    std::vector<std::uint64_t> mods;
    std::vector<int> remaining;
    std::vector<std::size_t> input_index;  // position in problem.moduli
};

Instance prepare(const SolveProblem& problem) {
    if (problem.moduli.empty()) throw InvalidProblemError("no moduli given");
    Instance inst;
    inst.L = problem.L.value();

    std::vector<std::size_t> order(problem.moduli.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return problem.moduli[x].first < problem.moduli[y].first;
    });
    for (std::size_t idx : order) {
        auto [m, f] = problem.moduli[idx];
        if (m < 2) throw InvalidProblemError("modulus must be >= 2");
        if (f < 1) throw InvalidProblemError("multiplicity must be >= 1");
        if (!inst.mods.empty() && inst.mods.back() == m)
            throw InvalidProblemError("duplicate modulus " + std::to_string(m));
        if (inst.L % m != 0)
            throw InvalidProblemError("modulus " + std::to_string(m) + " does not divide L");
        inst.mods.push_back(m);
        inst.remaining.push_back(f);
        inst.input_index.push_back(idx);
    }
    return inst;
}

// Shared branch-and-bound state. Residue coverage is counted with depths so
// choices undo exactly; class_uncovered[i][c] tracks how many residues of
// class c (mod m_i) are still uncovered, which feeds the gain bound.
class Search {
public:
    Search(const SolveProblem& problem, Instance inst)
        : problem_(problem),
          inst_(std::move(inst)),
          cover_depth_(inst_.L, 0),
          skipped_(inst_.L, 0),
          uncovered_(inst_.L) {
        class_uncovered_.resize(inst_.mods.size());
        for (std::size_t i = 0; i < inst_.mods.size(); ++i)
            class_uncovered_[i].assign(inst_.mods[i],
                                       static_cast<std::int64_t>(inst_.L / inst_.mods[i]));
        // Partition moduli: the maximal prime-power divisors of L. Coverage
        // inside each residue class mod q is bounded separately, which is
        // where systems with skewed prime-power structure get pruned.
        FactoredInteger L = problem.L;
        for (auto [p, e] : {std::pair<std::uint64_t, unsigned>{2, L.a()}, {3, L.b()}, {5, L.c()}}) {
            if (e == 0) continue;
            std::uint64_t q = 1;
            for (unsigned k = 0; k < e; ++k) q *= p;
            if (q > 1 && q < inst_.L) qs_.push_back(q);
        }
        part_uncovered_.resize(qs_.size());
        part_counts_.resize(qs_.size());
        part_key_.resize(qs_.size());
        for (std::size_t qi = 0; qi < qs_.size(); ++qi) {
            part_uncovered_[qi].assign(qs_[qi], static_cast<std::int64_t>(inst_.L / qs_[qi]));
            part_counts_[qi].resize(inst_.mods.size());
            part_key_[qi].resize(inst_.mods.size());
            for (std::size_t i = 0; i < inst_.mods.size(); ++i) {
                std::uint64_t key = std::lcm(inst_.mods[i], qs_[qi]);
                part_key_[qi][i] = key;
                part_counts_[qi][i].assign(key, static_cast<std::int64_t>(inst_.L / key));
            }
        }
        deadline_ = Clock::now() + problem.time_budget;
    }

    void set_covered(std::uint64_t x) {
        --uncovered_;
        for (std::size_t i = 0; i < inst_.mods.size(); ++i)
            --class_uncovered_[i][x % inst_.mods[i]];
        for (std::size_t qi = 0; qi < qs_.size(); ++qi) {
            --part_uncovered_[qi][x % qs_[qi]];
            for (std::size_t i = 0; i < inst_.mods.size(); ++i)
                --part_counts_[qi][i][x % part_key_[qi][i]];
        }
    }

    void set_uncovered(std::uint64_t x) {
        ++uncovered_;
        for (std::size_t i = 0; i < inst_.mods.size(); ++i)
            ++class_uncovered_[i][x % inst_.mods[i]];
        for (std::size_t qi = 0; qi < qs_.size(); ++qi) {
            ++part_uncovered_[qi][x % qs_[qi]];
            for (std::size_t i = 0; i < inst_.mods.size(); ++i)
                ++part_counts_[qi][i][x % part_key_[qi][i]];
        }
    }

    void choose(std::size_t mi, std::uint64_t cls) {
        --inst_.remaining[mi];
        chosen_.emplace_back(mi, cls);
        for (std::uint64_t x = cls; x < inst_.L; x += inst_.mods[mi])
            if (cover_depth_[x]++ == 0) set_covered(x);
    }

    void undo() {
        auto [mi, cls] = chosen_.back();
        chosen_.pop_back();
        ++inst_.remaining[mi];
        for (std::uint64_t x = cls; x < inst_.L; x += inst_.mods[mi])
            if (--cover_depth_[x] == 0) set_uncovered(x);
    }

    std::uint64_t covered() const { return inst_.L - uncovered_; }
    std::uint64_t uncovered() const { return uncovered_; }

    // True if at most `target` residues can still be gained: an upper bound
    // using the best single class of every remaining modulus use. A cheap
    // optimistic pass filters before the exact per-class maxima are scanned.
    bool gain_below(std::uint64_t target) {
        if (target == 0) return false;
        std::uint64_t optimistic = 0;
        for (std::size_t i = 0; i < inst_.mods.size(); ++i)
            if (inst_.remaining[i] > 0)
                optimistic += static_cast<std::uint64_t>(inst_.remaining[i]) *
                              (inst_.L / inst_.mods[i]);
        if (optimistic < target) return true;

        std::uint64_t exact = 0;
        for (std::size_t i = 0; i < inst_.mods.size(); ++i) {
            if (inst_.remaining[i] <= 0) continue;
            std::uint64_t slack = inst_.L / inst_.mods[i];
            optimistic -= static_cast<std::uint64_t>(inst_.remaining[i]) * slack;
            std::int64_t best = 0;
            for (std::int64_t cnt : class_uncovered_[i]) best = std::max(best, cnt);
            exact += static_cast<std::uint64_t>(inst_.remaining[i]) *
                     static_cast<std::uint64_t>(best);
            if (exact >= target) break;
            if (exact + optimistic < target) return true;
        }
        if (exact < target) return true;
        // Partition refinement: coverage gained inside one residue class mod
        // q cannot exceed that class's uncovered count, nor the sum of each
        // modulus's best class restricted to it.
        for (std::size_t qi = 0; qi < qs_.size(); ++qi) {
            const std::uint64_t q = qs_[qi];
            std::uint64_t total = 0;
            for (std::uint64_t c = 0; c < q && total < target; ++c) {
                std::int64_t need = part_uncovered_[qi][c];
                if (need <= 0) continue;
                std::int64_t cap = 0;
                for (std::size_t i = 0; i < inst_.mods.size() && cap < need; ++i) {
                    if (inst_.remaining[i] <= 0) continue;
                    const auto& counts = part_counts_[qi][i];
                    std::int64_t best = 0;
                    for (std::uint64_t idx = c; idx < part_key_[qi][i]; idx += q)
                        best = std::max(best, counts[idx]);
                    cap += static_cast<std::int64_t>(inst_.remaining[i]) * best;
                }
                total += static_cast<std::uint64_t>(std::min(cap, need));
            }
            if (total < target) return true;
        }
        return false;
    }

    bool out_of_budget() {
        ++nodes_;
        if (nodes_ > problem_.node_budget) return aborted_ = true;
        if ((nodes_ & 0x3ff) == 0 && Clock::now() > deadline_) return aborted_ = true;
        return aborted_;
    }

    std::uint64_t first_open(std::uint64_t start) const {
        for (std::uint64_t x = start; x < inst_.L; ++x)
            if (cover_depth_[x] == 0 && !skipped_[x]) return x;
        return inst_.L;
    }

    std::vector<Congruence> congruences_of(
        const std::vector<std::pair<std::size_t, std::uint64_t>>& picks) const {
        std::vector<Congruence> out;
        out.reserve(picks.size());
        for (auto [mi, cls] : picks)
            out.emplace_back(static_cast<std::int64_t>(cls), factor_smooth(inst_.mods[mi]));
        return out;
    }

    enum class Outcome { Found, Exhausted, Abort };

    Outcome dfs_feasibility(std::uint64_t start) {
        if (out_of_budget()) return Outcome::Abort;
        if (uncovered_ == 0) return Outcome::Found;
        if (gain_below(uncovered_)) return Outcome::Exhausted;
        std::uint64_t b = first_open(start);
        for (std::size_t mi = 0; mi < inst_.mods.size(); ++mi) {
            if (inst_.remaining[mi] <= 0) continue;
            choose(mi, b % inst_.mods[mi]);
            Outcome r = dfs_feasibility(b + 1);
            if (r != Outcome::Exhausted) return r;  // keep the witness on the stack
            undo();
        }
        return Outcome::Exhausted;
    }

    Outcome dfs_max_coverage(std::uint64_t start) {
        if (out_of_budget()) return Outcome::Abort;
        if (covered() > best_covered_) {
            best_covered_ = covered();
            best_chosen_ = chosen_;
        }
        if (gain_below(best_covered_ + 1 - covered())) return Outcome::Exhausted;
        std::uint64_t b = first_open(start);
        bool any_mod = false;
        for (std::size_t mi = 0; mi < inst_.mods.size(); ++mi)
            if (inst_.remaining[mi] > 0) any_mod = true;
        if (b == inst_.L || !any_mod) return Outcome::Exhausted;
        for (std::size_t mi = 0; mi < inst_.mods.size(); ++mi) {
            if (inst_.remaining[mi] <= 0) continue;
            choose(mi, b % inst_.mods[mi]);
            Outcome r = dfs_max_coverage(b + 1);
            if (r == Outcome::Abort) return r;
            undo();
        }
        skipped_[b] = 1;
        Outcome r = dfs_max_coverage(b + 1);
        skipped_[b] = 0;
        return r;
    }

    // Deterministic greedy cover to seed the max-coverage incumbent.
    void seed_incumbent() {
        std::size_t picks = 0;
        while (true) {
            std::size_t best_mi = inst_.mods.size();
            std::uint64_t best_cls = 0;
            std::int64_t best_gain = 0;
            for (std::size_t mi = 0; mi < inst_.mods.size(); ++mi) {
                if (inst_.remaining[mi] <= 0) continue;
                for (std::uint64_t c = 0; c < inst_.mods[mi]; ++c) {
                    if (class_uncovered_[mi][c] > best_gain) {
                        best_gain = class_uncovered_[mi][c];
                        best_mi = mi;
                        best_cls = c;
                    }
                }
            }
            if (best_mi == inst_.mods.size()) break;
            choose(best_mi, best_cls);
            ++picks;
        }
        best_covered_ = covered();
        best_chosen_ = chosen_;
        while (picks--) undo();
    }

    const SolveProblem& problem_;
    Instance inst_;
    std::vector<int> cover_depth_;
    std::vector<std::uint8_t> skipped_;
    std::vector<std::vector<std::int64_t>> class_uncovered_;
    std::vector<std::uint64_t> qs_;
    std::vector<std::vector<std::int64_t>> part_uncovered_;            // [qi][c]
    std::vector<std::vector<std::vector<std::int64_t>>> part_counts_;  // [qi][mi][idx]
    std::vector<std::vector<std::uint64_t>> part_key_;                 // [qi][mi]
    std::uint64_t uncovered_;
    std::vector<std::pair<std::size_t, std::uint64_t>> chosen_;
    std::uint64_t best_covered_ = 0;
    std::vector<std::pair<std::size_t, std::uint64_t>> best_chosen_;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
    Clock::time_point deadline_;
};

// Applies presets (consuming multiplicity) and, without user presets, pins
// the largest pure power of each prime among the moduli to class 0. Adding
// congruences never shrinks coverage, so any solution extends to one using
// all moduli; translating by a CRT-chosen shift then moves each of those
// pinned moduli (pairwise coprime) to class 0 simultaneously. This holds
// for both feasibility and coverage maximization.
std::string apply_presets(Search& search, const SolveProblem& problem, bool feasibility) {
    std::string note;
    for (const Congruence& preset : problem.presets) {
        std::uint64_t m = preset.modulus().value();
        auto it = std::find(search.inst_.mods.begin(), search.inst_.mods.end(), m);
        if (it == search.inst_.mods.end())
            throw InvalidProblemError("preset modulus " + std::to_string(m) +
                                      " is not among the problem moduli");
        std::size_t mi = static_cast<std::size_t>(it - search.inst_.mods.begin());
        if (search.inst_.remaining[mi] <= 0)
            throw InvalidProblemError("presets exceed the multiplicity of modulus " +
                                      std::to_string(m));
        search.choose(mi, preset.residue());
    }
    if (!problem.presets.empty()) {
        note = "verdict is conditional on the " + std::to_string(problem.presets.size()) +
               " preset class(es); infeasibility certifies only the preset-restricted search";
    } else if (problem.break_translation_symmetry) {
        for (std::uint64_t p : {2ull, 3ull, 5ull}) {
            std::size_t best = search.inst_.mods.size();
            for (std::size_t mi = 0; mi < search.inst_.mods.size(); ++mi) {
                std::uint64_t m = search.inst_.mods[mi];
                while (m % p == 0) m /= p;
                if (m == 1) best = mi;  // moduli are ascending
            }
            if (best != search.inst_.mods.size()) search.choose(best, 0);
        }
    }
    (void)feasibility;
    return note;
}

// Exact mixed-integer model of the max-coverage instance, solved with the
// bundled MILP engine. One binary x per (modulus, class); covered indicators
// y_b relax to [0,1] because maximization drives them to the right value.
struct MilpResult {
    bool optimal = false;
    std::uint64_t covered = 0;
    std::vector<std::pair<std::size_t, std::uint64_t>> chosen;  // (modulus index, class)
};

struct CoverageModel {
    HighsModel model;
    std::vector<HighsInt> xstart;
    HighsInt nx = 0;
};

CoverageModel build_coverage_model(const Instance& inst, const std::vector<int>& multiplicity,
                                   const std::vector<std::pair<std::size_t, std::uint64_t>>& fixed) {
    const auto L = static_cast<HighsInt>(inst.L);
    const std::size_t M = inst.mods.size();
    CoverageModel cm;
    std::vector<HighsInt>& xstart = cm.xstart;
    xstart.assign(M + 1, 0);
    for (std::size_t i = 0; i < M; ++i)
        xstart[i + 1] = xstart[i] + static_cast<HighsInt>(inst.mods[i]);
    const HighsInt nx = xstart[M];
    cm.nx = nx;

    HighsLp& lp = cm.model.lp_;
    lp.num_col_ = nx + L;
    lp.num_row_ = static_cast<HighsInt>(M) + L;
    lp.sense_ = ObjSense::kMaximize;
    lp.col_cost_.assign(lp.num_col_, 0.0);
    for (HighsInt b = 0; b < L; ++b) lp.col_cost_[nx + b] = 1.0;
    lp.col_lower_.assign(lp.num_col_, 0.0);
    lp.col_upper_.assign(lp.num_col_, 1.0);
    lp.integrality_.assign(lp.num_col_, HighsVarType::kContinuous);
    for (HighsInt j = 0; j < nx; ++j) lp.integrality_[j] = HighsVarType::kInteger;

    // Multiplicity rows; duplicate fixings sit on one variable, so they use
    // up quota without adding a second column.
    std::vector<double> row_upper(M);
    for (std::size_t i = 0; i < M; ++i) row_upper[i] = multiplicity[i];
    std::map<std::pair<std::size_t, std::uint64_t>, int> fix_count;
    for (const auto& f : fixed) {
        lp.col_lower_[xstart[f.first] + static_cast<HighsInt>(f.second)] = 1.0;
        if (++fix_count[f] > 1) row_upper[f.first] -= 1.0;
    }

    lp.row_lower_.assign(lp.num_row_, 0.0);
    lp.row_upper_.assign(lp.num_row_, kHighsInf);
    for (std::size_t i = 0; i < M; ++i) {
        lp.row_lower_[i] = -kHighsInf;
        lp.row_upper_[i] = row_upper[i];
    }
    lp.a_matrix_.format_ = MatrixFormat::kRowwise;
    auto& start = lp.a_matrix_.start_;
    auto& index = lp.a_matrix_.index_;
    auto& value = lp.a_matrix_.value_;
    start.assign(1, 0);
    for (std::size_t i = 0; i < M; ++i) {
        for (HighsInt j = 0; j < static_cast<HighsInt>(inst.mods[i]); ++j) {
            index.push_back(xstart[i] + j);
            value.push_back(1.0);
        }
        start.push_back(static_cast<HighsInt>(index.size()));
    }
    for (HighsInt b = 0; b < L; ++b) {
        for (std::size_t i = 0; i < M; ++i) {
            index.push_back(xstart[i] + static_cast<HighsInt>(b % static_cast<HighsInt>(inst.mods[i])));
            value.push_back(1.0);
        }
        index.push_back(nx + b);
        value.push_back(-1.0);
        start.push_back(static_cast<HighsInt>(index.size()));
    }
    return cm;
}

void set_milp_options(Highs& highs, double time_limit_seconds) {
    highs.setOptionValue("output_flag", false);
    highs.setOptionValue("threads", 1);
    highs.setOptionValue("mip_rel_gap", 0.0);
    highs.setOptionValue("mip_abs_gap", 0.0);
    highs.setOptionValue("time_limit", std::max(time_limit_seconds, 1.0));
}

std::vector<std::pair<std::size_t, std::uint64_t>> extract_chosen(
    const Instance& inst, const std::vector<HighsInt>& xstart, const std::vector<double>& col) {
    std::vector<std::pair<std::size_t, std::uint64_t>> chosen;
    for (std::size_t i = 0; i < inst.mods.size(); ++i)
        for (HighsInt j = 0; j < static_cast<HighsInt>(inst.mods[i]); ++j)
            if (col[xstart[i] + j] > 0.5) chosen.emplace_back(i, static_cast<std::uint64_t>(j));
    return chosen;
}

MilpResult milp_max_coverage(const Instance& inst, const std::vector<int>& multiplicity,
                             const std::vector<std::pair<std::size_t, std::uint64_t>>& fixed,
                             double time_limit_seconds) {
    CoverageModel cm = build_coverage_model(inst, multiplicity, fixed);
    Highs highs;
    set_milp_options(highs, time_limit_seconds);
    MilpResult result;
    if (highs.passModel(std::move(cm.model)) != HighsStatus::kOk) return result;
    highs.run();
    if (highs.getModelStatus() != HighsModelStatus::kOptimal) return result;
    result.optimal = true;
    result.covered = static_cast<std::uint64_t>(
        std::llround(highs.getInfo().objective_function_value));
    result.chosen = extract_chosen(inst, cm.xstart, highs.getSolution().col_value);
    return result;
}

// Feasibility decided through the coverage objective: the same model as
// milp_max_coverage, interrupted as soon as the dual bound certifies that
// full coverage is impossible. A branch-and-bound tree with no objective
// must be exhausted outright, whereas the bound on maximum coverage often
// drops below L long before the tree is done, so this settles instances
// the plain all-rows-covered formulation cannot within the same budget.
// Verdict semantics: Infeasible is a proof (subject to any caller fixings),
// Feasible carries a class assignment, Unknown means the time limit struck.
struct MilpFeasResult {
    enum class Status { Unknown, Infeasible, Feasible } status = Status::Unknown;
    std::vector<std::pair<std::size_t, std::uint64_t>> chosen;
};

MilpFeasResult milp_feasibility(const Instance& inst, const std::vector<int>& multiplicity,
                                const std::vector<std::pair<std::size_t, std::uint64_t>>& fixed,
                                double time_limit_seconds) {
    CoverageModel cm = build_coverage_model(inst, multiplicity, fixed);
    Highs highs;
    set_milp_options(highs, time_limit_seconds);
    double threshold = static_cast<double>(inst.L) - 0.5;
    highs.setCallback(
        [](int, const char*, const HighsCallbackDataOut* out, HighsCallbackDataIn* in,
           void* user) {
            if (out->mip_dual_bound < *static_cast<double*>(user)) in->user_interrupt = 1;
        },
        &threshold);
    highs.startCallback(kCallbackMipInterrupt);
    MilpFeasResult result;
    if (highs.passModel(std::move(cm.model)) != HighsStatus::kOk) return result;
    highs.run();
    const double dual = highs.getInfo().mip_dual_bound;
    if (highs.getModelStatus() == HighsModelStatus::kOptimal) {
        auto covered = static_cast<std::uint64_t>(
            std::llround(highs.getInfo().objective_function_value));
        if (covered == inst.L) {
            result.status = MilpFeasResult::Status::Feasible;
            result.chosen = extract_chosen(inst, cm.xstart, highs.getSolution().col_value);
        } else {
            result.status = MilpFeasResult::Status::Infeasible;
        }
    } else if (dual < threshold) {
        result.status = MilpFeasResult::Status::Infeasible;
    }
    return result;
}

SolveVerdict finish(Search& search, SolveVerdict verdict, Clock::time_point t0) {
    verdict.nodes_explored = search.nodes_;
    verdict.wall_time = Clock::now() - t0;
    return verdict;
}

}  // namespace

SolveProblem SolveProblem::divisors(const FactoredInteger& L, std::uint64_t min_modulus,
                                    SolveMode mode, const Exclusions& exclude) {
    SolveProblem p;
    p.L = L;
    p.mode = mode;
    ModulusFamily family = ModulusFamily::divisors(L, min_modulus, exclude);
    for (std::uint64_t m : family.moduli()) p.moduli.emplace_back(m, 1);
    return p;
}

SolveVerdict solve_feasibility(const SolveProblem& problem) {
    if (problem.mode != SolveMode::Feasibility)
        throw InvalidProblemError("solve_feasibility requires Feasibility mode");
    auto t0 = Clock::now();
    Search search(problem, prepare(problem));
    SolveVerdict verdict;
    verdict.note = apply_presets(search, problem, true);

    bool all_single = true;
    for (auto [m, f] : problem.moduli) all_single = all_single && f == 1;
    if (problem.density_preprune && all_single) {
        std::vector<std::uint64_t> family;
        for (auto [m, f] : problem.moduli) family.push_back(m);
        BoundBreakdown bound = ie3_bound(ModulusFamily(std::move(family)));
        if (bound.conclusive()) {
            verdict.status = SolveStatus::InfeasibleExhausted;
            if (!verdict.note.empty()) verdict.note += "; ";
            verdict.note += "density bound " + to_string(bound.final_bound) +
                           " < 1: no system over these moduli covers the integers";
            return finish(search, std::move(verdict), t0);
        }
    }

    if (problem.density_preprune) {
        // Give the distribution certificate up to half the budget; a negative
        // answer is a proof (it applies to the unrestricted moduli multiset,
        // so it also rules out any preset-restricted variant).
        std::vector<std::uint64_t> multiset;
        for (auto [m, f] : problem.moduli)
            for (int k = 0; k < f; ++k) multiset.push_back(m);
        auto slice = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::min(problem.time_budget / 4, std::chrono::milliseconds(120000)));
        DistributionRelaxation relax(Clock::now() + slice);
        auto answer = relax.run(problem.L.value(), std::move(multiset));
        search.nodes_ += relax.nodes();
        if (answer == DistributionRelaxation::Answer::Infeasible) {
            verdict.status = SolveStatus::InfeasibleExhausted;
            if (!verdict.note.empty()) verdict.note += "; ";
            verdict.note +=
                "infeasible: exhausted all prime-power class distributions of the moduli";
            return finish(search, std::move(verdict), t0);
        }
    }

    // Integer-programming pass with the bulk of the remaining budget; the
    // depth-first search mops up only if the model hits its time limit.
    {
        double remaining = std::chrono::duration<double>(
                               problem.time_budget - (Clock::now() - t0)).count();
        if (remaining > 0.05 && search.nodes_ <= problem.node_budget) {
            Instance fresh = prepare(problem);
            MilpFeasResult milp =
                milp_feasibility(fresh, fresh.remaining, search.chosen_, remaining);
            if (milp.status == MilpFeasResult::Status::Infeasible) {
                verdict.status = SolveStatus::InfeasibleExhausted;
                if (!verdict.note.empty()) verdict.note += "; ";
                verdict.note +=
                    "infeasible: the integer program bounds maximum coverage below the lcm";
                return finish(search, std::move(verdict), t0);
            }
            if (milp.status == MilpFeasResult::Status::Feasible) {
                CongruenceSystem witness(search.congruences_of(milp.chosen));
                if (!uncovered_set(witness, problem.L).is_covering)
                    throw Error("internal error: feasibility witness failed re-verification");
                verdict.status = SolveStatus::Feasible;
                verdict.witness = std::move(witness);
                return finish(search, std::move(verdict), t0);
            }
        }
    }

    Search::Outcome r = search.dfs_feasibility(0);
    if (r == Search::Outcome::Abort) {
        verdict.status = SolveStatus::BudgetExceeded;
    } else if (r == Search::Outcome::Found) {
        CongruenceSystem witness(search.congruences_of(search.chosen_));
        if (!uncovered_set(witness, problem.L).is_covering)
            throw Error("internal error: feasibility witness failed re-verification");
        verdict.status = SolveStatus::Feasible;
        verdict.witness = std::move(witness);
    } else {
        verdict.status = SolveStatus::InfeasibleExhausted;
    }
    return finish(search, std::move(verdict), t0);
}

SolveVerdict solve_max_coverage(const SolveProblem& problem) {
    if (problem.mode != SolveMode::MaxCoverage)
        throw InvalidProblemError("solve_max_coverage requires MaxCoverage mode");
    auto t0 = Clock::now();
    Search search(problem, prepare(problem));
    SolveVerdict verdict;
    verdict.note = apply_presets(search, problem, false);

    search.seed_incumbent();

    // Root upper-bound certificate: when the relaxed class-distribution bound
    // meets the greedy incumbent, the incumbent is optimal outright.
    bool proved_at_root = false;
    if (problem.density_preprune) {
        std::vector<std::uint64_t> multiset;
        for (auto [m, f] : problem.moduli)
            for (int k = 0; k < f; ++k) multiset.push_back(m);
        auto slice = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::min(problem.time_budget / 8, std::chrono::milliseconds(60000)));
        MaxCoverageRelaxation relax(Clock::now() + slice);
        std::optional<std::uint64_t> ub = relax.run(problem.L.value(), std::move(multiset));
        search.nodes_ += relax.nodes();
        proved_at_root = ub && *ub == search.best_covered_;
        if (proved_at_root) {
            if (!verdict.note.empty()) verdict.note += "; ";
            verdict.note += "distribution bound matches the greedy incumbent exactly";
        }
    }

    Search::Outcome r = Search::Outcome::Exhausted;
    // The MILP engine is wall-time bounded, not node bounded; leave it out
    // when the caller's budgets cannot accommodate a run of its own.
    double remaining = std::chrono::duration<double>(
                           problem.time_budget - (Clock::now() - t0)).count();
    bool budget_left = remaining > 0.05 && search.nodes_ <= problem.node_budget;
    if (!proved_at_root && budget_left) {
        Instance fresh = prepare(problem);  // remaining == original multiplicities
        MilpResult milp = milp_max_coverage(fresh, fresh.remaining, search.chosen_, remaining);
        if (milp.optimal) {
            CongruenceSystem witness(search.congruences_of(milp.chosen));
            std::uint64_t recheck = uncovered_set(witness, problem.L).covered_count;
            if (recheck != milp.covered)
                throw Error("internal error: max-coverage witness failed re-verification");
            verdict.status = SolveStatus::Optimal;
            verdict.covered = milp.covered;
            verdict.witness = std::move(witness);
            return finish(search, std::move(verdict), t0);
        }
    }
    if (!proved_at_root) r = search.dfs_max_coverage(0);

    CongruenceSystem witness(search.congruences_of(search.best_chosen_));
    std::uint64_t recheck = uncovered_set(witness, problem.L).covered_count;
    if (recheck < search.best_covered_)
        throw Error("internal error: max-coverage witness failed re-verification");
    verdict.status = r == Search::Outcome::Abort ? SolveStatus::BudgetExceeded
                                                 : SolveStatus::Optimal;
    verdict.covered = search.best_covered_;
    verdict.witness = std::move(witness);
    return finish(search, std::move(verdict), t0);
}

SolveVerdict brute_force_oracle(const SolveProblem& problem) {
    auto t0 = Clock::now();
    Instance inst = prepare(problem);

    // Expand the multiset and bolt presets onto the first free slots.
    std::vector<std::uint64_t> slots;
    std::vector<std::optional<std::uint64_t>> fixed;
    long double product = 1;
    for (std::size_t i = 0; i < inst.mods.size(); ++i)
        for (int k = 0; k < inst.remaining[i]; ++k) {
            slots.push_back(inst.mods[i]);
            fixed.emplace_back();
            product *= static_cast<long double>(inst.mods[i]);
        }
    if (product > 1e7) throw TooLargeForOracleError("modulus product exceeds 10^7");
    for (const Congruence& preset : problem.presets) {
        bool placed = false;
        for (std::size_t s = 0; s < slots.size() && !placed; ++s)
            if (slots[s] == preset.modulus().value() && !fixed[s]) {
                fixed[s] = preset.residue();
                placed = true;
            }
        if (!placed)
            throw InvalidProblemError("preset violates multiplicity of modulus " +
                                      std::to_string(preset.modulus().value()));
    }

    const std::uint64_t L = inst.L;
    std::vector<int> depth(L, 0);
    std::uint64_t uncovered = L;
    std::vector<std::uint64_t> classes(slots.size(), 0);
    std::uint64_t best = 0;
    std::vector<std::uint64_t> best_classes;
    bool found = false;
    std::vector<std::uint64_t> found_classes;
    std::uint64_t leaves = 0;

    auto mark = [&](std::size_t s, std::uint64_t cls, int dir) {
        for (std::uint64_t x = cls; x < L; x += slots[s]) {
            if (dir > 0 && depth[x]++ == 0) --uncovered;
            if (dir < 0 && --depth[x] == 0) ++uncovered;
        }
    };

    auto recurse = [&](auto&& self, std::size_t s) -> void {
        if (found) return;
        if (s == slots.size()) {
            ++leaves;
            if (problem.mode == SolveMode::Feasibility) {
                if (uncovered == 0) {
                    found = true;
                    found_classes = classes;
                }
            } else if (L - uncovered > best) {
                best = L - uncovered;
                best_classes = classes;
            }
            return;
        }
        std::uint64_t lo = fixed[s] ? *fixed[s] : 0;
        std::uint64_t hi = fixed[s] ? *fixed[s] + 1 : slots[s];
        for (std::uint64_t cls = lo; cls < hi; ++cls) {
            classes[s] = cls;
            mark(s, cls, +1);
            self(self, s + 1);
            mark(s, cls, -1);
            if (found) return;
        }
    };
    recurse(recurse, 0);

    auto witness_of = [&](const std::vector<std::uint64_t>& cls) {
        std::vector<Congruence> cs;
        for (std::size_t s = 0; s < slots.size(); ++s)
            cs.emplace_back(static_cast<std::int64_t>(cls[s]), factor_smooth(slots[s]));
        return CongruenceSystem(std::move(cs));
    };

    SolveVerdict verdict;
    verdict.nodes_explored = leaves;
    if (problem.mode == SolveMode::Feasibility) {
        verdict.status = found ? SolveStatus::Feasible : SolveStatus::InfeasibleExhausted;
        if (found) verdict.witness = witness_of(found_classes);
    } else {
        verdict.status = SolveStatus::Optimal;
        verdict.covered = best;
        verdict.witness = witness_of(best_classes);
    }
    verdict.wall_time = Clock::now() - t0;
    return verdict;
}

std::string export_lp(const SolveProblem& problem) {
    Instance inst = prepare(problem);
    const bool maxcover = problem.mode == SolveMode::MaxCoverage;
    const std::uint64_t L = inst.L;
    const auto& mods = inst.mods;

    std::ostringstream out;
    out << "\\ covering " << (maxcover ? "max-coverage" : "feasibility") << " model, L = " << L
        << ", " << mods.size() << " moduli\n";

    auto emit_terms = [&out](const std::vector<std::string>& terms, const std::string& tail) {
        std::size_t width = 0;
        for (std::size_t t = 0; t < terms.size(); ++t) {
            std::string piece = (t == 0 ? " " : " + ") + terms[t];
            if (width + piece.size() > 200) {
                out << "\n";
                width = 0;
            }
            out << piece;
            width += piece.size();
        }
        out << " " << tail << "\n";
    };

    out << "Maximize\n obj:";
    if (maxcover) {
        std::vector<std::string> terms;
        for (std::uint64_t b = 1; b <= L; ++b) terms.push_back("y_" + std::to_string(b));
        out << "\n";
        emit_terms(terms, "");
    } else {
        out << "\n";
    }

    out << "Subject To\n";
    for (std::size_t i = 0; i < mods.size(); ++i) {
        std::vector<std::string> terms;
        for (std::uint64_t j = 1; j <= mods[i]; ++j)
            terms.push_back("x_" + std::to_string(i + 1) + "_" + std::to_string(j));
        out << " mult_" << i + 1 << ":";
        emit_terms(terms, "<= " + std::to_string(inst.remaining[i]));
    }
    for (std::uint64_t b = 1; b <= L; ++b) {
        std::vector<std::string> terms;
        for (std::size_t i = 0; i < mods.size(); ++i) {
            std::uint64_t j = (b - 1) % mods[i] + 1;
            terms.push_back("x_" + std::to_string(i + 1) + "_" + std::to_string(j));
        }
        out << " cover_" << b << ":";
        emit_terms(terms, maxcover ? "- y_" + std::to_string(b) + " >= 0" : ">= 1");
    }

    out << "Bounds\n";
    for (const Congruence& preset : problem.presets) {
        auto it = std::find(mods.begin(), mods.end(), preset.modulus().value());
        if (it == mods.end())
            throw InvalidProblemError("preset modulus " +
                                      std::to_string(preset.modulus().value()) +
                                      " is not among the problem moduli");
        std::size_t i = static_cast<std::size_t>(it - mods.begin()) + 1;
        std::uint64_t j = preset.residue() == 0 ? preset.modulus().value() : preset.residue();
        out << " x_" << i << "_" << j << " = 1\n";
    }

    out << "Binary\n";
    for (std::size_t i = 0; i < mods.size(); ++i)
        for (std::uint64_t j = 1; j <= mods[i]; ++j)
            out << " x_" << i + 1 << "_" << j << "\n";
    if (maxcover)
        for (std::uint64_t b = 1; b <= L; ++b) out << " y_" << b << "\n";
    out << "End\n";
    return out.str();
}

}  // namespace covering
