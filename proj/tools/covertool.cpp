// covertool: command-line front end for the covering-systems library.
//
// Exit codes: 0 success, 1 negative mathematical verdict (a system that does
// not cover, an infeasible instance, a failed catalog check), 2 usage or
// parse errors.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "covering/bounds.hpp"
#include "covering/catalog.hpp"
#include "covering/errors.hpp"
#include "covering/notation.hpp"
#include "covering/solver.hpp"
#include "covering/verifier.hpp"

namespace {

using covering::Congruence;
using covering::FactoredInteger;
using covering::Rational;
using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

// ---------------------------------------------------------------------------
// Output envelope: every subcommand fills one of these; main() renders it as
// text or as a single JSON document and maps the verdict to the exit code.

struct Envelope {
    std::string command;
    std::vector<std::string> lines;   // human-readable payload
    json result = json::object();     // machine-readable payload
    std::vector<std::string> warnings;
    bool negative_verdict = false;    // exit 1 instead of 0
};

std::string q_str(const Rational& q) { return covering::to_string(q); }

// ---------------------------------------------------------------------------
// Shared argument parsing helpers.

// Dot-separated prime powers, e.g. "2^4.3^2.5"; a bare 5-smooth integer is
// also accepted.
FactoredInteger parse_divisor_spec(const std::string& spec) {
    unsigned a = 0, b = 0, c = 0;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, '.')) {
        if (tok.empty()) throw covering::SyntaxError("empty factor in '" + spec + "'");
        unsigned long p = 0, e = 1;
        std::size_t caret = tok.find('^');
        try {
            p = std::stoul(tok.substr(0, caret));
            if (caret != std::string::npos) e = std::stoul(tok.substr(caret + 1));
        } catch (const std::exception&) {
            throw covering::SyntaxError("bad factor '" + tok + "' in '" + spec + "'");
        }
        switch (p) {
            case 2: a += e; break;
            case 3: b += e; break;
            case 5: c += e; break;
            default: {
                // Allow a bare integer like "360" as the whole token.
                FactoredInteger f = covering::factor_smooth(p);
                a += f.a() * e;
                b += f.b() * e;
                c += f.c() * e;
            }
        }
    }
    return FactoredInteger::from_exponents(a, b, c);
}

covering::Exclusions parse_exclusions(const std::string& list, std::uint64_t multiples) {
    covering::Exclusions ex;
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        ex.moduli.push_back(std::stoull(tok));
    }
    if (multiples) ex.multiples_of = multiples;
    return ex;
}

// Comma-separated congruence tokens, each "r mod n".
std::vector<Congruence> parse_presets(const std::string& list) {
    std::vector<Congruence> presets;
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::stringstream ts(tok);
        std::int64_t r;
        std::string kw;
        std::uint64_t n;
        if (!(ts >> r >> kw >> n) || kw != "mod")
            throw covering::SyntaxError("bad preset '" + tok + "', expected 'r mod n'");
        presets.emplace_back(r, covering::factor_smooth(n));
    }
    return presets;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw covering::Error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// ---------------------------------------------------------------------------
// Rendering helpers.

json congruence_json(const Congruence& c, const covering::NotationContext& ctx) {
    return json{{"residue", c.residue()},
                {"modulus", c.modulus().value()},
                {"notation", covering::format_congruence(c, ctx)}};
}

void append_system_lines(Envelope& env, const std::vector<Congruence>& congruences,
                         const covering::NotationContext& ctx) {
    json arr = json::array();
    for (const Congruence& c : congruences) {
        env.lines.push_back("  " + std::to_string(c.residue()) + " mod " +
                            std::to_string(c.modulus().value()) + "  " +
                            covering::format_congruence(c, ctx));
        arr.push_back(congruence_json(c, ctx));
    }
    env.result["congruences"] = std::move(arr);
}

void append_bound_breakdown(Envelope& env, const covering::BoundBreakdown& b) {
    env.lines.push_back("singles    = " + q_str(b.single_sum));
    env.lines.push_back("pairs      = " + q_str(b.coprime_pair_sum));
    env.lines.push_back("triples    = " + q_str(b.coprime_triple_sum));
    if (b.refinement != 0) {
        env.lines.push_back("raw bound  = " + q_str(b.bound));
        env.lines.push_back("refinement = " + q_str(b.refinement));
    }
    if (b.conclusive())
        env.lines.push_back("bound = " + q_str(b.final_bound) +
                            " < 1: no distinct covering exists");
    else
        env.lines.push_back("bound = " + q_str(b.final_bound) + " >= 1: inconclusive");
    env.result["single_sum"] = q_str(b.single_sum);
    env.result["coprime_pair_sum"] = q_str(b.coprime_pair_sum);
    env.result["coprime_triple_sum"] = q_str(b.coprime_triple_sum);
    env.result["bound"] = q_str(b.bound);
    env.result["refinement"] = q_str(b.refinement);
    env.result["final_bound"] = q_str(b.final_bound);
    env.result["conclusive"] = b.conclusive();
    env.negative_verdict = b.conclusive();
}

// ---------------------------------------------------------------------------
// Options shared by solve / maxcover / export-lp / bound.

struct ProblemOpts {
    std::string divisors;
    std::string file;
    std::uint64_t min_modulus = 0;
    bool min_given = false;
    std::string exclude;
    std::uint64_t exclude_multiples = 0;
    std::string presets;
    double time_seconds = 600.0;
    std::uint64_t nodes = 1'000'000'000;
    bool reproducible = false;
    unsigned threads = 1;
};

void add_family_flags(CLI::App* cmd, ProblemOpts& o, bool with_file) {
    auto* d = cmd->add_option("--divisors", o.divisors,
                              "modulus family: all divisors of this 2^a.3^b.5^c value");
    auto* m = cmd->add_option("--min", o.min_modulus, "smallest allowed modulus");
    m->each([&o](const std::string&) { o.min_given = true; });
    cmd->add_option("--exclude", o.exclude, "comma-separated moduli to exclude");
    cmd->add_option("--exclude-multiples", o.exclude_multiples,
                    "exclude every multiple of this modulus");
    m->needs(d);
    if (with_file) {
        auto* f = cmd->add_option("--file", o.file, "take the moduli from a system file");
        d->excludes(f);
        f->excludes(d);
    } else {
        d->required();
    }
}

void add_solver_flags(CLI::App* cmd, ProblemOpts& o) {
    cmd->add_option("--presets", o.presets, "fixed congruences, e.g. '1 mod 2,0 mod 3'");
    cmd->add_option("--time", o.time_seconds, "time budget in seconds");
    cmd->add_option("--nodes", o.nodes, "search-node budget");
    cmd->add_flag("--reproducible", o.reproducible,
                  "byte-identical output across runs (forces sequential search)");
    cmd->add_option("--threads", o.threads, "worker threads (reproducible mode forces 1)");
}

// Builds the modulus list either from a divisor family or from a file, and
// flags the implicit minimum-modulus assumption when --min was not given.
covering::SolveProblem build_problem(const ProblemOpts& o, covering::SolveMode mode,
                                     Envelope& env, std::uint64_t default_min) {
    covering::Exclusions ex = parse_exclusions(o.exclude, o.exclude_multiples);
    covering::SolveProblem problem;
    if (!o.file.empty()) {
        covering::SystemDocument doc = covering::parse_system_file(read_file(o.file));
        covering::CongruenceSystem sys = doc.system();
        problem.L = sys.lcm();
        for (const auto& [m, f] : sys.multiplicities())
            if (!ex.excludes(m)) problem.moduli.emplace_back(m, f);
        problem.mode = mode;
    } else {
        std::uint64_t min = o.min_given ? o.min_modulus : default_min;
        if (!o.min_given) {
            env.warnings.push_back("no --min given: assumed minimum modulus " +
                                   std::to_string(min));
        }
        problem = covering::SolveProblem::divisors(parse_divisor_spec(o.divisors), min,
                                                   mode, ex);
        env.result["min_modulus"] = min;
    }
    if (!o.presets.empty()) problem.presets = parse_presets(o.presets);
    problem.time_budget = std::chrono::milliseconds(
        static_cast<std::int64_t>(o.time_seconds * 1000.0));
    problem.node_budget = o.nodes;
    problem.reproducible = o.reproducible;
    return problem;
}

std::uint64_t assumed_min(const ProblemOpts& o, std::uint64_t default_min) {
    return o.min_given ? o.min_modulus : default_min;
}

void report_verdict(Envelope& env, const covering::SolveVerdict& v,
                    const FactoredInteger& L) {
    env.result["nodes_explored"] = v.nodes_explored;
    env.result["wall_time_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(v.wall_time).count();
    if (!v.note.empty()) env.result["note"] = v.note;
    covering::NotationContext ctx = covering::NotationContext::of(L);
    switch (v.status) {
        case covering::SolveStatus::Feasible:
            env.result["status"] = "feasible";
            env.lines.push_back("feasible: a distinct covering over these moduli exists");
            if (!v.note.empty()) env.warnings.push_back(v.note);
            if (v.witness) append_system_lines(env, v.witness->congruences(), ctx);
            break;
        case covering::SolveStatus::InfeasibleExhausted:
            env.result["status"] = "infeasible";
            env.lines.push_back("infeasible: no distinct covering over these moduli" +
                                (v.note.empty() ? "" : " (" + v.note + ")"));
            if (!v.note.empty()) env.warnings.push_back(v.note);
            env.negative_verdict = true;
            break;
        case covering::SolveStatus::Optimal:
            env.result["status"] = "optimal";
            break;
        case covering::SolveStatus::BudgetExceeded:
            env.result["status"] = "budget-exceeded";
            env.lines.push_back("budget exceeded after " +
                                std::to_string(v.nodes_explored) +
                                " nodes: verdict unknown");
            env.warnings.push_back("search budget exceeded; no verdict");
            break;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"covertool: construct, verify, and refute distinct covering systems\n"
                 "of the integers whose moduli are of the form 2^a 3^b 5^c"};
    app.require_subcommand(1);
    app.fallthrough();  // lets --json appear after the subcommand too
    bool json_out = false;
    app.add_flag("--json", json_out, "emit one JSON document instead of text");

    // --- verify ----------------------------------------------------------
    std::string verify_file;
    auto* cmd_verify = app.add_subcommand("verify", "check a system file's claims");
    cmd_verify->add_option("file", verify_file, "system file")->required();

    // --- uncovered -------------------------------------------------------
    std::string unc_file;
    bool unc_notation = false;
    std::uint64_t unc_max = 100;
    auto* cmd_unc = app.add_subcommand("uncovered", "list the integers a system misses");
    cmd_unc->add_option("file", unc_file, "system file")->required();
    cmd_unc->add_flag("--notation", unc_notation, "print residues as (k|l|m) tokens mod L");
    cmd_unc->add_option("--max", unc_max, "list at most this many residues");

    // --- bound -----------------------------------------------------------
    ProblemOpts bound_opts;
    auto* cmd_bound = app.add_subcommand(
        "bound", "inclusion-exclusion density bound for a modulus family");
    add_family_flags(cmd_bound, bound_opts, /*with_file=*/true);

    // --- lemma51 ---------------------------------------------------------
    unsigned lemma_a = 4;
    auto* cmd_lemma = app.add_subcommand(
        "lemma51", "nonexistence certificate for min modulus 5 over divisors of 2^a*3*5");
    cmd_lemma->add_option("--a", lemma_a, "exponent of 2 (>= 4)")->required();

    // --- thm112 ----------------------------------------------------------
    auto* cmd_112 = app.add_subcommand(
        "thm112", "nonexistence certificate for min modulus 10 over all 5-smooth moduli");

    // --- solve -----------------------------------------------------------
    ProblemOpts solve_opts;
    auto* cmd_solve = app.add_subcommand("solve", "decide distinct-covering feasibility");
    add_family_flags(cmd_solve, solve_opts, /*with_file=*/true);
    add_solver_flags(cmd_solve, solve_opts);

    // --- maxcover --------------------------------------------------------
    ProblemOpts max_opts;
    max_opts.time_seconds = 600.0;
    auto* cmd_max = app.add_subcommand(
        "maxcover", "maximize the number of covered residues mod L");
    add_family_flags(cmd_max, max_opts, /*with_file=*/true);
    add_solver_flags(cmd_max, max_opts);

    // --- export-lp -------------------------------------------------------
    ProblemOpts lp_opts;
    std::string lp_out;
    bool lp_maxcover = false;
    auto* cmd_lp = app.add_subcommand("export-lp", "write the instance in LP file format");
    add_family_flags(cmd_lp, lp_opts, /*with_file=*/true);
    cmd_lp->add_option("--presets", lp_opts.presets, "fixed congruences, e.g. '1 mod 2'");
    cmd_lp->add_flag("--maxcover", lp_maxcover, "emit the max-coverage objective");
    cmd_lp->add_option("--out", lp_out, "output path")->required();

    // --- catalog ---------------------------------------------------------
    auto* cmd_cat = app.add_subcommand("catalog", "transcribed constructions");
    auto* cat_list = cmd_cat->add_subcommand("list", "list all entries");
    std::string cat_id;
    auto* cat_show = cmd_cat->add_subcommand("show", "print an entry's congruences");
    cat_show->add_option("id", cat_id, "entry id")->required();
    std::string check_id;
    bool check_all = false;
    auto* cat_check = cmd_cat->add_subcommand("check", "re-verify an entry's claims");
    cat_check->add_option("id", check_id, "entry id");
    cat_check->add_flag("--all", check_all, "check every transcribed entry");
    cmd_cat->require_subcommand(1);

    // --- tower -----------------------------------------------------------
    covering::TowerSpec tower_spec;
    auto* cmd_tower = app.add_subcommand(
        "tower", "the 2^a-ascending family of congruences filling r mod 2^(a-1)d");
    cmd_tower->add_option("--a", tower_spec.a, "starting exponent of 2 (>= 1)")->required();
    cmd_tower->add_option("--d", tower_spec.d, "odd 5-smooth cofactor")->required();
    cmd_tower->add_option("--r", tower_spec.r, "target residue")->required();
    cmd_tower->add_option("--depth", tower_spec.depth, "number of congruences")->required();

    // --- convert ---------------------------------------------------------
    std::string conv_file, conv_to;
    auto* cmd_conv = app.add_subcommand("convert", "rewrite a system file");
    cmd_conv->add_option("file", conv_file, "system file")->required();
    cmd_conv->add_option("--to", conv_to, "notation | plain")
        ->required()
        ->check(CLI::IsMember({"notation", "plain"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // --help exits 0; parse errors exit 2
    }

    Envelope env;
    Clock::time_point t0 = Clock::now();
    try {
        if (*cmd_verify) {
            env.command = "verify";
            covering::SystemDocument doc = covering::parse_system_file(read_file(verify_file));
            covering::ClaimReport report = covering::verify_claims(doc);
            covering::CongruenceSystem sys = doc.system();
            std::string head = std::string("covering: ") + (report.covering_ok ? "yes" : "no") +
                               ", m=" + std::to_string(sys.min_modulus()) +
                               ", M=" + std::to_string(sys.max_modulus()) +
                               ", L=" + std::to_string(sys.lcm().value());
            env.lines.push_back(head);
            for (const std::string& d : report.details) env.lines.push_back("  " + d);
            env.lines.push_back(report.pass() ? "all claims verified"
                                              : "claim verification FAILED");
            env.result = {{"covering", report.covering_ok},
                          {"m", sys.min_modulus()},
                          {"M", sys.max_modulus()},
                          {"L", sys.lcm().value()},
                          {"distinctness_ok", report.distinctness_ok},
                          {"min_modulus_ok", report.min_modulus_ok},
                          {"lcm_ok", report.lcm_ok},
                          {"exclusions_ok", report.exclusions_ok},
                          {"covering_ok", report.covering_ok},
                          {"details", report.details},
                          {"pass", report.pass()}};
            env.negative_verdict = !report.pass();
        } else if (*cmd_unc) {
            env.command = "uncovered";
            covering::SystemDocument doc = covering::parse_system_file(read_file(unc_file));
            covering::CongruenceSystem sys = doc.system();
            covering::CoverageResult cov =
                covering::uncovered_set(sys, std::nullopt, unc_max);
            env.lines.push_back("domain [0, " + std::to_string(cov.domain.value()) +
                                "): covered " + std::to_string(cov.covered_count) +
                                ", uncovered " + std::to_string(cov.uncovered_count) +
                                ", density " + q_str(cov.density));
            covering::NotationContext ctx = covering::NotationContext::of(cov.domain);
            json listed = json::array();
            for (std::uint64_t x : cov.uncovered) {
                Congruence c(static_cast<std::int64_t>(x), cov.domain);
                if (unc_notation)
                    env.lines.push_back("  " + covering::format_congruence(c, ctx));
                else
                    env.lines.push_back("  " + std::to_string(x));
                listed.push_back(unc_notation
                                     ? json(covering::format_congruence(c, ctx))
                                     : json(x));
            }
            if (cov.uncovered_count > cov.uncovered.size())
                env.lines.push_back("  ... (" +
                                    std::to_string(cov.uncovered_count - cov.uncovered.size()) +
                                    " more)");
            env.result = {{"domain", cov.domain.value()},
                          {"covered", cov.covered_count},
                          {"uncovered", cov.uncovered_count},
                          {"density", q_str(cov.density)},
                          {"is_covering", cov.is_covering},
                          {"listed", std::move(listed)}};
            env.negative_verdict = !cov.is_covering;
        } else if (*cmd_bound) {
            env.command = "bound";
            covering::ModulusFamily family = [&] {
                if (!bound_opts.file.empty()) {
                    covering::SystemDocument doc =
                        covering::parse_system_file(read_file(bound_opts.file));
                    std::vector<std::uint64_t> mods;
                    for (const auto& [m, f] : doc.system().multiplicities())
                        mods.push_back(m);
                    return covering::ModulusFamily(std::move(mods));
                }
                return covering::ModulusFamily::divisors(
                    parse_divisor_spec(bound_opts.divisors),
                    bound_opts.min_given ? bound_opts.min_modulus : 2,
                    parse_exclusions(bound_opts.exclude, bound_opts.exclude_multiples));
            }();
            env.lines.push_back("family: " + std::to_string(family.size()) + " moduli");
            env.result["moduli"] = family.moduli();
            append_bound_breakdown(env, covering::ie3_bound(family));
        } else if (*cmd_lemma) {
            env.command = "lemma51";
            env.result["a"] = lemma_a;
            append_bound_breakdown(env, covering::certificate_lemma51(lemma_a));
        } else if (*cmd_112) {
            env.command = "thm112";
            append_bound_breakdown(env, covering::certificate_thm112());
        } else if (*cmd_solve) {
            env.command = "solve";
            covering::SolveProblem problem =
                build_problem(solve_opts, covering::SolveMode::Feasibility, env, 2);
            covering::SolveVerdict v = covering::solve_feasibility(problem);
            report_verdict(env, v, problem.L);
        } else if (*cmd_max) {
            env.command = "maxcover";
            covering::SolveProblem problem =
                build_problem(max_opts, covering::SolveMode::MaxCoverage, env, 6);
            covering::SolveVerdict v = covering::solve_max_coverage(problem);
            report_verdict(env, v, problem.L);
            if (v.covered) {
                std::uint64_t L = problem.L.value();
                std::string line = "covered " + std::to_string(*v.covered) + " / " +
                                   std::to_string(L) + ", uncovered " +
                                   std::to_string(L - *v.covered);
                if (max_opts.file.empty())
                    line += " (assumed min modulus " +
                            std::to_string(assumed_min(max_opts, 6)) + ")";
                env.lines.insert(env.lines.begin(), line);
                env.result["covered"] = *v.covered;
                env.result["uncovered"] = L - *v.covered;
                if (v.witness)
                    append_system_lines(env, v.witness->congruences(),
                                        covering::NotationContext::of(problem.L));
            }
        } else if (*cmd_lp) {
            env.command = "export-lp";
            covering::SolveProblem problem = build_problem(
                lp_opts,
                lp_maxcover ? covering::SolveMode::MaxCoverage
                            : covering::SolveMode::Feasibility,
                env, lp_maxcover ? 6 : 2);
            std::string lp = covering::export_lp(problem);
            std::ofstream out(lp_out, std::ios::binary);
            if (!out) throw covering::Error("cannot write file: " + lp_out);
            out << lp;
            env.lines.push_back("wrote " + lp_out + " (" + std::to_string(lp.size()) +
                                " bytes, " + std::to_string(problem.moduli.size()) +
                                " moduli, L=" + std::to_string(problem.L.value()) + ")");
            env.result = {{"path", lp_out},
                          {"bytes", lp.size()},
                          {"moduli", problem.moduli.size()},
                          {"L", problem.L.value()}};
        } else if (*cmd_cat) {
            if (*cat_list) {
                env.command = "catalog list";
                json arr = json::array();
                for (const covering::CatalogEntry& e : covering::list_entries()) {
                    std::string line = e.id + "  m=" + std::to_string(e.claimed_m) +
                                       "  L=" + std::to_string(e.claimed_L.value()) + " (" +
                                       e.claimed_L.str() + ")";
                    if (!e.exclude.empty()) line += "  exclude " + e.exclude.str();
                    if (!e.transcribed) line += "  [claims only, not transcribed]";
                    if (!e.claims_covering) line += "  [truncation, not a covering]";
                    env.lines.push_back(line);
                    arr.push_back({{"id", e.id},
                                   {"m", e.claimed_m},
                                   {"L", e.claimed_L.value()},
                                   {"exclude", e.exclude.str()},
                                   {"transcribed", e.transcribed},
                                   {"claims_covering", e.claims_covering},
                                   {"source", e.source}});
                }
                env.result["entries"] = std::move(arr);
            } else if (*cat_show) {
                env.command = "catalog show";
                covering::SystemDocument doc = covering::load_entry(cat_id);
                std::stringstream ss(covering::format_system_file(doc, /*use_notation=*/true));
                std::string line;
                while (std::getline(ss, line)) env.lines.push_back(line);
                env.result = {{"id", cat_id},
                              {"L", doc.claimed_L.value()},
                              {"count", doc.congruences.size()},
                              {"text", covering::format_system_file(doc, true)}};
            } else {
                env.command = "catalog check";
                if (!check_all && check_id.empty())
                    throw CLI::ValidationError("catalog check", "need an id or --all");
                std::vector<covering::CatalogEntry> entries = covering::list_entries();
                bool all_ok = true;
                json arr = json::array();
                for (const covering::CatalogEntry& e : entries) {
                    if (!check_all && e.id != check_id) continue;
                    if (!e.transcribed) {
                        env.lines.push_back(e.id + ": skipped (claims only, no congruence list)");
                        arr.push_back({{"id", e.id}, {"skipped", true}});
                        continue;
                    }
                    covering::SystemDocument doc = covering::load_entry(e.id);
                    if (!e.claims_covering) {
                        // A truncation of an infinite system: report its density
                        // instead of holding it to a covering claim.
                        covering::CoverageResult cov =
                            covering::uncovered_set(doc.system());
                        env.lines.push_back(e.id + ": truncation, density " +
                                            q_str(cov.density) + " (no covering claim)");
                        arr.push_back({{"id", e.id},
                                       {"truncation", true},
                                       {"density", q_str(cov.density)}});
                        continue;
                    }
                    covering::ClaimReport rep = covering::verify_claims(doc);
                    all_ok = all_ok && rep.pass();
                    env.lines.push_back(e.id + ": " + (rep.pass() ? "ok" : "FAILED"));
                    if (!rep.pass())
                        for (const std::string& d : rep.details)
                            env.lines.push_back("    " + d);
                    arr.push_back({{"id", e.id}, {"pass", rep.pass()}, {"details", rep.details}});
                }
                if (arr.empty()) throw covering::UnknownIdError("unknown entry: " + check_id);
                env.result["checks"] = std::move(arr);
                env.result["pass"] = all_ok;
                env.negative_verdict = !all_ok;
            }
        } else if (*cmd_tower) {
            env.command = "tower";
            std::vector<Congruence> congruences = covering::tower(tower_spec);
            covering::CongruenceSystem sys(congruences);
            covering::NotationContext ctx = covering::NotationContext::of(sys.lcm());
            env.lines.push_back("tower 2^" + std::to_string(tower_spec.a) +
                                " ascending through d=" + std::to_string(tower_spec.d) +
                                ", r=" + std::to_string(tower_spec.r) + ", depth " +
                                std::to_string(tower_spec.depth) + ":");
            append_system_lines(env, congruences, ctx);
            covering::CoverageResult cov = covering::uncovered_set(sys);
            env.lines.push_back("density " + q_str(cov.density) + " of the integers; fills " +
                                std::to_string((tower_spec.r % static_cast<std::int64_t>(
                                                    (1u << (tower_spec.a - 1)) * tower_spec.d) +
                                                (1u << (tower_spec.a - 1)) * tower_spec.d) %
                                               ((1u << (tower_spec.a - 1)) * tower_spec.d)) +
                                " mod " +
                                std::to_string((1u << (tower_spec.a - 1)) * tower_spec.d) +
                                " in the limit");
            env.result["density"] = q_str(cov.density);
            env.result["L"] = sys.lcm().value();
        } else if (*cmd_conv) {
            env.command = "convert";
            covering::SystemDocument doc = covering::parse_system_file(read_file(conv_file));
            std::string text = covering::format_system_file(doc, conv_to == "notation");
            std::stringstream ss(text);
            std::string line;
            while (std::getline(ss, line)) env.lines.push_back(line);
            env.result["text"] = text;
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const covering::SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const covering::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    if (json_out) {
        json doc = {{"command", env.command},
                    {"result", env.result},
                    {"warnings", env.warnings},
                    {"wall_time_ms", elapsed},
                    {"exit_code", env.negative_verdict ? 1 : 0}};
        std::cout << doc.dump(2) << "\n";
    } else {
        for (const std::string& line : env.lines) std::cout << line << "\n";
        for (const std::string& w : env.warnings) std::cout << "warning: " << w << "\n";
    }
    return env.negative_verdict ? 1 : 0;
}
