// Boolean-constraint verification: encodes strategy-proofness plus range
// demands over a domain as CNF (one variable per profile/alternative pair),
// enumerates all satisfying rules with a deterministic backtracking solver,
// and answers the decisiveness and range queries used by the verification
// commands. Every solver answer is re-validated by the rules module.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "npsp/core.hpp"
#include "npsp/rules.hpp"

namespace npsp {

// Variable var(p, a) ("the rule selects a at p") is p*m + a + 1; literals are
// signed DIMACS-style integers.
struct constraint_model {
    domain_ptr dom;
    int var_count = 0;
    bool sp_encoded = false;
    bool full_range = false;
    std::vector<std::vector<int>> clauses;

    int var(std::uint32_t profile_index, alt_id a) const {
        return static_cast<int>(profile_index) * dom->spec().m + a + 1;
    }
    void add_clause(std::vector<int> lits);
    void add_unit(int lit) { add_clause({lit}); }
};

// Exactly-one per profile (one at-least-one clause plus pairwise
// at-most-one); for each ordered h-variant pair (p,q) and each alternative
// pair with b above a in p(h), the clause !x[p,a] | !x[q,b]; optionally an
// at-least-one clause per alternative over the whole domain.
constraint_model build_sp_model(domain_ptr dom, bool full_range, const limits& lim = {});

enum class solve_status { sat, unsat, capped };

struct solve_stats {
    std::uint64_t decisions = 0;
    std::uint64_t propagations = 0;
    double seconds = 0.0;
};

struct solve_result {
    solve_status status = solve_status::unsat;
    std::vector<rule> solutions;
    solve_stats stats;
};

// All solutions up to cap, in lexicographic rule-table order (lowest-index
// variable first, true branch first, blocking clauses between models). Each
// returned rule is re-checked against the clauses directly and, for SP
// models, against find_manipulation and the range demand.
solve_result enumerate_solutions(const constraint_model& model, int cap,
                                 const limits& lim = {});

struct census_report {
    int expected = 0;                 // one dictatorship per individual
    solve_status status = solve_status::unsat;
    std::vector<int> dictators;       // matched dictator per solution, 0 if none
    bool all_dictatorial = false;
    bool pass = false;
    solve_stats stats;
};

// Enumerates every full-range strategy-proof rule on NP(spec) and checks the
// solution set is exactly the n dictator tables.
census_report verify_dictatorship(const domain_spec& spec, int cap = 64,
                                  const limits& lim = {});

// Seed: alternative alpha chosen at voting-paradox profile u where alpha is
// top and beta bottom for some individual j. Target: beta chosen at v where
// j still ranks alpha above beta. UNSAT means no full-range strategy-proof
// rule admits both, confirming decisiveness.
solve_status decisiveness_query(const domain_ptr& np, const profile& u, alt_id alpha,
                                const profile& v, alt_id beta, const limits& lim = {});

struct sweep_counterexample {
    profile seed_profile;
    alt_id alpha = 0;
    profile target_profile;
    alt_id beta = 0;
};

struct sweep_report {
    std::uint64_t queries = 0;
    std::uint64_t unsat = 0;
    std::optional<sweep_counterexample> first_sat;
    bool pass() const { return queries > 0 && unsat == queries; }
};

// Runs decisiveness_query for every hypothesis tuple over the given domains.
sweep_report decisive_sweep(const domain_ptr& np, const domain& vp, const limits& lim = {});

// SP + full range + "never pick `excluded` on any voting-paradox profile".
// UNSAT means a full-range strategy-proof rule cannot avoid `excluded` on VP.
solve_status vp_range_check(const domain_ptr& np, alt_id excluded, const limits& lim = {});

struct dimacs_entry {
    std::string profile_text;
    char label = 0;
    int variable = 0;
};

// Standard DIMACS CNF; returns the (profile, alternative) -> variable map.
std::vector<dimacs_entry> export_dimacs(const constraint_model& model, std::ostream& out);

}  // namespace npsp
