// Induction-step constructions between domains: cloning one end individual
// (NP(n,3) <-> NP(n+1,3)), fusing a contiguous alternative pair
// (NP(n,m+1) -> NP(n,m)), and the property checks that go with them.

#pragma once

#include <optional>
#include <vector>

#include "npsp/core.hpp"
#include "npsp/rules.hpp"

namespace npsp {

enum class clone_end { first, last };

// Duplicates the first or last individual's ordering. The input must be an
// NP member; the result always is (duplication changes no unanimity).
profile clone_profile(const profile& p, clone_end which);

// Rule on NP(n,m) obtained by evaluating g at cloned profiles. g must be
// strategy-proof (verified here); the projection then is too.
rule project_clone(const rule& g, clone_end which, const limits& lim = {});

struct projection_conflict_report {
    bool hypothesis_failed = true;  // the impossible configuration never arose
    // populated when the hypothesis held: the anti-aligned probe profile and
    // g's value there, which cannot satisfy both projected dictators
    std::optional<profile> probe;
    std::optional<alt_id> outcome;
};

// The two clone projections of a strategy-proof full-range rule can never be
// dictated by the last and the first individual respectively; this check
// returns hypothesis_failed = true when the configuration does not arise,
// and otherwise exhibits the probe profile that contradicts it.
projection_conflict_report check_projection_conflict(const rule& g, const limits& lim = {});

// Fuses alternatives w and z of the big alphabet into a fresh alternative
// x_star. The small alphabet keeps X\{w,z} in order, with x_star at the slot
// of min(w,z).
struct merge_spec {
    alt_id w = 0;
    alt_id z = 0;
    char x_star_label = 0;
    domain_spec big_spec;
    domain_spec small_spec;
    alt_id x_star_small = 0;             // id of x_star in the small alphabet
    std::vector<alt_id> small_to_big;    // small id -> big id; x_star slot maps to w
    std::vector<int> big_to_small;       // big id -> small id; w and z map to x_star

    static merge_spec make(const domain_spec& big, alt_id w, alt_id z, char x_star_label);
};

// A representative r of p: w,z contiguous in every ordering at the x_star
// slot, everything else as in p. Orientation is fixed: individual 1 has w
// just above z, everyone else z just above w, so neither dominates the
// other. The result is always an NP member.
profile merge_representative(const profile& p, const merge_spec& ms);

// Every representative (each individual independently orients the pair),
// filtered to NP members: exactly 2^n - 2 of them.
std::vector<profile> merge_representatives_all(const profile& p, const merge_spec& ms);

// g*(p) = g(representative(p)), with outcomes in {w,z} collapsed to x_star.
// g must be strategy-proof (verified here); g* then is too.
rule project_merge(const rule& g, const merge_spec& ms, const limits& lim = {});

struct merge_witness {
    profile small_profile;
    profile rep_a;
    profile rep_b;
    alt_id value_a = 0;
    alt_id value_b = 0;  // collapsed values that disagree
};

struct merge_report {
    bool well_defined = false;
    std::uint64_t representatives_checked = 0;
    std::optional<merge_witness> witness;
};

// The collapsed g-value must be identical across all representatives of
// every small profile. g must be strategy-proof (verified here).
merge_report check_merge_well_defined(const rule& g, const merge_spec& ms,
                                      const limits& lim = {});

struct pinnacle_report {
    bool pinnacle_found = false;      // some profile with x top for the candidate,
                                      // bottom for the rest, where g selects x
    std::optional<profile> pinnacle;
    bool tops_respected = false;      // g selects x whenever the candidate tops x
    std::optional<profile> top_violation;
    bool pass() const { return pinnacle_found && tops_respected; }
};

// Dictatorship probes for a candidate individual (1-based) and alternative x.
pinnacle_report pinnacle_and_top_checks(const rule& g, alt_id x, int candidate);

}  // namespace npsp
