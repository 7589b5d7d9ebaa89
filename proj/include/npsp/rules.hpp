// Social choice rules stored extensionally (one chosen alternative per domain
// profile) and the rule-level predicates: manipulation, strategy-proofness,
// range, dictatorship, UBM. Also the concrete example rules used by the
// verification commands.

#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "npsp/core.hpp"

namespace npsp {

class rule {
public:
    rule(domain_ptr dom, std::vector<alt_id> choice);

    const domain& dom() const { return *dom_; }
    const domain_ptr& dom_ptr() const { return dom_; }
    const std::vector<alt_id>& choice() const { return choice_; }
    alt_id choice_at(std::size_t i) const { return choice_[i]; }

    bool operator==(const rule& other) const {
        return dom_->spec() == other.dom_->spec() && choice_ == other.choice_;
    }

private:
    domain_ptr dom_;
    std::vector<alt_id> choice_;
};

// Individual `by` (1-based) does better reporting via(by) than at(by).
struct manipulation {
    profile at;
    int by = 0;
    profile via;
    alt_id sincere_outcome = 0;
    alt_id manipulated_outcome = 0;
};

// A profitable deviation that harms `harmed` (both individuals 1-based).
struct ubm_violation {
    manipulation deviation;
    int harmed = 0;
};

// Table lookup; distinguishes "outside NP" from "outside this domain".
alt_id evaluate(const rule& g, const profile& p);

// First manipulation witness in canonical order (profile index, then
// individual, then lexicographic misreport), or nullopt when g is
// strategy-proof.
std::optional<manipulation> find_manipulation(const rule& g, const limits& lim = {});

// Alternatives attained by g, ascending.
std::vector<alt_id> range_of(const rule& g);

// Smallest individual i (1-based) whose Range(g)-restricted top is always
// selected; nullopt when none.
std::optional<int> find_dictator(const rule& g);

// UBM demands that every profitable unilateral deviation benefits every
// individual. Defined on the unrestricted domain only; throws elsewhere.
std::optional<ubm_violation> is_ubm(const rule& g, const limits& lim = {});

rule dictator_rule(int individual, domain_ptr dom);

// Restriction of g to a subdomain of its domain.
rule restrict_rule(const rule& g, domain_ptr sub);

struct domain_and_rule {
    domain_ptr dom;
    rule g;
};

// Majority winner between the first two alternatives on NP(n,3), and the
// third alternative on the rest of D = NP(n,3) union all-z-top profiles.
// Labels are fixed to "xyz"; n must be odd.
domain_and_rule majority_superset_rule(int n, const limits& lim = {});

// Picks individual 1's favorite from a fixed three-alternative menu, unless a
// unique alternative Pareto-dominates the whole menu, which is then selected.
// Defined on a full domain; satisfies UBM, and its restriction to NP has
// range equal to the menu.
rule fixed_menu_rule(std::span<const alt_id> menu, domain_ptr full_dom);

// Given g_star on NP(n,m) with range S (|S| >= 3), build the rule it induces
// on NP(n,|S|) over the menu alphabet: each small profile is padded with
// X\S in `pad_order` on top for individual 1 and reversed at the bottom for
// everyone else, then evaluated under g_star. The padded profile always lies
// in NP(n,m); this is asserted, not assumed.
rule project_to_range_domain(const rule& g_star, std::span<const alt_id> pad_order,
                             const limits& lim = {});

// Rule file format: header "n m labels", then one line per domain profile:
// "<profile string> -> <label>", in canonical domain order.
void save_rule(const rule& g, std::ostream& out);
rule load_rule(std::istream& in, domain_ptr dom);

}  // namespace npsp
