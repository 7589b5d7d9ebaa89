#include "npsp/lift.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace npsp {

namespace {

void require_strategy_proof(const rule& g, const limits& lim, const char* who) {
    if (find_manipulation(g, lim))
        throw std::invalid_argument(std::string(who) + " needs a strategy-proof rule");
}

void require_full_range(const rule& g, const char* who) {
    if (static_cast<int>(range_of(g).size()) != g.dom().spec().m)
        throw std::invalid_argument(std::string(who) + " needs a full-range rule");
}

ordering identity_ordering(int m) {
    std::vector<alt_id> v;
    v.reserve(static_cast<size_t>(m));
    for (int a = 0; a < m; ++a) v.push_back(static_cast<alt_id>(a));
    return ordering(std::span<const alt_id>(v));
}

}  // namespace

profile clone_profile(const profile& p, clone_end which) {
    if (!is_np_member(p)) throw std::invalid_argument("clone_profile needs an NP member");
    auto v = p.individuals();
    if (which == clone_end::last)
        v.push_back(v.back());
    else
        v.insert(v.begin(), v.front());
    return profile(std::move(v));
}

rule project_clone(const rule& g, clone_end which, const limits& lim) {
    const auto& big_spec = g.dom().spec();
    if (big_spec.n < 2) throw std::invalid_argument("projection needs at least two individuals");
    require_strategy_proof(g, lim, "project_clone");
    const auto small_spec = domain_spec::make(big_spec.n - 1, big_spec.m, big_spec.labels);
    const auto small_dom = enumerate_np(small_spec, lim);
    std::vector<alt_id> choice;
    choice.reserve(small_dom->size());
    for (const auto& p : small_dom->profiles()) choice.push_back(evaluate(g, clone_profile(p, which)));
    return rule(small_dom, std::move(choice));
}

projection_conflict_report check_projection_conflict(const rule& g, const limits& lim) {
    require_strategy_proof(g, lim, "check_projection_conflict");
    require_full_range(g, "check_projection_conflict");
    const int n_small = g.dom().spec().n - 1;
    const auto d_last = find_dictator(project_clone(g, clone_end::last, lim));
    const auto d_first = find_dictator(project_clone(g, clone_end::first, lim));
    if (!(d_last && *d_last == n_small && d_first && *d_first == 1))
        return projection_conflict_report{};
    // the impossible configuration: probe with the two ends anti-aligned
    const auto& spec = g.dom().spec();
    const ordering fwd = identity_ordering(spec.m);
    const ordering rev = inverse_ordering(fwd);
    std::vector<ordering> v(static_cast<size_t>(spec.n), fwd);
    v[static_cast<size_t>(spec.n) - 2] = rev;
    v[static_cast<size_t>(spec.n) - 1] = rev;
    const profile probe(std::move(v));
    assert(is_np_member(probe));
    return projection_conflict_report{false, probe, evaluate(g, probe)};
}

merge_spec merge_spec::make(const domain_spec& big, alt_id w, alt_id z, char x_star_label) {
    if (w == z || w >= big.m || z >= big.m)
        throw std::invalid_argument("merge needs two distinct alternatives of the big alphabet");
    if (big.alt_of(x_star_label) >= 0)
        throw std::invalid_argument("the fused alternative's label must not belong to the alphabet");
    merge_spec ms;
    ms.w = w;
    ms.z = z;
    ms.x_star_label = x_star_label;
    ms.big_spec = big;
    std::string small_labels;
    ms.big_to_small.assign(static_cast<size_t>(big.m), -1);
    const alt_id slot = std::min(w, z);
    for (int a = 0; a < big.m; ++a) {
        if (a == slot) {
            ms.x_star_small = static_cast<alt_id>(small_labels.size());
            small_labels.push_back(x_star_label);
            ms.small_to_big.push_back(w);
        }
        if (a == w || a == z) continue;
        ms.big_to_small[static_cast<size_t>(a)] = static_cast<int>(small_labels.size());
        small_labels.push_back(big.label(static_cast<alt_id>(a)));
        ms.small_to_big.push_back(static_cast<alt_id>(a));
    }
    ms.big_to_small[w] = ms.x_star_small;
    ms.big_to_small[z] = ms.x_star_small;
    ms.small_spec = domain_spec::make(big.n, big.m - 1, small_labels);
    return ms;
}

namespace {

// orientation bit set: w immediately above z for that individual
profile expand_profile(const profile& p, const merge_spec& ms, unsigned orientation) {
    std::vector<ordering> out;
    out.reserve(static_cast<size_t>(p.n()));
    for (int i = 0; i < p.n(); ++i) {
        std::vector<alt_id> v;
        v.reserve(static_cast<size_t>(ms.big_spec.m));
        for (alt_id s : p.at(i).ranks()) {
            if (s == ms.x_star_small) {
                const bool w_first = (orientation >> i) & 1u;
                v.push_back(w_first ? ms.w : ms.z);
                v.push_back(w_first ? ms.z : ms.w);
            } else {
                v.push_back(ms.small_to_big[s]);
            }
        }
        out.emplace_back(std::span<const alt_id>(v));
    }
    return profile(std::move(out));
}

void check_small_member(const profile& p, const merge_spec& ms) {
    if (p.n() != ms.small_spec.n || p.at(0).size() != ms.small_spec.m)
        throw std::invalid_argument("profile does not match the small alphabet");
    if (!is_np_member(p)) throw std::invalid_argument("merge needs an NP member");
}

}  // namespace

profile merge_representative(const profile& p, const merge_spec& ms) {
    check_small_member(p, ms);
    // individual 1 gets w above z, everyone else z above w
    const auto r = expand_profile(p, ms, 1u);
    if (!is_np_member(r)) throw std::logic_error("merge representative left NP; construction broken");
    return r;
}

std::vector<profile> merge_representatives_all(const profile& p, const merge_spec& ms) {
    check_small_member(p, ms);
    std::vector<profile> out;
    const unsigned count = 1u << p.n();
    for (unsigned mask = 0; mask < count; ++mask) {
        auto r = expand_profile(p, ms, mask);
        if (is_np_member(r)) out.push_back(std::move(r));
    }
    return out;
}

rule project_merge(const rule& g, const merge_spec& ms, const limits& lim) {
    if (g.dom().spec() != ms.big_spec)
        throw std::invalid_argument("rule domain does not match the merge's big alphabet");
    require_strategy_proof(g, lim, "project_merge");
    const auto small_dom = enumerate_np(ms.small_spec, lim);
    std::vector<alt_id> choice;
    choice.reserve(small_dom->size());
    for (const auto& p : small_dom->profiles()) {
        const alt_id v = evaluate(g, merge_representative(p, ms));
        choice.push_back(static_cast<alt_id>(ms.big_to_small[v]));
    }
    return rule(small_dom, std::move(choice));
}

merge_report check_merge_well_defined(const rule& g, const merge_spec& ms, const limits& lim) {
    if (g.dom().spec() != ms.big_spec)
        throw std::invalid_argument("rule domain does not match the merge's big alphabet");
    require_strategy_proof(g, lim, "check_merge_well_defined");
    const auto small_dom = enumerate_np(ms.small_spec, lim);
    merge_report report;
    report.well_defined = true;
    for (const auto& p : small_dom->profiles()) {
        const auto reps = merge_representatives_all(p, ms);
        assert(!reps.empty());
        const alt_id ref = static_cast<alt_id>(ms.big_to_small[evaluate(g, reps.front())]);
        for (std::size_t k = 0; k < reps.size(); ++k) {
            ++report.representatives_checked;
            const alt_id val = static_cast<alt_id>(ms.big_to_small[evaluate(g, reps[k])]);
            if (val != ref && report.well_defined) {
                report.well_defined = false;
                report.witness = merge_witness{p, reps.front(), reps[k], ref, val};
            }
        }
    }
    return report;
}

pinnacle_report pinnacle_and_top_checks(const rule& g, alt_id x, int candidate) {
    const auto& dom = g.dom();
    const auto& spec = dom.spec();
    if (candidate < 1 || candidate > spec.n) throw std::invalid_argument("candidate out of range");
    if (x >= spec.m) throw std::invalid_argument("alternative out of range");
    require_strategy_proof(g, {}, "pinnacle_and_top_checks");
    require_full_range(g, "pinnacle_and_top_checks");
    const int c = candidate - 1;
    pinnacle_report report;
    report.tops_respected = true;
    for (std::size_t i = 0; i < dom.size(); ++i) {
        const profile& p = dom.at(i);
        if (p.at(c).top() != x) continue;
        if (g.choice_at(i) != x && report.tops_respected) {
            report.tops_respected = false;
            report.top_violation = p;
        }
        bool bottom_for_rest = true;
        for (int j = 0; j < spec.n && bottom_for_rest; ++j)
            if (j != c) bottom_for_rest = p.at(j).bottom() == x;
        if (bottom_for_rest && g.choice_at(i) == x && !report.pinnacle_found) {
            report.pinnacle_found = true;
            report.pinnacle = p;
        }
    }
    return report;
}

}  // namespace npsp
