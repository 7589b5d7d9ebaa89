// Acceptance suite: one numbered criterion per check, each printing a single
// PASS/FAIL line. Run with no arguments for all criteria, or pass criterion
// numbers to run a subset. Exit status is the number of failed criteria.

#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "npsp/core.hpp"
#include "npsp/lift.hpp"
#include "npsp/rules.hpp"
#include "npsp/spath.hpp"
#include "npsp/verify.hpp"

using namespace npsp;
using npsp::test::ie_np_count;
using npsp::test::pp;

namespace {

const domain_spec s33 = domain_spec::make(3, 3);
const domain_spec s43 = domain_spec::make(4, 3);
const domain_spec s34 = domain_spec::make(3, 4);

bool criterion_1_dictatorship_census() {
    const auto report = verify_dictatorship(s33);
    if (!report.pass) return false;
    const auto np = enumerate_np(s33);
    const auto res = enumerate_solutions(build_sp_model(np, true), 64);
    if (res.solutions.size() != 3) return false;
    std::set<std::vector<alt_id>> got;
    for (const auto& g : res.solutions) got.insert(g.choice());
    for (int i = 1; i <= 3; ++i)
        if (!got.count(dictator_rule(i, np).choice())) return false;
    return true;
}

bool criterion_2_domain_counts() {
    if (all_orderings(3).size() != 6) return false;
    if (enumerate_full(s33)->size() != 216) return false;
    const auto np = enumerate_np(s33);
    if (np->size() != 102 || ie_np_count(3, 3) != 102) return false;
    const auto vp = enumerate_vp(s33);
    if (vp->size() != 12) return false;
    const std::vector<std::string> listed{
        "abc bca cab", "abc cab bca", "acb cba bac", "acb bac cba",
        "bac acb cba", "bac cba acb", "bca cab abc", "bca abc cab",
        "cab abc bca", "cab bca abc", "cba bac acb", "cba acb bac"};
    for (const auto& text : listed)
        if (!vp->contains(pp(text, s33))) return false;
    return true;
}

bool criterion_3_spath_connectivity() {
    const auto np = enumerate_np(s33);
    for (int mask = 0; mask < 8; ++mask) {
        std::vector<alt_id> s;
        for (alt_id a = 0; a < 3; ++a)
            if (mask & (1 << a)) s.push_back(a);
        std::map<profile, std::vector<profile>> fibers;
        for (const auto& p : np->profiles()) {
            const auto key =
                s.empty() ? profile(std::vector<ordering>{ordering{0}}) : restrict_profile(p, s);
            fibers[key].push_back(p);
        }
        for (const auto& [key, fiber] : fibers) {
            // oracle side: one search must reach the whole fiber
            std::size_t reached = 0;
            for (const auto& v : fiber)
                if (bfs_spath_oracle(fiber.front(), v, s, *np)) ++reached;
            if (reached != fiber.size()) return false;
            // constructive side: every ordered pair
            for (const auto& u : fiber) {
                for (const auto& v : fiber) {
                    const auto path = build_spath(u, v, s);
                    if (validate_spath(path, u, v)) return false;
                }
            }
        }
    }
    return true;
}

bool criterion_4_fiber_equivalence() {
    const auto np = enumerate_np(s33);
    const auto res = enumerate_solutions(build_sp_model(np, true), 64);
    if (res.solutions.size() != 3) return false;
    for (const auto& g : res.solutions)
        if (!check_equivalence(g).ok) return false;
    const std::vector<alt_id> menu{0, 1, 2};
    const auto g_star =
        restrict_rule(fixed_menu_rule(menu, enumerate_full(s34)), enumerate_np(s34));
    if (range_of(g_star) != menu) return false;
    return check_equivalence(g_star).ok;
}

bool criterion_5_majority_superset() {
    const auto built = majority_superset_rule(3);
    if (built.dom->size() != 110) return false;
    if (find_manipulation(built.g)) return false;
    if (range_of(built.g).size() != 3) return false;
    return !find_dictator(built.g).has_value();
}

bool criterion_6_decisive_sweep() {
    const auto np = enumerate_np(s33);
    const auto vp = enumerate_vp(s33);
    const auto report = decisive_sweep(np, *vp);
    std::printf("    (%llu queries, %llu unsat)\n",
                static_cast<unsigned long long>(report.queries),
                static_cast<unsigned long long>(report.unsat));
    return report.pass();
}

bool criterion_7_vp_range() {
    const auto np = enumerate_np(s33);
    for (alt_id excluded = 0; excluded < 3; ++excluded)
        if (vp_range_check(np, excluded) != solve_status::unsat) return false;
    return true;
}

bool criterion_8_clone_lift() {
    const auto np4 = enumerate_np(s43);
    const auto res = enumerate_solutions(build_sp_model(np4, true), 64);
    if (res.status != solve_status::sat || res.solutions.size() != 4) return false;
    std::set<int> seen;
    for (const auto& g : res.solutions) {
        const auto d = find_dictator(g);
        if (!d) return false;
        seen.insert(*d);
        const auto last = project_clone(g, clone_end::last);
        const auto first = project_clone(g, clone_end::first);
        if (find_manipulation(last) || find_manipulation(first)) return false;
        const auto d_last = find_dictator(last);
        const auto d_first = find_dictator(first);
        if (!d_last || *d_last != std::min(*d, 3)) return false;
        if (!d_first || *d_first != std::max(*d - 1, 1)) return false;
        if (!check_projection_conflict(g).hypothesis_failed) return false;
    }
    return seen == std::set<int>{1, 2, 3, 4};
}

bool criterion_9_merge() {
    const auto np34 = enumerate_np(s34);
    const auto ms = merge_spec::make(s34, 2, 3, 'x');
    for (int d = 1; d <= 3; ++d) {
        const auto g = dictator_rule(d, np34);
        if (!check_merge_well_defined(g, ms).well_defined) return false;
        const auto projected = project_merge(g, ms);
        if (find_manipulation(projected)) return false;
        if (find_dictator(projected) != d) return false;
    }
    return true;
}

bool criterion_10_ubm_chain() {
    const std::vector<alt_id> menu{0, 1, 2};
    const auto g = fixed_menu_rule(menu, enumerate_full(s34));
    if (is_ubm(g)) return false;
    if (range_of(g).size() != 4) return false;

    const auto np34 = enumerate_np(s34);
    const auto g_star = restrict_rule(g, np34);
    if (find_manipulation(g_star)) return false;
    if (range_of(g_star) != menu) return false;

    const auto lifted = project_to_range_domain(g_star, std::vector<alt_id>{3});
    if (find_dictator(lifted) != 1) return false;
    if (find_manipulation(lifted)) return false;

    // pad-order invariance needs at least two off-range alternatives, so run
    // the same chain at (3,5); inside NP the menu override cannot fire (it
    // needs a Pareto domination), so the restriction is the plain menu table
    const auto s35 = domain_spec::make(3, 5);
    const auto np35 = enumerate_np(s35);
    std::vector<alt_id> choice;
    choice.reserve(np35->size());
    for (const auto& p : np35->profiles()) {
        for (alt_id a : p.at(0).ranks())
            if (a <= 2) {
                choice.push_back(a);
                break;
            }
    }
    const rule wide_star(np35, std::move(choice));
    const auto lift_a = project_to_range_domain(wide_star, std::vector<alt_id>{3, 4});
    const auto lift_b = project_to_range_domain(wide_star, std::vector<alt_id>{4, 3});
    if (!(lift_a == lift_b)) return false;
    return find_dictator(lift_a) == 1 && !find_manipulation(lift_a).has_value();
}

struct criterion {
    int number;
    const char* summary;
    std::function<bool()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<criterion> criteria{
        {1, "every full-range strategy-proof rule on NP(3,3) is one of the 3 dictatorships",
         criterion_1_dictatorship_census},
        {2, "|L(X)|=6, 216 profiles, |NP(3,3)|=102 (inclusion-exclusion), |VP|=12 as listed",
         criterion_2_domain_counts},
        {3, "constructive S-paths and BFS oracle cover every (3,3) fiber pair",
         criterion_3_spath_connectivity},
        {4, "strategy-proof rules are constant on range fibers at (3,3) and (3,4)",
         criterion_4_fiber_equivalence},
        {5, "the majority rule on the 110-profile superset is SP, full-range, non-dictatorial",
         criterion_5_majority_superset},
        {6, "every decisiveness query meeting the hypothesis at (3,3) is unsatisfiable",
         criterion_6_decisive_sweep},
        {7, "no full-range SP rule avoids any alternative on the voting paradox profiles",
         criterion_7_vp_range},
        {8, "the 4 rules at (4,3) project to dictatorships with correct transport; no conflict",
         criterion_8_clone_lift},
        {9, "fused-pair projection at (3,4) is representative-independent, SP, dictator-true",
         criterion_9_merge},
        {10, "the menu rule is UBM with full range; its NP restriction lifts to dictatorship",
         criterion_10_ubm_chain},
    };

    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& c : criteria) {
        if (!wanted.empty() && !wanted.count(c.number)) continue;
        bool ok = false;
        try {
            ok = c.run();
        } catch (const std::exception& e) {
            std::printf("criterion %d: exception: %s\n", c.number, e.what());
        }
        std::printf("criterion %2d: %s - %s\n", c.number, ok ? "PASS" : "FAIL", c.summary);
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures;
}
