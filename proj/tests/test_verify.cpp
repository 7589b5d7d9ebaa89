#include "doctest.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "helpers.hpp"
#include "npsp/verify.hpp"

using namespace npsp;
using npsp::test::has_manipulation_oracle;
using npsp::test::pp;

namespace {

const domain_spec s33 = domain_spec::make(3, 3);

domain_ptr single_profile_domain() {
    return std::make_shared<domain>(s33, std::vector<profile>{pp("abc bca cab", s33)});
}

// test-side DIMACS reader for the export round-trip
std::pair<int, std::vector<std::vector<int>>> parse_dimacs(std::istream& in) {
    std::string tok;
    int vars = 0, clause_count = 0;
    in >> tok >> tok >> vars >> clause_count;
    std::vector<std::vector<int>> clauses;
    std::vector<int> cur;
    int lit;
    while (in >> lit) {
        if (lit == 0) {
            clauses.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(lit);
        }
    }
    REQUIRE(static_cast<int>(clauses.size()) == clause_count);
    return {vars, clauses};
}

}  // namespace

TEST_CASE("build_sp_model shapes") {
    const auto np = enumerate_np(s33);
    const auto model = build_sp_model(np, true);
    CHECK(model.var_count == 306);  // 102 profiles x 3 alternatives

    SUBCASE("single profile, no range demand: one ALO plus three AMO clauses") {
        const auto tiny = build_sp_model(single_profile_domain(), false);
        CHECK(tiny.var_count == 3);
        CHECK(tiny.clauses.size() == 4);
    }
    SUBCASE("n=2 produces no strategy-proofness clauses") {
        // no two distinct NP(2,m) profiles are i-variants
        const auto np2 = enumerate_np(domain_spec::make(2, 3));
        const auto m2 = build_sp_model(np2, false);
        // exactly-one groups only: one ALO + three AMO per profile
        CHECK(m2.clauses.size() == np2->size() * 4);
    }
}

TEST_CASE("enumerate_solutions on toy models") {
    SUBCASE("unconstrained single profile has three solutions") {
        const auto res = enumerate_solutions(build_sp_model(single_profile_domain(), false), 64);
        CHECK(res.status == solve_status::sat);
        CHECK(res.solutions.size() == 3);
        // lexicographic table order
        CHECK(res.solutions[0].choice_at(0) == 0);
        CHECK(res.solutions[1].choice_at(0) == 1);
        CHECK(res.solutions[2].choice_at(0) == 2);
    }
    SUBCASE("contradictory units are unsat") {
        auto model = build_sp_model(single_profile_domain(), false);
        model.add_unit(model.var(0, 0));
        model.add_unit(-model.var(0, 0));
        CHECK(enumerate_solutions(model, 8).status == solve_status::unsat);
    }
    SUBCASE("a single profile cannot cover a three-alternative range") {
        const auto res = enumerate_solutions(build_sp_model(single_profile_domain(), true), 8);
        CHECK(res.status == solve_status::unsat);
    }
    SUBCASE("cap truncates enumeration") {
        const auto res = enumerate_solutions(build_sp_model(single_profile_domain(), false), 2);
        CHECK(res.status == solve_status::capped);
        CHECK(res.solutions.size() == 2);
    }
}

TEST_CASE("solver enumeration matches brute force on small subdomains") {
    // completeness oracle: try every table over the first K profiles of NP(3,3)
    const auto np = enumerate_np(s33);
    constexpr int K = 10;
    std::vector<profile> subset(np->profiles().begin(), np->profiles().begin() + K);
    auto dom = std::make_shared<domain>(s33, std::move(subset));

    std::vector<std::vector<alt_id>> brute;
    std::vector<alt_id> table(K, 0);
    for (;;) {
        rule g(dom, table);
        if (!has_manipulation_oracle(g)) brute.push_back(table);
        int i = K - 1;
        while (i >= 0 && table[i] == 2) table[i--] = 0;
        if (i < 0) break;
        ++table[i];
    }

    const auto res = enumerate_solutions(build_sp_model(dom, false), 1 << 20);
    CHECK(res.status == solve_status::sat);
    REQUIRE(res.solutions.size() == brute.size());
    std::set<std::vector<alt_id>> got;
    for (const auto& g : res.solutions) got.insert(g.choice());
    for (const auto& t : brute) CHECK(got.count(t) == 1);
}

TEST_CASE("every full-range strategy-proof rule on NP(3,3) is a dictatorship") {
    const auto report = verify_dictatorship(s33);
    CHECK(report.pass);
    CHECK(report.status == solve_status::sat);
    REQUIRE(report.dictators.size() == 3);
    CHECK(report.all_dictatorial);
    std::set<int> ids(report.dictators.begin(), report.dictators.end());
    CHECK(ids == std::set<int>{1, 2, 3});

    SUBCASE("the run is deterministic, stats included") {
        const auto again = verify_dictatorship(s33);
        CHECK(again.dictators == report.dictators);
        CHECK(again.stats.decisions == report.stats.decisions);
        CHECK(again.stats.propagations == report.stats.propagations);
    }
}

TEST_CASE("dropping the range demand admits exactly the 54 strategy-proof tables") {
    const auto np = enumerate_np(s33);
    const auto res = enumerate_solutions(build_sp_model(np, false), 256);
    CHECK(res.status == solve_status::sat);
    CHECK(res.solutions.size() == 54);
    std::set<std::vector<alt_id>> got;
    for (const auto& g : res.solutions) got.insert(g.choice());
    for (alt_id a = 0; a < 3; ++a)
        CHECK(got.count(std::vector<alt_id>(np->size(), a)) == 1);  // constants
    for (int i = 1; i <= 3; ++i) CHECK(got.count(dictator_rule(i, np).choice()) == 1);
}

TEST_CASE("restrictions of basis solutions to VP keep their dictator") {
    const auto np = enumerate_np(s33);
    const auto vp = enumerate_vp(s33);
    const auto res = enumerate_solutions(build_sp_model(np, true), 8);
    REQUIRE(res.solutions.size() == 3);
    for (const auto& g : res.solutions) {
        const auto d = find_dictator(g);
        REQUIRE(d.has_value());
        CHECK(find_dictator(restrict_rule(g, vp)) == d);
        CHECK(range_of(restrict_rule(g, vp)).size() == 3);
    }
}

TEST_CASE("the solution set is closed under individual and alternative symmetry") {
    const auto np = enumerate_np(s33);
    const auto res = enumerate_solutions(build_sp_model(np, true), 8);
    REQUIRE(res.solutions.size() == 3);
    std::set<std::vector<alt_id>> tables;
    for (const auto& g : res.solutions) tables.insert(g.choice());

    SUBCASE("permuting individuals") {
        const std::vector<int> sigma{1, 2, 0};
        for (const auto& g : res.solutions) {
            std::vector<alt_id> mapped(np->size());
            for (std::uint32_t i = 0; i < np->size(); ++i) {
                std::vector<ordering> v;
                for (int k : sigma) v.push_back(np->at(i).at(k));
                mapped[i] = g.choice_at(*np->index_of(profile{std::move(v)}));
            }
            CHECK(tables.count(mapped) == 1);
        }
    }
    SUBCASE("relabeling alternatives") {
        const std::vector<alt_id> tau{2, 0, 1};
        for (const auto& g : res.solutions) {
            std::vector<alt_id> mapped(np->size());
            for (std::uint32_t i = 0; i < np->size(); ++i) {
                std::vector<ordering> v;
                for (const auto& o : np->at(i).individuals()) {
                    std::vector<alt_id> ranks;
                    for (alt_id a : o.ranks()) ranks.push_back(tau[a]);
                    v.emplace_back(std::span<const alt_id>(ranks));
                }
                mapped[*np->index_of(profile{std::move(v)})] = tau[g.choice_at(i)];
            }
            CHECK(tables.count(mapped) == 1);
        }
    }
}

TEST_CASE("decisiveness queries") {
    const auto np = enumerate_np(s33);
    const auto u = pp("abc bca cab", s33);

    SUBCASE("the seed forces unsat over targets meeting the hypothesis") {
        for (const auto& text : {"abc bca cab", "abc cab bca", "acb cba bac", "bac acb cba"}) {
            const auto v = pp(text, s33);
            REQUIRE(v.at(0).prefers(0, 2));
            CHECK(decisiveness_query(np, u, 0, v, 2) == solve_status::unsat);
        }
    }
    SUBCASE("targets outside the hypothesis are rejected") {
        const auto v = pp("cab abc bca", s33);  // individual 1 ranks c above a
        CHECK_THROWS(decisiveness_query(np, u, 0, v, 2));
    }
    SUBCASE("non-VP seeds are rejected") {
        const auto w = pp("abc bca cba", s33);
        REQUIRE(np->contains(w));
        CHECK_THROWS(decisiveness_query(np, w, 0, w, 2));
    }
}

TEST_CASE("a full-range rule cannot avoid any alternative on VP") {
    const auto np = enumerate_np(s33);
    for (alt_id excluded = 0; excluded < 3; ++excluded)
        CHECK(vp_range_check(np, excluded) == solve_status::unsat);

    SUBCASE("without the range demand a constant rule slips through") {
        auto model = build_sp_model(np, false);
        for (std::uint32_t i = 0; i < np->size(); ++i)
            if (is_vp_member(np->at(i))) model.add_unit(-model.var(i, 2));
        const auto res = enumerate_solutions(model, 1);
        CHECK_FALSE(res.solutions.empty());
    }
}

TEST_CASE("DIMACS export round-trips through an external-style reader") {
    SUBCASE("single profile header") {
        std::stringstream out;
        const auto map = export_dimacs(build_sp_model(single_profile_domain(), false), out);
        CHECK(out.str().substr(0, 10) == "p cnf 3 4\n");
        REQUIRE(map.size() == 3);
        CHECK(map[0].profile_text == "abc bca cab");
        CHECK(map[0].label == 'a');
        CHECK(map[0].variable == 1);
    }
    SUBCASE("basis model solves identically after a round trip") {
        const auto np = enumerate_np(s33);
        const auto model = build_sp_model(np, true);
        std::stringstream out;
        const auto map = export_dimacs(model, out);
        CHECK(map.size() == 306);
        auto [vars, clauses] = parse_dimacs(out);
        CHECK(vars == 306);
        CHECK(clauses.size() == model.clauses.size());

        constraint_model replay;
        replay.dom = np;
        replay.var_count = vars;
        replay.clauses = std::move(clauses);
        const auto res = enumerate_solutions(replay, 8);
        REQUIRE(res.solutions.size() == 3);
        for (const auto& g : res.solutions) {
            CHECK_FALSE(find_manipulation(g).has_value());
            CHECK(range_of(g).size() == 3);
        }
    }
}
