// Shared test oracles, independent of the implementation paths they check.

#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "npsp/core.hpp"
#include "npsp/rules.hpp"

namespace npsp::test {

// Inclusion-exclusion count of NP(n,m): profiles avoiding every
// pair-unanimity event. Never enumerates profiles.
inline std::uint64_t ie_np_count(int n, int m) {
    const auto orders = all_orderings(m);
    std::vector<std::pair<alt_id, alt_id>> pairs;
    for (int x = 0; x < m; ++x)
        for (int y = x + 1; y < m; ++y)
            pairs.emplace_back(static_cast<alt_id>(x), static_cast<alt_id>(y));
    const int np = static_cast<int>(pairs.size());
    std::int64_t total = 0;
    for (int mask = 0; mask < (1 << np); ++mask) {
        std::vector<int> chosen;
        for (int k = 0; k < np; ++k)
            if (mask & (1 << k)) chosen.push_back(k);
        std::int64_t contribution = 0;
        const int dirs = 1 << chosen.size();
        for (int d = 0; d < dirs; ++d) {
            std::int64_t consistent = 0;
            for (const auto& o : orders) {
                bool ok = true;
                for (std::size_t t = 0; t < chosen.size() && ok; ++t) {
                    const auto [x, y] = pairs[static_cast<size_t>(chosen[t])];
                    const bool want_xy = ((d >> t) & 1) == 0;
                    ok = want_xy ? o.prefers(x, y) : o.prefers(y, x);
                }
                if (ok) ++consistent;
            }
            std::int64_t power = 1;
            for (int i = 0; i < n; ++i) power *= consistent;
            contribution += power;
        }
        total += (chosen.size() % 2 == 0 ? contribution : -contribution);
    }
    return static_cast<std::uint64_t>(total);
}

// Double loop over ordered domain pairs; detects h-variants with
// h_variant_of instead of generating neighbours.
inline bool has_manipulation_oracle(const rule& g) {
    const auto& dom = g.dom();
    for (std::size_t i = 0; i < dom.size(); ++i) {
        for (std::size_t j = 0; j < dom.size(); ++j) {
            if (i == j) continue;
            const auto h = h_variant_of(dom.at(i), dom.at(j));
            if (!h) continue;
            const alt_id gp = g.choice_at(i);
            const alt_id gq = g.choice_at(j);
            if (gq != gp && dom.at(i).at(*h - 1).prefers(gq, gp)) return true;
        }
    }
    return false;
}

// Adjacent-swap consequence of strategy-proofness: across an h-variant pair
// differing by one adjacent transposition, the outcome either stays put or
// moves from the demoted alternative to the promoted one.
inline bool adjacent_swaps_consistent(const rule& g) {
    const auto& dom = g.dom();
    const int m = dom.spec().m;
    for (std::size_t i = 0; i < dom.size(); ++i) {
        const profile& p = dom.at(i);
        for (int h = 0; h < dom.spec().n; ++h) {
            for (int k = 0; k + 1 < m; ++k) {
                const alt_id hi = p.at(h).at(k);      // demoted by the swap
                const alt_id lo = p.at(h).at(k + 1);  // promoted by the swap
                auto swapped = p.at(h).erased(hi).inserted(k + 1, hi);
                const auto j = dom.index_of(p.with(h, swapped));
                if (!j) continue;
                const alt_id before = g.choice_at(i);
                const alt_id after = g.choice_at(*j);
                if (before == after) continue;
                if (!(before == hi && after == lo)) return false;
            }
        }
    }
    return true;
}

inline profile pp(const std::string& text, const domain_spec& spec) {
    return parse_profile(text, spec);
}

}  // namespace npsp::test
