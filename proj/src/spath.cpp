#include "npsp/spath.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace npsp {

namespace {

std::vector<alt_id> alphabet_of(const profile& p) {
    std::vector<alt_id> v(p.at(0).ranks().begin(), p.at(0).ranks().end());
    std::sort(v.begin(), v.end());
    return v;
}

ordering lowered_to_bottom(const ordering& o, alt_id x) {
    auto e = o.erased(x);
    return e.inserted(e.size(), x);
}

ordering raised_above(const ordering& o, alt_id x, alt_id c) {
    auto e = o.erased(x);
    return e.inserted(e.rank_of(c), x);
}

ordering lowered_below(const ordering& o, alt_id x, alt_id c) {
    auto e = o.erased(x);
    return e.inserted(e.rank_of(c) + 1, x);
}

// x on top for individual 1, at the bottom for everyone else.
profile pinned(const profile& p, alt_id x) {
    std::vector<ordering> v;
    v.reserve(static_cast<size_t>(p.n()));
    for (int i = 0; i < p.n(); ++i)
        v.push_back(i == 0 ? p.at(i).inserted(0, x) : p.at(i).inserted(p.at(i).size(), x));
    return profile(std::move(v));
}

// Path from u to its pivot for x: first raise x rank by rank to individual
// 1's top (lowering x just below the blocking alternative for individual 2
// when nobody else ranks it lower), then drop x to the bottom for each other
// individual in turn.
std::vector<profile> codim1_half(const profile& u, alt_id x) {
    const int n = u.n();
    std::vector<profile> path{u};
    profile cur = u;
    while (cur.at(0).top() != x) {
        const int rx = cur.at(0).rank_of(x);
        const alt_id c = cur.at(0).at(rx - 1);
        bool someone_below = false;
        for (int j = 1; j < n && !someone_below; ++j)
            someone_below = cur.at(j).prefers(c, x);
        if (!someone_below) {
            cur = cur.with(1, lowered_below(cur.at(1), x, c));
            path.push_back(cur);
        }
        cur = cur.with(0, raised_above(cur.at(0), x, c));
        path.push_back(cur);
    }
    for (int i = 1; i < n; ++i) {
        if (cur.at(i).bottom() != x) {
            cur = cur.with(i, lowered_to_bottom(cur.at(i), x));
            path.push_back(cur);
        }
    }
    return path;
}

std::vector<profile> to_pivot(const profile& u, std::span<const alt_id> rest) {
    if (rest.empty()) return {u};
    const alt_id x = rest[0];
    if (rest.size() == 1) return codim1_half(u, x);
    auto alphabet = alphabet_of(u);
    std::vector<alt_id> sub;
    for (alt_id a : alphabet)
        if (a != x) sub.push_back(a);
    auto half = codim1_half(u, x);
    const profile u1 = pinned(restrict_profile(u, sub), x);
    assert(half.back() == u1);
    auto inner = to_pivot(restrict_profile(u1, sub), rest.subspan(1));
    for (std::size_t t = 1; t < inner.size(); ++t) half.push_back(pinned(inner[t], x));
    return half;
}

std::vector<profile> join_at_pivot(std::vector<profile> a, const std::vector<profile>& b) {
    assert(a.back() == b.back());
    for (auto it = b.rbegin() + 1; it != b.rend(); ++it) a.push_back(*it);
    return a;
}

}  // namespace

std::optional<spath_violation> validate_spath(const spath& path, const profile& u,
                                              const profile& v) {
    if (path.steps.empty()) return spath_violation{"path has no steps", 0};
    if (!(path.steps.front() == u)) return spath_violation{"first step is not u", 0};
    if (!(path.steps.back() == v))
        return spath_violation{"last step is not v", static_cast<int>(path.steps.size()) - 1};
    const auto alphabet = alphabet_of(path.steps.front());
    for (alt_id a : path.s_set)
        if (!std::binary_search(alphabet.begin(), alphabet.end(), a))
            return spath_violation{"S contains an alternative outside the profile alphabet", 0};
    for (std::size_t t = 0; t < path.steps.size(); ++t) {
        const auto& w = path.steps[t];
        if (w.n() != u.n() || alphabet_of(w) != alphabet)
            return spath_violation{"step is over a different profile shape", static_cast<int>(t)};
        if (!is_np_member(w))
            return spath_violation{"step is Pareto-dominated somewhere (outside NP)",
                                   static_cast<int>(t)};
    }
    for (std::size_t t = 0; t + 1 < path.steps.size(); ++t) {
        const auto& a = path.steps[t];
        const auto& b = path.steps[t + 1];
        int differing = 0;
        for (int i = 0; i < a.n(); ++i)
            if (!(a.at(i) == b.at(i))) ++differing;
        if (differing > 1)
            return spath_violation{"consecutive steps differ in more than one individual",
                                   static_cast<int>(t)};
        if (!path.s_set.empty() &&
            !(restrict_profile(a, path.s_set) == restrict_profile(b, path.s_set)))
            return spath_violation{"consecutive steps disagree on S", static_cast<int>(t)};
    }
    return std::nullopt;
}

spath build_spath_codim1(const profile& u, const profile& v, alt_id x) {
    if (!is_np_member(u) || !is_np_member(v))
        throw std::invalid_argument("endpoints must be NP members");
    const auto alphabet = alphabet_of(u);
    std::vector<alt_id> s;
    for (alt_id a : alphabet)
        if (a != x) s.push_back(a);
    if (s.size() == alphabet.size())
        throw std::invalid_argument("x is not in the profile alphabet");
    if (!s.empty() && !(restrict_profile(u, s) == restrict_profile(v, s)))
        throw std::invalid_argument("endpoints must agree on everything but x");
    if (u == v) return spath{s, {u}};
    return spath{s, join_at_pivot(codim1_half(u, x), codim1_half(v, x))};
}

spath build_spath(const profile& u, const profile& v, std::vector<alt_id> s_set) {
    if (!is_np_member(u) || !is_np_member(v))
        throw std::invalid_argument("endpoints must be NP members");
    std::sort(s_set.begin(), s_set.end());
    if (!s_set.empty() && !(restrict_profile(u, s_set) == restrict_profile(v, s_set)))
        throw std::invalid_argument("endpoints must agree on S");
    if (u == v) return spath{s_set, {u}};
    const auto alphabet = alphabet_of(u);
    std::vector<alt_id> rest;
    for (alt_id a : alphabet)
        if (!std::binary_search(s_set.begin(), s_set.end(), a)) rest.push_back(a);
    if (rest.empty())
        throw std::invalid_argument("S covers every alternative but the endpoints differ");
    return spath{s_set, join_at_pivot(to_pivot(u, rest), to_pivot(v, rest))};
}

std::optional<spath> bfs_spath_oracle(const profile& u, const profile& v,
                                      std::vector<alt_id> s_set, const domain& dom,
                                      const limits& lim) {
    std::sort(s_set.begin(), s_set.end());
    const auto ui = dom.index_of(u);
    const auto vi = dom.index_of(v);
    if (!ui || !vi) throw std::invalid_argument("endpoints must belong to the domain");
    if (!s_set.empty() && !(restrict_profile(u, s_set) == restrict_profile(v, s_set)))
        throw std::invalid_argument("endpoints must agree on S");
    const auto orders = all_orderings(dom.spec().m, lim);
    // per-individual compatible replacement orderings (same restriction to S)
    const auto compatible = [&](const ordering& o, const ordering& r) {
        if (s_set.empty()) return true;
        return restrict_ordering(o, s_set) == restrict_ordering(r, s_set);
    };
    constexpr std::uint32_t unseen = 0xffffffffu;
    std::vector<std::uint32_t> parent(dom.size(), unseen);
    std::vector<std::uint32_t> queue;
    parent[*ui] = *ui;
    queue.push_back(*ui);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t wi = queue[head];
        if (wi == *vi) break;
        const profile& w = dom.at(wi);
        for (int h = 0; h < dom.spec().n; ++h) {
            for (const auto& r : orders) {
                if (r == w.at(h) || !compatible(w.at(h), r)) continue;
                const auto qi = dom.index_of(w.with(h, r));
                if (!qi || parent[*qi] != unseen) continue;
                parent[*qi] = wi;
                queue.push_back(*qi);
            }
        }
    }
    if (parent[*vi] == unseen) return std::nullopt;
    std::vector<profile> steps;
    for (std::uint32_t cur = *vi;; cur = parent[cur]) {
        steps.push_back(dom.at(cur));
        if (cur == *ui) break;
    }
    std::reverse(steps.begin(), steps.end());
    return spath{std::move(s_set), std::move(steps)};
}

equivalence_report check_equivalence(const rule& g, const limits& lim) {
    if (find_manipulation(g, lim))
        throw std::invalid_argument("rule is manipulable; the fiber equivalence needs strategy-proofness");
    const auto range = range_of(g);
    const auto& dom = g.dom();
    std::map<profile, std::pair<std::size_t, alt_id>> fibers;
    for (std::size_t i = 0; i < dom.size(); ++i) {
        const auto key = restrict_profile(dom.at(i), range);
        const auto [it, inserted] = fibers.emplace(key, std::make_pair(i, g.choice_at(i)));
        if (!inserted && it->second.second != g.choice_at(i))
            return equivalence_report{false,
                                      std::make_pair(dom.at(it->second.first), dom.at(i))};
    }
    return equivalence_report{true, std::nullopt};
}

}  // namespace npsp
