#include "npsp/rules.hpp"

#include <algorithm>
#include <cassert>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace npsp {

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

std::uint64_t factorial(int m) {
    std::uint64_t f = 1;
    for (int k = 2; k <= m; ++k) f *= static_cast<std::uint64_t>(k);
    return f;
}

alt_id top_within(const ordering& o, const std::vector<alt_id>& range) {
    for (alt_id a : o.ranks())
        if (std::find(range.begin(), range.end(), a) != range.end()) return a;
    throw std::logic_error("ordering contains no range alternative");
}

}  // namespace

rule::rule(domain_ptr dom, std::vector<alt_id> choice)
    : dom_(std::move(dom)), choice_(std::move(choice)) {
    if (!dom_) throw std::invalid_argument("rule needs a domain");
    if (choice_.size() != dom_->size())
        throw std::invalid_argument("rule table size must match the domain");
    for (alt_id a : choice_)
        if (a >= dom_->spec().m) throw std::invalid_argument("rule table entry out of range");
}

alt_id evaluate(const rule& g, const profile& p) {
    const auto idx = g.dom().index_of(p);
    if (!idx) {
        if (p.n() == g.dom().spec().n && p.at(0).size() == g.dom().spec().m && !is_np_member(p))
            throw std::invalid_argument("profile is Pareto-dominated somewhere (outside NP)");
        throw std::invalid_argument("profile is outside this rule's domain");
    }
    return g.choice_at(*idx);
}

std::optional<manipulation> find_manipulation(const rule& g, const limits& lim) {
    const auto& dom = g.dom();
    const auto orders = all_orderings(dom.spec().m, lim);
    for (std::size_t i = 0; i < dom.size(); ++i) {
        const profile& p = dom.at(i);
        const alt_id gp = g.choice_at(i);
        for (int h = 0; h < dom.spec().n; ++h) {
            for (const auto& r : orders) {
                if (r == p.at(h)) continue;
                const profile q = p.with(h, r);
                const auto j = dom.index_of(q);
                if (!j) continue;
                const alt_id gq = g.choice_at(*j);
                if (gq != gp && p.at(h).prefers(gq, gp))
                    return manipulation{p, h + 1, q, gp, gq};
            }
        }
    }
    return std::nullopt;
}

std::vector<alt_id> range_of(const rule& g) {
    std::vector<bool> seen(static_cast<size_t>(g.dom().spec().m), false);
    for (alt_id a : g.choice()) seen[a] = true;
    std::vector<alt_id> out;
    for (int a = 0; a < g.dom().spec().m; ++a)
        if (seen[static_cast<size_t>(a)]) out.push_back(static_cast<alt_id>(a));
    return out;
}

std::optional<int> find_dictator(const rule& g) {
    const auto range = range_of(g);
    const auto& dom = g.dom();
    for (int i = 0; i < dom.spec().n; ++i) {
        bool ok = true;
        for (std::size_t k = 0; k < dom.size() && ok; ++k)
            ok = g.choice_at(k) == top_within(dom.at(k).at(i), range);
        if (ok) return i + 1;
    }
    return std::nullopt;
}

std::optional<ubm_violation> is_ubm(const rule& g, const limits& lim) {
    const auto& dom = g.dom();
    const auto& spec = dom.spec();
    if (dom.size() != ipow(factorial(spec.m), spec.n))
        throw std::invalid_argument("UBM is defined on the unrestricted domain only");
    const auto orders = all_orderings(spec.m, lim);
    for (std::size_t i = 0; i < dom.size(); ++i) {
        const profile& u = dom.at(i);
        const alt_id gu = g.choice_at(i);
        for (int h = 0; h < spec.n; ++h) {
            for (const auto& r : orders) {
                if (r == u.at(h)) continue;
                const profile v = u.with(h, r);
                const auto j = dom.index_of(v);
                assert(j);
                const alt_id gv = g.choice_at(*j);
                if (gv == gu || !u.at(h).prefers(gv, gu)) continue;
                for (int k = 0; k < spec.n; ++k) {
                    if (!u.at(k).prefers(gv, gu))
                        return ubm_violation{manipulation{u, h + 1, v, gu, gv}, k + 1};
                }
            }
        }
    }
    return std::nullopt;
}

rule dictator_rule(int individual, domain_ptr dom) {
    if (individual < 1 || individual > dom->spec().n)
        throw std::invalid_argument("dictator index out of range");
    std::vector<alt_id> choice;
    choice.reserve(dom->size());
    for (const auto& p : dom->profiles()) choice.push_back(p.at(individual - 1).top());
    return rule(std::move(dom), std::move(choice));
}

rule restrict_rule(const rule& g, domain_ptr sub) {
    if (sub->spec() != g.dom().spec())
        throw std::invalid_argument("restriction subdomain has a different spec");
    std::vector<alt_id> choice;
    choice.reserve(sub->size());
    for (const auto& p : sub->profiles()) choice.push_back(evaluate(g, p));
    return rule(std::move(sub), std::move(choice));
}

domain_and_rule majority_superset_rule(int n, const limits& lim) {
    if (n % 2 == 0) throw std::invalid_argument("majority needs odd n");
    const auto spec = domain_spec::make(n, 3, "xyz");
    const auto np = enumerate_np(spec, lim);
    std::vector<profile> members(np->profiles());
    // all profiles with z on top for every individual
    const ordering zxy({2, 0, 1});
    const ordering zyx({2, 1, 0});
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<ordering> v;
        v.reserve(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) v.push_back((mask >> i) & 1 ? zyx : zxy);
        members.emplace_back(std::move(v));
    }
    std::sort(members.begin(), members.end());
    auto dom = std::make_shared<domain>(spec, std::move(members));
    std::vector<alt_id> choice;
    choice.reserve(dom->size());
    for (const auto& p : dom->profiles()) {
        if (is_np_member(p)) {
            int for_x = 0;
            for (const auto& o : p.individuals())
                if (o.prefers(0, 1)) ++for_x;
            choice.push_back(for_x > n - for_x ? alt_id{0} : alt_id{1});
        } else {
            choice.push_back(alt_id{2});
        }
    }
    return domain_and_rule{dom, rule(dom, std::move(choice))};
}

rule fixed_menu_rule(std::span<const alt_id> menu, domain_ptr full_dom) {
    const auto& spec = full_dom->spec();
    if (menu.size() != 3) throw std::invalid_argument("the menu has exactly three alternatives");
    if (spec.m <= static_cast<int>(menu.size()))
        throw std::invalid_argument("fixed_menu_rule needs m > 3");
    for (alt_id a : menu)
        if (a >= spec.m) throw std::invalid_argument("menu alternative out of range");
    if (full_dom->size() != ipow(factorial(spec.m), spec.n))
        throw std::invalid_argument("fixed_menu_rule is defined on the unrestricted domain");
    const auto in_menu = [&](alt_id a) {
        return std::find(menu.begin(), menu.end(), a) != menu.end();
    };
    std::vector<alt_id> choice;
    choice.reserve(full_dom->size());
    for (const auto& u : full_dom->profiles()) {
        alt_id psi = 0;
        for (alt_id a : u.at(0).ranks())
            if (in_menu(a)) {
                psi = a;
                break;
            }
        // unique alternative Pareto-dominating the whole menu, if any
        int dominators = 0;
        alt_id dominator = 0;
        for (int x = 0; x < spec.m; ++x) {
            const auto xa = static_cast<alt_id>(x);
            if (in_menu(xa)) continue;
            bool all = true;
            for (alt_id s : menu)
                if (!pareto_dominates(u, xa, s)) {
                    all = false;
                    break;
                }
            if (all) {
                ++dominators;
                dominator = xa;
            }
        }
        choice.push_back(dominators == 1 ? dominator : psi);
    }
    return rule(std::move(full_dom), std::move(choice));
}

rule project_to_range_domain(const rule& g_star, std::span<const alt_id> pad_order,
                             const limits& lim) {
    const auto& big = g_star.dom();
    const auto& big_spec = big.spec();
    const auto range = range_of(g_star);
    if (range.size() < 3) throw std::invalid_argument("range must have at least three alternatives");
    // pad_order must be a permutation of the off-range alternatives
    std::vector<alt_id> off;
    for (int a = 0; a < big_spec.m; ++a)
        if (std::find(range.begin(), range.end(), static_cast<alt_id>(a)) == range.end())
            off.push_back(static_cast<alt_id>(a));
    {
        auto sorted_pad = std::vector<alt_id>(pad_order.begin(), pad_order.end());
        std::sort(sorted_pad.begin(), sorted_pad.end());
        if (sorted_pad != off)
            throw std::invalid_argument("pad order must list exactly the off-range alternatives");
    }
    std::string small_labels;
    for (alt_id a : range) small_labels.push_back(big_spec.label(a));
    const auto small_spec = domain_spec::make(big_spec.n, static_cast<int>(range.size()), small_labels);
    const auto small_dom = enumerate_np(small_spec, lim);

    const auto map_up = [&](const ordering& o) {
        std::vector<alt_id> v;
        v.reserve(static_cast<size_t>(o.size()));
        for (alt_id a : o.ranks()) v.push_back(range[a]);
        return v;
    };
    std::vector<alt_id> choice;
    choice.reserve(small_dom->size());
    for (const auto& u : small_dom->profiles()) {
        std::vector<ordering> padded;
        padded.reserve(static_cast<size_t>(big_spec.n));
        for (int i = 0; i < big_spec.n; ++i) {
            std::vector<alt_id> v;
            v.reserve(static_cast<size_t>(big_spec.m));
            const auto mid = map_up(u.at(i));
            if (i == 0) {
                v.assign(pad_order.begin(), pad_order.end());
                v.insert(v.end(), mid.begin(), mid.end());
            } else {
                v = mid;
                v.insert(v.end(), pad_order.rbegin(), pad_order.rend());
            }
            padded.emplace_back(std::span<const alt_id>(v));
        }
        const profile u_star(std::move(padded));
        if (!is_np_member(u_star))
            throw std::logic_error("padded profile left NP; the construction is broken");
        const auto idx = big.index_of(u_star);
        if (!idx)
            throw std::invalid_argument("g_star's domain must contain every padded profile (NP(n,m))");
        const alt_id big_val = g_star.choice_at(*idx);
        const auto pos = std::find(range.begin(), range.end(), big_val);
        assert(pos != range.end());
        choice.push_back(static_cast<alt_id>(pos - range.begin()));
    }
    return rule(small_dom, std::move(choice));
}

void save_rule(const rule& g, std::ostream& out) {
    const auto& spec = g.dom().spec();
    out << spec.n << ' ' << spec.m << ' ' << spec.labels << '\n';
    for (std::size_t i = 0; i < g.dom().size(); ++i)
        out << format_profile(g.dom().at(i), spec) << " -> " << spec.label(g.choice_at(i)) << '\n';
}

rule load_rule(std::istream& in, domain_ptr dom) {
    const auto& spec = dom->spec();
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("line 1: missing header");
    {
        std::istringstream hdr(line);
        int n = 0, m = 0;
        std::string labels;
        if (!(hdr >> n >> m >> labels)) throw std::runtime_error("line 1: malformed header");
        if (n != spec.n || m != spec.m || labels != spec.labels)
            throw std::runtime_error("line 1: file is over (n=" + std::to_string(n) + ", m=" +
                                     std::to_string(m) + ", labels=" + labels +
                                     "), expected (n=" + std::to_string(spec.n) +
                                     ", m=" + std::to_string(spec.m) + ", labels=" + spec.labels + ")");
    }
    std::vector<int> choice(dom->size(), -1);
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto arrow = line.find("->");
        if (arrow == std::string::npos)
            throw std::runtime_error("line " + std::to_string(lineno) + ": expected '<profile> -> <label>'");
        std::string rhs = line.substr(arrow + 2);
        std::istringstream rs(rhs);
        std::string value;
        if (!(rs >> value) || value.size() != 1)
            throw std::runtime_error("line " + std::to_string(lineno) + ": expected a single label after '->'");
        const int a = spec.alt_of(value[0]);
        if (a < 0)
            throw std::runtime_error("line " + std::to_string(lineno) + ": unknown label '" + value + "'");
        profile p = [&] {
            try {
                return parse_profile(line.substr(0, arrow), spec);
            } catch (const std::runtime_error& e) {
                throw std::runtime_error("line " + std::to_string(lineno) + ": " + e.what());
            }
        }();
        const auto idx = dom->index_of(p);
        if (!idx)
            throw std::runtime_error("line " + std::to_string(lineno) + ": profile '" +
                                     format_profile(p, spec) + "' is not in the domain");
        if (choice[*idx] != -1)
            throw std::runtime_error("line " + std::to_string(lineno) + ": duplicate entry for '" +
                                     format_profile(p, spec) + "'");
        choice[*idx] = a;
    }
    for (std::size_t i = 0; i < choice.size(); ++i)
        if (choice[i] == -1)
            throw std::runtime_error("rule file is missing profile '" +
                                     format_profile(dom->at(i), spec) + "'");
    std::vector<alt_id> out(choice.begin(), choice.end());
    return rule(std::move(dom), std::move(out));
}

}  // namespace npsp
