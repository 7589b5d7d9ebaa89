#include "npsp/core.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace npsp {

namespace {

constexpr const char* default_label_pool = "abcdefghij";

std::uint64_t factorial(int m) {
    std::uint64_t f = 1;
    for (int k = 2; k <= m; ++k) f *= static_cast<std::uint64_t>(k);
    return f;
}

// Lexicographic rank of a full permutation (Lehmer code).
std::uint64_t perm_rank(const ordering& o) {
    const int m = o.size();
    std::uint64_t rank = 0;
    for (int i = 0; i < m; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < m; ++j)
            if (o.at(j) < o.at(i)) ++smaller;
        rank = rank * static_cast<std::uint64_t>(m - i) + static_cast<std::uint64_t>(smaller);
    }
    return rank;
}

void check_enumeration_caps(const domain_spec& spec, const limits& lim) {
    if (spec.m > lim.max_m)
        throw std::invalid_argument("m=" + std::to_string(spec.m) +
                                    " exceeds the alternative cap max_m=" + std::to_string(lim.max_m));
    const std::uint64_t per = factorial(spec.m);
    std::uint64_t total = 1;
    for (int i = 0; i < spec.n; ++i) {
        if (total > lim.max_profiles / per + 1)
            throw std::invalid_argument("m!^n exceeds the profile cap max_profiles=" +
                                        std::to_string(lim.max_profiles));
        total *= per;
    }
    if (total > lim.max_profiles)
        throw std::invalid_argument("m!^n=" + std::to_string(total) +
                                    " exceeds the profile cap max_profiles=" +
                                    std::to_string(lim.max_profiles));
}

template <typename Pred>
domain_ptr enumerate_filtered(const domain_spec& spec, const limits& lim, Pred keep) {
    check_enumeration_caps(spec, lim);
    const auto orders = all_orderings(spec.m, lim);
    std::vector<profile> out;
    std::vector<int> odo(static_cast<size_t>(spec.n), 0);
    std::vector<ordering> current(static_cast<size_t>(spec.n), orders[0]);
    for (;;) {
        profile p(current);
        if (keep(p)) out.push_back(p);
        int i = spec.n - 1;
        while (i >= 0) {
            if (++odo[static_cast<size_t>(i)] < static_cast<int>(orders.size())) {
                current[static_cast<size_t>(i)] = orders[static_cast<size_t>(odo[static_cast<size_t>(i)])];
                break;
            }
            odo[static_cast<size_t>(i)] = 0;
            current[static_cast<size_t>(i)] = orders[0];
            --i;
        }
        if (i < 0) break;
    }
    return std::make_shared<domain>(spec, std::move(out));
}

}  // namespace

ordering::ordering(std::span<const alt_id> ranks) {
    if (ranks.size() > max_alternatives)
        throw std::invalid_argument("ordering longer than the hard alternative bound");
    count_ = static_cast<std::uint8_t>(ranks.size());
    std::copy(ranks.begin(), ranks.end(), seq_.begin());
    for (size_t i = 0; i < ranks.size(); ++i)
        for (size_t j = i + 1; j < ranks.size(); ++j)
            if (seq_[i] == seq_[j]) throw std::invalid_argument("duplicate alternative in ordering");
}

ordering::ordering(std::initializer_list<int> ranks) {
    std::vector<alt_id> v;
    v.reserve(ranks.size());
    for (int a : ranks) v.push_back(static_cast<alt_id>(a));
    *this = ordering(std::span<const alt_id>(v));
}

int ordering::rank_of(alt_id a) const {
    for (int k = 0; k < count_; ++k)
        if (seq_[static_cast<size_t>(k)] == a) return k;
    return -1;
}

bool ordering::prefers(alt_id x, alt_id y) const {
    const int rx = rank_of(x);
    const int ry = rank_of(y);
    if (rx < 0 || ry < 0) throw std::invalid_argument("prefers: alternative not in ordering");
    return rx < ry;
}

ordering ordering::erased(alt_id a) const {
    std::vector<alt_id> v;
    v.reserve(static_cast<size_t>(count_));
    for (alt_id x : ranks())
        if (x != a) v.push_back(x);
    if (v.size() == static_cast<size_t>(count_))
        throw std::invalid_argument("erased: alternative not in ordering");
    return ordering(std::span<const alt_id>(v));
}

ordering ordering::inserted(int rank, alt_id a) const {
    if (rank < 0 || rank > count_) throw std::invalid_argument("inserted: rank out of range");
    std::vector<alt_id> v(ranks().begin(), ranks().end());
    v.insert(v.begin() + rank, a);
    return ordering(std::span<const alt_id>(v));
}

profile::profile(std::vector<ordering> individuals) : individuals_(std::move(individuals)) {
    if (individuals_.empty()) throw std::invalid_argument("profile needs at least one individual");
    for (const auto& o : individuals_)
        if (o.size() != individuals_[0].size())
            throw std::invalid_argument("profile orderings must cover the same alternatives");
}

profile profile::with(int i, ordering o) const {
    auto v = individuals_;
    v[static_cast<size_t>(i)] = std::move(o);
    return profile(std::move(v));
}

domain_spec domain_spec::make(int n, int m, std::string labels) {
    if (n < 1) throw std::invalid_argument("domain spec needs n >= 1");
    if (m < 2 || m > max_alternatives) throw std::invalid_argument("domain spec needs 2 <= m <= 10");
    if (labels.empty()) labels.assign(default_label_pool, static_cast<size_t>(m));
    if (static_cast<int>(labels.size()) != m)
        throw std::invalid_argument("label count must equal m");
    for (size_t i = 0; i < labels.size(); ++i)
        for (size_t j = i + 1; j < labels.size(); ++j)
            if (labels[i] == labels[j]) throw std::invalid_argument("labels must be unique");
    return domain_spec{n, m, std::move(labels)};
}

int domain_spec::alt_of(char label) const {
    const auto pos = labels.find(label);
    return pos == std::string::npos ? -1 : static_cast<int>(pos);
}

domain::domain(domain_spec spec, std::vector<profile> profiles)
    : spec_(std::move(spec)), profiles_(std::move(profiles)) {
    index_.reserve(profiles_.size() * 2);
    for (std::size_t i = 0; i < profiles_.size(); ++i) {
        const auto& p = profiles_[i];
        if (p.n() != spec_.n || p.at(0).size() != spec_.m)
            throw std::invalid_argument("domain profile does not match its spec");
        if (!index_.emplace(profile_code(p, spec_.m), static_cast<std::uint32_t>(i)).second)
            throw std::invalid_argument("duplicate profile in domain");
    }
}

std::optional<std::uint32_t> domain::index_of(const profile& p) const {
    if (p.n() != spec_.n || p.at(0).size() != spec_.m) return std::nullopt;
    const auto it = index_.find(profile_code(p, spec_.m));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<ordering> all_orderings(int m, const limits& lim) {
    if (m < 1) throw std::invalid_argument("all_orderings needs m >= 1");
    if (m > lim.max_m)
        throw std::invalid_argument("m=" + std::to_string(m) +
                                    " exceeds the alternative cap max_m=" + std::to_string(lim.max_m));
    std::vector<alt_id> seq(static_cast<size_t>(m));
    std::iota(seq.begin(), seq.end(), alt_id{0});
    std::vector<ordering> out;
    out.reserve(static_cast<size_t>(factorial(m)));
    do {
        out.emplace_back(std::span<const alt_id>(seq));
    } while (std::next_permutation(seq.begin(), seq.end()));
    return out;
}

ordering restrict_ordering(const ordering& r, std::span<const alt_id> s) {
    if (s.empty()) throw std::invalid_argument("restriction to an empty set");
    std::vector<alt_id> v;
    v.reserve(s.size());
    for (alt_id a : r.ranks())
        if (std::find(s.begin(), s.end(), a) != s.end()) v.push_back(a);
    if (v.size() != s.size())
        throw std::invalid_argument("restriction set is not a subset of the ordering");
    return ordering(std::span<const alt_id>(v));
}

profile restrict_profile(const profile& p, std::span<const alt_id> s) {
    std::vector<ordering> v;
    v.reserve(static_cast<size_t>(p.n()));
    for (const auto& o : p.individuals()) v.push_back(restrict_ordering(o, s));
    return profile(std::move(v));
}

ordering inverse_ordering(const ordering& r) {
    std::vector<alt_id> v(r.ranks().rbegin(), r.ranks().rend());
    return ordering(std::span<const alt_id>(v));
}

bool pareto_dominates(const profile& p, alt_id x, alt_id y) {
    if (x == y) throw std::invalid_argument("pareto_dominates needs distinct alternatives");
    for (const auto& o : p.individuals())
        if (!o.prefers(x, y)) return false;
    return true;
}

bool is_np_member(const profile& p) {
    const auto& alts = p.at(0);
    for (int i = 0; i < alts.size(); ++i) {
        for (int j = i + 1; j < alts.size(); ++j) {
            const alt_id x = alts.at(i);
            const alt_id y = alts.at(j);
            if (pareto_dominates(p, x, y) || pareto_dominates(p, y, x)) return false;
        }
    }
    return true;
}

bool is_vp_member(const profile& p) {
    const int n = p.n();
    if (n % 2 == 0) throw std::invalid_argument("majority comparisons need odd n");
    const auto& alts = p.at(0);
    if (alts.size() < 3) throw std::invalid_argument("voting paradox profiles need m >= 3");
    for (int i = 0; i < alts.size(); ++i) {
        const alt_id x = alts.at(i);
        bool loses = false;
        for (int j = 0; j < alts.size() && !loses; ++j) {
            if (i == j) continue;
            const alt_id y = alts.at(j);
            int for_y = 0;
            for (const auto& o : p.individuals())
                if (o.prefers(y, x)) ++for_y;
            loses = for_y > n - for_y;
        }
        if (!loses) return false;
    }
    return true;
}

std::optional<int> h_variant_of(const profile& p, const profile& q) {
    if (p.n() != q.n() || p.at(0).size() != q.at(0).size())
        throw std::invalid_argument("h_variant_of needs profiles over the same spec");
    int h = 0;
    int count = 0;
    for (int i = 0; i < p.n(); ++i) {
        if (!(p.at(i) == q.at(i))) {
            h = i + 1;
            ++count;
        }
    }
    if (count == 1) return h;
    return std::nullopt;
}

domain_ptr enumerate_full(const domain_spec& spec, const limits& lim) {
    return enumerate_filtered(spec, lim, [](const profile&) { return true; });
}

domain_ptr enumerate_np(const domain_spec& spec, const limits& lim) {
    return enumerate_filtered(spec, lim, [](const profile& p) { return is_np_member(p); });
}

domain_ptr enumerate_vp(const domain_spec& spec, const limits& lim) {
    if (spec.n % 2 == 0)
        throw std::invalid_argument("voting paradox profiles are defined for odd n only");
    if (spec.m < 3) throw std::invalid_argument("voting paradox profiles need m >= 3");
    return enumerate_filtered(spec, lim,
                              [](const profile& p) { return is_np_member(p) && is_vp_member(p); });
}

std::uint64_t profile_code(const profile& p, int m) {
    assert(p.at(0).size() == m);
    const std::uint64_t base = factorial(m);
    std::uint64_t code = 0;
    for (const auto& o : p.individuals()) code = code * base + perm_rank(o);
    return code;
}

ordering parse_ordering(const std::string& token, const domain_spec& spec) {
    if (static_cast<int>(token.size()) != spec.m)
        throw std::runtime_error("ordering '" + token + "' must list all " +
                                 std::to_string(spec.m) + " labels");
    std::vector<alt_id> v;
    v.reserve(token.size());
    for (char c : token) {
        const int a = spec.alt_of(c);
        if (a < 0) throw std::runtime_error("unknown label '" + std::string(1, c) + "' in '" + token + "'");
        if (std::find(v.begin(), v.end(), static_cast<alt_id>(a)) != v.end())
            throw std::runtime_error("duplicate label '" + std::string(1, c) + "' in '" + token + "'");
        v.push_back(static_cast<alt_id>(a));
    }
    return ordering(std::span<const alt_id>(v));
}

std::string format_ordering(const ordering& o, const domain_spec& spec) {
    std::string s;
    s.reserve(static_cast<size_t>(o.size()));
    for (alt_id a : o.ranks()) s.push_back(spec.label(a));
    return s;
}

profile parse_profile(const std::string& text, const domain_spec& spec) {
    std::istringstream in(text);
    std::vector<ordering> v;
    std::string token;
    int pos = 0;
    while (in >> token) {
        ++pos;
        if (pos > spec.n)
            throw std::runtime_error("profile has more than n=" + std::to_string(spec.n) + " orderings");
        try {
            v.push_back(parse_ordering(token, spec));
        } catch (const std::runtime_error& e) {
            throw std::runtime_error("token " + std::to_string(pos) + ": " + e.what());
        }
    }
    if (static_cast<int>(v.size()) != spec.n)
        throw std::runtime_error("profile has " + std::to_string(v.size()) +
                                 " orderings, expected n=" + std::to_string(spec.n));
    return profile(std::move(v));
}

std::string format_profile(const profile& p, const domain_spec& spec) {
    std::string s;
    for (int i = 0; i < p.n(); ++i) {
        if (i) s.push_back(' ');
        s += format_ordering(p.at(i), spec);
    }
    return s;
}

}  // namespace npsp
