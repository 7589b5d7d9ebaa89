// Core domain types: orderings, profiles, domain specs, and enumeration of
// the non-Paretian domain NP(n,m) and related profile sets.
//
// Conventions: alternatives are dense indices [0, m) internally; display
// labels exist only at the codec boundary. Individuals are stored 0-based in
// profiles but numbered 1..n in every public parameter and report. All values
// are immutable after construction; every operation is a pure function.

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace npsp {

using alt_id = std::uint8_t;

// Hard storage bound; the configurable cap in `limits` is tighter.
inline constexpr int max_alternatives = 10;

struct limits {
    int max_m = 6;                             // enumeration cap on alternatives
    std::uint64_t max_profiles = 10'000'000;   // cap on m!^n for domain enumeration
};

// A strict linear order on a set of alternatives, most-preferred first.
// Full orderings cover [0, m); restrictions keep original ids over a subset.
class ordering {
public:
    ordering() = default;
    explicit ordering(std::span<const alt_id> ranks);
    explicit ordering(std::initializer_list<int> ranks);

    int size() const { return count_; }
    alt_id at(int rank) const { return seq_[static_cast<size_t>(rank)]; }
    alt_id top() const { return seq_[0]; }
    alt_id bottom() const { return seq_[static_cast<size_t>(count_ - 1)]; }
    std::span<const alt_id> ranks() const { return {seq_.data(), static_cast<size_t>(count_)}; }

    // Rank of `a`, or -1 when absent.
    int rank_of(alt_id a) const;
    bool contains(alt_id a) const { return rank_of(a) >= 0; }
    // True when x is strictly above y; both must be present.
    bool prefers(alt_id x, alt_id y) const;

    ordering erased(alt_id a) const;
    ordering inserted(int rank, alt_id a) const;

    auto operator<=>(const ordering&) const = default;

private:
    std::uint8_t count_ = 0;
    std::array<alt_id, max_alternatives> seq_{};
};

// One ordering per individual. Individuals are 0-based here.
class profile {
public:
    profile() = default;
    explicit profile(std::vector<ordering> individuals);

    int n() const { return static_cast<int>(individuals_.size()); }
    const ordering& at(int i) const { return individuals_[static_cast<size_t>(i)]; }
    const std::vector<ordering>& individuals() const { return individuals_; }
    profile with(int i, ordering o) const;

    auto operator<=>(const profile&) const = default;

private:
    std::vector<ordering> individuals_;
};

struct domain_spec {
    int n = 0;
    int m = 0;
    std::string labels;  // m unique display characters

    static domain_spec make(int n, int m, std::string labels = {});
    char label(alt_id a) const { return labels[a]; }
    // -1 when the character is not a label.
    int alt_of(char label) const;
    auto operator<=>(const domain_spec&) const = default;
};

// An enumerated, indexed profile set with a fixed canonical order
// (lexicographic on concatenated rank sequences).
class domain {
public:
    domain(domain_spec spec, std::vector<profile> profiles);

    const domain_spec& spec() const { return spec_; }
    std::size_t size() const { return profiles_.size(); }
    const profile& at(std::size_t i) const { return profiles_[i]; }
    const std::vector<profile>& profiles() const { return profiles_; }
    std::optional<std::uint32_t> index_of(const profile& p) const;
    bool contains(const profile& p) const { return index_of(p).has_value(); }

private:
    domain_spec spec_;
    std::vector<profile> profiles_;
    std::unordered_map<std::uint64_t, std::uint32_t> index_;
};

using domain_ptr = std::shared_ptr<const domain>;

// All m! full orderings in lexicographic order of their rank sequences.
std::vector<ordering> all_orderings(int m, const limits& lim = {});

// Restriction of r to the nonempty subset s, order preserved.
ordering restrict_ordering(const ordering& r, std::span<const alt_id> s);
profile restrict_profile(const profile& p, std::span<const alt_id> s);

ordering inverse_ordering(const ordering& r);

// True when every individual ranks x above y. x != y required.
bool pareto_dominates(const profile& p, alt_id x, alt_id y);

// True when no ordered pair of alternatives is Pareto-dominated.
bool is_np_member(const profile& p);

// True when every alternative loses some pairwise majority comparison.
// Majority needs odd n; m >= 3 required.
bool is_vp_member(const profile& p);

// The unique differing individual (1-based) when p and q differ in exactly
// one ordering; nullopt when p == q or two or more differ.
std::optional<int> h_variant_of(const profile& p, const profile& q);

domain_ptr enumerate_full(const domain_spec& spec, const limits& lim = {});
domain_ptr enumerate_np(const domain_spec& spec, const limits& lim = {});
domain_ptr enumerate_vp(const domain_spec& spec, const limits& lim = {});

// Canonical position key: mixed-radix over per-individual permutation ranks.
// Requires full orderings.
std::uint64_t profile_code(const profile& p, int m);

// Text codec. A profile is n whitespace-separated tokens, each a permutation
// of the m labels, most-preferred first.
profile parse_profile(const std::string& text, const domain_spec& spec);
std::string format_profile(const profile& p, const domain_spec& spec);
ordering parse_ordering(const std::string& token, const domain_spec& spec);
std::string format_ordering(const ordering& o, const domain_spec& spec);

}  // namespace npsp
