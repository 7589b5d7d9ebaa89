// S-paths: sequences of NP profiles joining two endpoints, stepping one
// individual at a time while keeping every restriction to S fixed. Provides
// the constructive builder, an independent BFS reachability oracle, and the
// range-fiber equivalence check for strategy-proof rules.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "npsp/core.hpp"
#include "npsp/rules.hpp"

namespace npsp {

struct spath {
    std::vector<alt_id> s_set;    // the fixed restriction set S
    std::vector<profile> steps;   // u_1 .. u_T, all in NP
};

struct spath_violation {
    std::string what;
    int step = 0;  // offending step (or left element of an offending pair)
};

// Checks all four path conditions with endpoints u and v plus NP membership
// of every step. Violations are reported, never thrown.
std::optional<spath_violation> validate_spath(const spath& path, const profile& u,
                                              const profile& v);

// Path between u and v that agree on everything except alternative x,
// routed through the pivot profile (x top for individual 1, bottom for the
// others, remaining ranks unchanged). Endpoints must be NP members.
spath build_spath_codim1(const profile& u, const profile& v, alt_id x);

// Path between any u, v in NP with u|S = v|S, built by staging one
// off-S alternative at a time through pivot profiles.
spath build_spath(const profile& u, const profile& v, std::vector<alt_id> s_set);

// Breadth-first search over the fiber {w in dom : w|S = u|S} with h-variant
// edges; returns a shortest path, or nullopt when v is unreachable.
std::optional<spath> bfs_spath_oracle(const profile& u, const profile& v,
                                      std::vector<alt_id> s_set, const domain& dom,
                                      const limits& lim = {});

struct equivalence_report {
    bool ok = false;
    std::optional<std::pair<profile, profile>> violation;  // first fiber disagreement
};

// For strategy-proof g with range S: g must be constant on every fiber
// {u : u|S fixed}. Throws when g is manipulable (the hypothesis fails).
equivalence_report check_equivalence(const rule& g, const limits& lim = {});

}  // namespace npsp
