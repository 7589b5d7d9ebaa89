#include "npsp/verify.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <ostream>
#include <set>
#include <stdexcept>

namespace npsp {

namespace {

// Deterministic DPLL with two watched literals, chronological backtracking,
// lowest-index branching (true first), and blocking-clause enumeration via
// restarts. No learning; the instances here are desk-scale.
class dpll {
public:
    dpll(int nvars, std::vector<std::vector<int>> clauses)
        : nvars_(nvars), clauses_(std::move(clauses)), value_(static_cast<size_t>(nvars) + 1, 0) {
        watchers_.resize(2 * static_cast<size_t>(nvars) + 2);
        for (std::uint32_t ci = 0; ci < clauses_.size(); ++ci) attach(ci);
    }

    // Runs the DFS from a clean assignment; true when a full model is found.
    bool solve_one() {
        reset();
        if (!init_units() || !propagate()) return false;
        for (;;) {
            int v = pick_var();
            if (v == 0) return true;
            frames_.push_back({v, trail_.size(), false});
            ++decisions_;
            enqueue(v);
            while (!propagate()) {
                while (!frames_.empty() && frames_.back().flipped) {
                    undo_to(frames_.back().trail_size);
                    frames_.pop_back();
                }
                if (frames_.empty()) return false;
                auto& f = frames_.back();
                undo_to(f.trail_size);
                f.flipped = true;
                enqueue(-f.var);
            }
        }
    }

    void add_blocking_clause(const std::vector<int>& lits) {
        clauses_.push_back(lits);
        attach(static_cast<std::uint32_t>(clauses_.size() - 1));
    }

    bool var_true(int v) const { return value_[static_cast<size_t>(v)] > 0; }
    std::uint64_t decisions() const { return decisions_; }
    std::uint64_t propagations() const { return propagations_; }

private:
    struct frame {
        int var;
        std::size_t trail_size;
        bool flipped;
    };

    static std::size_t widx(int lit) {
        return lit > 0 ? 2 * static_cast<size_t>(lit) : 2 * static_cast<size_t>(-lit) + 1;
    }
    bool lit_true(int lit) const {
        const int v = value_[static_cast<size_t>(std::abs(lit))];
        return lit > 0 ? v > 0 : v < 0;
    }
    bool lit_false(int lit) const {
        const int v = value_[static_cast<size_t>(std::abs(lit))];
        return lit > 0 ? v < 0 : v > 0;
    }

    void attach(std::uint32_t ci) {
        auto& c = clauses_[ci];
        if (c.size() >= 2) {
            watchers_[widx(c[0])].push_back(ci);
            watchers_[widx(c[1])].push_back(ci);
        }
    }

    void reset() {
        for (int lit : trail_) value_[static_cast<size_t>(std::abs(lit))] = 0;
        trail_.clear();
        frames_.clear();
        qhead_ = 0;
    }

    bool init_units() {
        for (const auto& c : clauses_) {
            if (c.empty()) return false;
            if (c.size() == 1 && !enqueue(c[0])) return false;
        }
        return true;
    }

    bool enqueue(int lit) {
        if (lit_true(lit)) return true;
        if (lit_false(lit)) return false;
        value_[static_cast<size_t>(std::abs(lit))] = lit > 0 ? 1 : -1;
        trail_.push_back(lit);
        return true;
    }

    void undo_to(std::size_t ts) {
        while (trail_.size() > ts) {
            value_[static_cast<size_t>(std::abs(trail_.back()))] = 0;
            trail_.pop_back();
        }
        qhead_ = ts;
    }

    bool propagate() {
        while (qhead_ < trail_.size()) {
            const int lit = trail_[qhead_++];
            ++propagations_;
            const int flit = -lit;
            auto& ws = watchers_[widx(flit)];
            std::size_t i = 0, keep = 0;
            bool conflict = false;
            for (; i < ws.size(); ++i) {
                const std::uint32_t ci = ws[i];
                auto& c = clauses_[ci];
                if (c[0] == flit) std::swap(c[0], c[1]);
                if (lit_true(c[0])) {
                    ws[keep++] = ci;
                    continue;
                }
                bool moved = false;
                for (std::size_t k = 2; k < c.size(); ++k) {
                    if (!lit_false(c[k])) {
                        std::swap(c[1], c[k]);
                        watchers_[widx(c[1])].push_back(ci);
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                ws[keep++] = ci;
                if (!enqueue(c[0])) {
                    conflict = true;
                    ++i;
                    break;
                }
            }
            while (i < ws.size()) ws[keep++] = ws[i++];
            ws.resize(keep);
            if (conflict) return false;
        }
        return true;
    }

    int pick_var() {
        for (int v = 1; v <= nvars_; ++v)
            if (value_[static_cast<size_t>(v)] == 0) return v;
        return 0;
    }

    int nvars_;
    std::vector<std::vector<int>> clauses_;
    std::vector<std::vector<std::uint32_t>> watchers_;
    std::vector<int8_t> value_;  // 1 true, -1 false, 0 unassigned
    std::vector<int> trail_;
    std::size_t qhead_ = 0;
    std::vector<frame> frames_;
    std::uint64_t decisions_ = 0;
    std::uint64_t propagations_ = 0;
};

bool clause_satisfied(const std::vector<int>& clause, const dpll& s) {
    for (int lit : clause) {
        const bool t = s.var_true(std::abs(lit));
        if ((lit > 0) == t) return true;
    }
    return false;
}

}  // namespace

void constraint_model::add_clause(std::vector<int> lits) {
    for (int lit : lits)
        if (lit == 0 || std::abs(lit) > var_count)
            throw std::invalid_argument("clause literal out of range");
    clauses.push_back(std::move(lits));
}

constraint_model build_sp_model(domain_ptr dom, bool full_range, const limits& lim) {
    if (dom->size() == 0) throw std::invalid_argument("cannot build a model over an empty domain");
    const auto& spec = dom->spec();
    const int m = spec.m;
    constraint_model model;
    model.dom = dom;
    model.var_count = static_cast<int>(dom->size()) * m;
    model.sp_encoded = true;
    model.full_range = full_range;

    // exactly-one per profile
    for (std::uint32_t i = 0; i < dom->size(); ++i) {
        std::vector<int> alo;
        alo.reserve(static_cast<size_t>(m));
        for (int a = 0; a < m; ++a) alo.push_back(model.var(i, static_cast<alt_id>(a)));
        model.add_clause(std::move(alo));
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b)
                model.add_clause({-model.var(i, static_cast<alt_id>(a)),
                                  -model.var(i, static_cast<alt_id>(b))});
    }

    // strategy-proofness over ordered h-variant pairs, deduplicated
    const auto orders = all_orderings(m, lim);
    std::set<std::pair<int, int>> sp_pairs;
    for (std::uint32_t i = 0; i < dom->size(); ++i) {
        const profile& p = dom->at(i);
        for (int h = 0; h < spec.n; ++h) {
            for (const auto& r : orders) {
                if (r == p.at(h)) continue;
                const auto j = dom->index_of(p.with(h, r));
                if (!j) continue;
                for (int a = 0; a < m; ++a) {
                    for (int b = 0; b < m; ++b) {
                        if (a == b || !p.at(h).prefers(static_cast<alt_id>(b), static_cast<alt_id>(a)))
                            continue;
                        const int va = model.var(i, static_cast<alt_id>(a));
                        const int vb = model.var(*j, static_cast<alt_id>(b));
                        sp_pairs.emplace(std::min(va, vb), std::max(va, vb));
                    }
                }
            }
        }
    }
    for (const auto& [va, vb] : sp_pairs) model.add_clause({-va, -vb});

    if (full_range) {
        for (int a = 0; a < m; ++a) {
            std::vector<int> any;
            any.reserve(dom->size());
            for (std::uint32_t i = 0; i < dom->size(); ++i)
                any.push_back(model.var(i, static_cast<alt_id>(a)));
            model.add_clause(std::move(any));
        }
    }
    return model;
}

solve_result enumerate_solutions(const constraint_model& model, int cap, const limits& lim) {
    if (cap < 1) throw std::invalid_argument("solution cap must be at least 1");
    const auto t0 = std::chrono::steady_clock::now();
    const auto& dom = *model.dom;
    const int m = dom.spec().m;
    dpll solver(model.var_count, model.clauses);
    solve_result result;
    while (solver.solve_one()) {
        // decode and re-validate; the solver is not trusted
        std::vector<alt_id> choice(dom.size());
        std::vector<int> block;
        block.reserve(dom.size());
        for (std::uint32_t i = 0; i < dom.size(); ++i) {
            int chosen = -1;
            for (int a = 0; a < m; ++a) {
                if (solver.var_true(model.var(i, static_cast<alt_id>(a)))) {
                    if (chosen >= 0) throw std::logic_error("solver violated an exactly-one group");
                    chosen = a;
                }
            }
            if (chosen < 0) throw std::logic_error("solver left a profile without a choice");
            choice[i] = static_cast<alt_id>(chosen);
            block.push_back(-model.var(i, choice[i]));
        }
        for (const auto& c : model.clauses)
            if (!clause_satisfied(c, solver))
                throw std::logic_error("solver returned an assignment violating a clause");
        rule g(model.dom, std::move(choice));
        if (model.sp_encoded && find_manipulation(g, lim))
            throw std::logic_error("solver solution fails the independent manipulation check");
        if (model.sp_encoded && model.full_range &&
            static_cast<int>(range_of(g).size()) != m)
            throw std::logic_error("solver solution fails the independent range check");
        result.solutions.push_back(std::move(g));
        if (static_cast<int>(result.solutions.size()) >= cap) {
            result.status = solve_status::capped;
            result.stats = {solver.decisions(), solver.propagations(),
                            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
            return result;
        }
        solver.add_blocking_clause(block);
    }
    result.status = result.solutions.empty() ? solve_status::unsat : solve_status::sat;
    result.stats = {solver.decisions(), solver.propagations(),
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
    return result;
}

census_report verify_dictatorship(const domain_spec& spec, int cap, const limits& lim) {
    const auto np = enumerate_np(spec, lim);
    const auto model = build_sp_model(np, true, lim);
    const auto res = enumerate_solutions(model, cap, lim);
    census_report report;
    report.expected = spec.n;
    report.status = res.status;
    report.stats = res.stats;
    std::vector<bool> used(static_cast<size_t>(spec.n) + 1, false);
    report.all_dictatorial = true;
    for (const auto& g : res.solutions) {
        int matched = 0;
        for (int i = 1; i <= spec.n && !matched; ++i)
            if (g == dictator_rule(i, np)) matched = i;
        report.dictators.push_back(matched);
        if (matched == 0 || used[static_cast<size_t>(matched)]) report.all_dictatorial = false;
        if (matched) used[static_cast<size_t>(matched)] = true;
    }
    report.pass = report.status == solve_status::sat &&
                  static_cast<int>(res.solutions.size()) == spec.n && report.all_dictatorial;
    return report;
}

solve_status decisiveness_query(const domain_ptr& np, const profile& u, alt_id alpha,
                                const profile& v, alt_id beta, const limits& lim) {
    const auto ui = np->index_of(u);
    const auto vi = np->index_of(v);
    if (!ui || !vi) throw std::invalid_argument("seed and target profiles must be in the domain");
    if (!is_vp_member(u)) throw std::invalid_argument("seed profile must be a voting paradox profile");
    int j = -1;
    for (int i = 0; i < u.n() && j < 0; ++i)
        if (u.at(i).top() == alpha && u.at(i).bottom() == beta) j = i;
    if (j < 0)
        throw std::invalid_argument("no individual has alpha on top and beta at the bottom of the seed");
    if (!v.at(j).prefers(alpha, beta))
        throw std::invalid_argument("the pivotal individual must rank alpha above beta at the target");
    auto model = build_sp_model(np, true, lim);
    model.add_unit(model.var(*ui, alpha));
    model.add_unit(model.var(*vi, beta));
    const auto res = enumerate_solutions(model, 1, lim);
    return res.solutions.empty() ? solve_status::unsat : solve_status::sat;
}

sweep_report decisive_sweep(const domain_ptr& np, const domain& vp, const limits& lim) {
    const auto base = build_sp_model(np, true, lim);
    sweep_report report;
    for (const auto& u : vp.profiles()) {
        const auto ui = np->index_of(u);
        if (!ui) throw std::invalid_argument("VP domain is not a subset of the NP domain");
        for (int j = 0; j < np->spec().n; ++j) {
            const alt_id alpha = u.at(j).top();
            const alt_id beta = u.at(j).bottom();
            for (std::uint32_t vi = 0; vi < np->size(); ++vi) {
                const profile& v = np->at(vi);
                if (!v.at(j).prefers(alpha, beta)) continue;
                auto model = base;
                model.add_unit(model.var(*ui, alpha));
                model.add_unit(model.var(vi, beta));
                const auto res = enumerate_solutions(model, 1, lim);
                ++report.queries;
                if (res.solutions.empty()) {
                    ++report.unsat;
                } else if (!report.first_sat) {
                    report.first_sat = sweep_counterexample{u, alpha, v, beta};
                }
            }
        }
    }
    return report;
}

solve_status vp_range_check(const domain_ptr& np, alt_id excluded, const limits& lim) {
    auto model = build_sp_model(np, true, lim);
    for (std::uint32_t i = 0; i < np->size(); ++i)
        if (is_vp_member(np->at(i))) model.add_unit(-model.var(i, excluded));
    const auto res = enumerate_solutions(model, 1, lim);
    return res.solutions.empty() ? solve_status::unsat : solve_status::sat;
}

std::vector<dimacs_entry> export_dimacs(const constraint_model& model, std::ostream& out) {
    out << "p cnf " << model.var_count << ' ' << model.clauses.size() << '\n';
    for (const auto& c : model.clauses) {
        for (int lit : c) out << lit << ' ';
        out << "0\n";
    }
    if (!out) throw std::runtime_error("failed writing DIMACS output");
    std::vector<dimacs_entry> map;
    const auto& spec = model.dom->spec();
    map.reserve(model.dom->size() * static_cast<size_t>(spec.m));
    for (std::uint32_t i = 0; i < model.dom->size(); ++i) {
        const auto text = format_profile(model.dom->at(i), spec);
        for (int a = 0; a < spec.m; ++a)
            map.push_back({text, spec.label(static_cast<alt_id>(a)),
                           model.var(i, static_cast<alt_id>(a))});
    }
    return map;
}

}  // namespace npsp
