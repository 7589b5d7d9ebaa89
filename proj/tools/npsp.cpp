// Command-line front end: domain statistics, rule checking, path
// construction, and the solver-backed verification commands, with
// machine-readable JSON reports.
//
// Exit status: 0 when every asserted property holds, 1 on a property
// violation, 2 on usage errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "npsp/core.hpp"
#include "npsp/lift.hpp"
#include "npsp/rules.hpp"
#include "npsp/spath.hpp"
#include "npsp/verify.hpp"

namespace {

constexpr const char* npsp_version = "0.1.0";

using json = nlohmann::ordered_json;
using namespace npsp;

struct run_config {
    int n = 3;
    int m = 3;
    std::string labels;
    std::string output = "text";
    int cap = 64;
    std::uint64_t seed = 0;
    bool stretch = false;
};

struct command_result {
    json report;
    bool pass = true;
};

json config_json(const run_config& cfg) {
    return json{{"n", cfg.n},     {"m", cfg.m},       {"labels", cfg.labels},
                {"cap", cfg.cap}, {"seed", cfg.seed}, {"stretch", cfg.stretch}};
}

domain_spec spec_of(const run_config& cfg) { return domain_spec::make(cfg.n, cfg.m, cfg.labels); }

void require_stretch(const run_config& cfg, const std::string& what) {
    if (!cfg.stretch)
        throw CLI::ValidationError(what + " is a stretch-sized run; pass --stretch to enable it");
}

std::string label_string(const std::vector<alt_id>& alts, const domain_spec& spec) {
    std::string s;
    for (alt_id a : alts) s.push_back(spec.label(a));
    return s;
}

json witness_json(const manipulation& w, const domain_spec& spec) {
    return json{{"at", format_profile(w.at, spec)},
                {"by", w.by},
                {"via", format_profile(w.via, spec)},
                {"sincere", std::string(1, spec.label(w.sincere_outcome))},
                {"manipulated", std::string(1, spec.label(w.manipulated_outcome))}};
}

json rule_report(const rule& g) {
    const auto& spec = g.dom().spec();
    const auto w = find_manipulation(g);
    const auto d = find_dictator(g);
    json r{{"strategy_proof", !w.has_value()},
           {"range", label_string(range_of(g), spec)},
           {"dictator", d ? json(*d) : json(nullptr)}};
    if (w) r["witness"] = witness_json(*w, spec);
    return r;
}

// --- subcommand payloads -------------------------------------------------

command_result cmd_domain_stats(const run_config& cfg) {
    const auto spec = spec_of(cfg);
    const auto full = enumerate_full(spec);
    const auto np = enumerate_np(spec);
    json report{{"total", full->size()}, {"np", np->size()}};
    if (spec.n % 2 == 1 && spec.m >= 3)
        report["vp"] = enumerate_vp(spec)->size();
    else
        report["vp"] = nullptr;
    return {report, true};
}

rule load_rule_file(const std::string& path, const std::string& domain_kind) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot open rule file: " + path);
    std::string header;
    if (!std::getline(in, header)) throw CLI::ValidationError("empty rule file: " + path);
    std::istringstream hs(header);
    int n = 0, m = 0;
    std::string labels;
    if (!(hs >> n >> m >> labels))
        throw CLI::ValidationError("malformed rule file header: " + header);
    const auto spec = domain_spec::make(n, m, labels);

    domain_ptr dom;
    if (domain_kind == "np") {
        dom = enumerate_np(spec);
    } else if (domain_kind == "full") {
        dom = enumerate_full(spec);
    } else if (domain_kind == "file") {
        std::vector<profile> profiles;
        std::string line;
        while (std::getline(in, line)) {
            const auto arrow = line.find("->");
            if (arrow == std::string::npos) continue;
            profiles.push_back(parse_profile(line.substr(0, arrow), spec));
        }
        std::sort(profiles.begin(), profiles.end());
        dom = std::make_shared<domain>(spec, std::move(profiles));
    } else {
        throw CLI::ValidationError("unknown domain kind: " + domain_kind);
    }
    std::ifstream again(path);
    return load_rule(again, dom);
}

command_result cmd_check_rule(const std::string& path, const std::string& domain_kind) {
    const auto g = load_rule_file(path, domain_kind);
    return {rule_report(g), true};
}

command_result cmd_find_dictator(const std::string& path, const std::string& domain_kind) {
    const auto g = load_rule_file(path, domain_kind);
    const auto d = find_dictator(g);
    return {json{{"dictator", d ? json(*d) : json(nullptr)}}, true};
}

std::vector<alt_id> parse_s_set(const std::string& s_labels, const domain_spec& spec) {
    std::vector<alt_id> s;
    for (char c : s_labels) {
        const int a = spec.alt_of(c);
        if (a < 0) throw CLI::ValidationError("unknown label in S: " + std::string(1, c));
        s.push_back(static_cast<alt_id>(a));
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

command_result cmd_spath(const run_config& cfg, const std::string& u_text,
                         const std::string& v_text, const std::string& s_labels, int sample) {
    const auto spec = spec_of(cfg);
    const auto np = enumerate_np(spec);
    const auto s = parse_s_set(s_labels, spec);

    json report{{"s", s_labels}};
    bool pass = true;

    if (sample > 0) {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_int_distribution<std::size_t> pick(0, np->size() - 1);
        int built = 0, checked = 0;
        std::size_t longest = 0;
        while (checked < sample) {
            const auto& u = np->at(pick(rng));
            const auto& v = np->at(pick(rng));
            ++checked;
            const bool same_fiber =
                s.empty() || restrict_profile(u, s) == restrict_profile(v, s);
            if (!same_fiber) continue;
            const auto path = build_spath(u, v, s);
            if (validate_spath(path, u, v)) pass = false;
            if (!bfs_spath_oracle(u, v, s, *np)) pass = false;
            longest = std::max(longest, path.steps.size());
            ++built;
        }
        report["sampled"] = checked;
        report["built"] = built;
        report["longest"] = longest;
        report["valid"] = pass;
        return {report, pass};
    }

    const auto u = parse_profile(u_text, spec);
    const auto v = parse_profile(v_text, spec);
    const auto path = build_spath(u, v, s);
    const auto err = validate_spath(path, u, v);
    const auto oracle = bfs_spath_oracle(u, v, s, *np);
    pass = !err.has_value() && oracle.has_value();
    report["length"] = path.steps.size();
    report["valid"] = !err.has_value();
    report["bfs_reachable"] = oracle.has_value();
    if (oracle) report["bfs_shortest"] = oracle->steps.size();
    json steps = json::array();
    for (const auto& w : path.steps) steps.push_back(format_profile(w, spec));
    report["steps"] = steps;
    return {report, pass};
}

command_result cmd_verify_basis(const run_config& cfg) {
    const auto spec = spec_of(cfg);
    if (!(spec.n == 3 && spec.m == 3)) require_stretch(cfg, "verify-basis beyond (3,3)");
    const auto report = verify_dictatorship(spec, cfg.cap);
    json r{{"expected", report.expected},
           {"solutions", report.dictators.size()},
           {"all_dictatorial", report.all_dictatorial},
           {"dictators", report.dictators},
           {"complete", report.status == solve_status::sat},
           {"stats",
            json{{"decisions", report.stats.decisions}, {"propagations", report.stats.propagations}}},
           {"pass", report.pass}};
    return {r, report.pass};
}

command_result cmd_verify_lift(const run_config& cfg) {
    require_stretch(cfg, "verify-lift");
    const auto big = domain_spec::make(cfg.n, cfg.m, cfg.labels);
    const auto np_big = enumerate_np(big);
    const auto res = enumerate_solutions(build_sp_model(np_big, true), cfg.cap);

    bool pass = res.status == solve_status::sat &&
                static_cast<int>(res.solutions.size()) == big.n;
    json per_solution = json::array();
    for (const auto& g : res.solutions) {
        const auto d = find_dictator(g);
        const auto last = project_clone(g, clone_end::last);
        const auto first = project_clone(g, clone_end::first);
        const auto d_last = find_dictator(last);
        const auto d_first = find_dictator(first);
        const bool sp = !find_manipulation(last) && !find_manipulation(first);
        bool transport = d.has_value() && d_last.has_value() && d_first.has_value();
        if (transport) {
            const int expected_last = std::min(*d, big.n - 1);
            const int expected_first = std::max(*d - 1, 1);
            transport = *d_last == expected_last && *d_first == expected_first;
        }
        const bool conflict_ok = check_projection_conflict(g).hypothesis_failed;
        pass = pass && sp && transport && conflict_ok;
        per_solution.push_back(json{{"dictator", d ? json(*d) : json(nullptr)},
                                    {"projection_last", d_last ? json(*d_last) : json(nullptr)},
                                    {"projection_first", d_first ? json(*d_first) : json(nullptr)},
                                    {"projections_strategy_proof", sp},
                                    {"transport_correct", transport},
                                    {"conflict_impossible", conflict_ok}});
    }
    json r{{"solutions", res.solutions.size()},
           {"expected", big.n},
           {"per_solution", per_solution},
           {"pass", pass}};
    return {r, pass};
}

merge_spec parse_merge(const std::string& text, const domain_spec& big) {
    // "w,z=x" over the big alphabet's labels
    if (text.size() != 5 || text[1] != ',' || text[3] != '=')
        throw CLI::ValidationError("merge spec must look like w,z=x (single labels)");
    const int w = big.alt_of(text[0]);
    const int z = big.alt_of(text[2]);
    if (w < 0 || z < 0) throw CLI::ValidationError("merge labels must belong to the alphabet");
    return merge_spec::make(big, static_cast<alt_id>(w), static_cast<alt_id>(z), text[4]);
}

command_result cmd_verify_merge(const run_config& cfg, const std::string& merge_text) {
    const auto big = spec_of(cfg);
    const auto ms = parse_merge(merge_text, big);
    const auto np_big = enumerate_np(big);

    bool pass = true;
    json per_rule = json::array();
    for (int d = 1; d <= big.n; ++d) {
        const auto g = dictator_rule(d, np_big);
        const auto wd = check_merge_well_defined(g, ms);
        const auto projected = project_merge(g, ms);
        const bool sp = !find_manipulation(projected).has_value();
        const auto after = find_dictator(projected);
        const bool ok = wd.well_defined && sp && after.has_value() && *after == d;
        pass = pass && ok;
        per_rule.push_back(json{{"well_defined", wd.well_defined},
                                {"sp_preserved", sp},
                                {"dictator_before", d},
                                {"dictator_after", after ? json(*after) : json(nullptr)}});
    }
    json r{{"merge", merge_text},
           {"small_labels", ms.small_spec.labels},
           {"per_rule", per_rule},
           {"pass", pass}};
    return {r, pass};
}

command_result cmd_decisive_sweep(const run_config& cfg) {
    const auto spec = spec_of(cfg);
    if (!(spec.n == 3 && spec.m == 3)) require_stretch(cfg, "decisive-sweep beyond (3,3)");
    const auto np = enumerate_np(spec);
    const auto vp = enumerate_vp(spec);
    const auto report = decisive_sweep(np, *vp);
    json r{{"queries", report.queries}, {"unsat", report.unsat}, {"pass", report.pass()}};
    if (report.first_sat) {
        const auto& c = *report.first_sat;
        r["counterexample"] = json{{"seed", format_profile(c.seed_profile, spec)},
                                   {"alpha", std::string(1, spec.label(c.alpha))},
                                   {"target", format_profile(c.target_profile, spec)},
                                   {"beta", std::string(1, spec.label(c.beta))}};
    }
    return {r, report.pass()};
}

command_result cmd_export_cnf(const run_config& cfg, const std::string& out_path,
                              bool full_range) {
    const auto spec = spec_of(cfg);
    const auto np = enumerate_np(spec);
    const auto model = build_sp_model(np, full_range);
    std::ofstream cnf(out_path);
    if (!cnf) throw CLI::ValidationError("cannot open output file: " + out_path);
    const auto map = export_dimacs(model, cnf);
    const std::string map_path = out_path + ".map";
    std::ofstream ms(map_path);
    if (!ms) throw CLI::ValidationError("cannot open output file: " + map_path);
    for (const auto& e : map) ms << e.profile_text << ' ' << e.label << ' ' << e.variable << '\n';
    json r{{"variables", model.var_count},
           {"clauses", model.clauses.size()},
           {"cnf", out_path},
           {"map", map_path}};
    return {r, true};
}

void maybe_save(const rule& g, const std::string& path, json& report) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw CLI::ValidationError("cannot open output file: " + path);
    save_rule(g, out);
    report["saved"] = path;
}

command_result cmd_demo(const run_config& cfg, const std::string& which, int individual,
                        const std::string& save_path) {
    if (which == "majority-superset") {
        if (cfg.n % 2 == 0) throw CLI::ValidationError("majority-superset needs odd n");
        const auto built = majority_superset_rule(cfg.n);
        auto r = rule_report(built.g);
        r["domain_size"] = built.dom->size();
        const bool pass = r["strategy_proof"] == true && r["dictator"].is_null() &&
                          r["range"] == built.dom->spec().labels;
        r["pass"] = pass;
        maybe_save(built.g, save_path, r);
        return {r, pass};
    }
    if (which == "ubm-menu") {
        const auto spec = domain_spec::make(cfg.n, cfg.m > 3 ? cfg.m : 4, cfg.labels);
        if (!(spec.n == 3 && spec.m == 4)) require_stretch(cfg, "ubm-menu beyond (3,4)");
        const std::vector<alt_id> menu{0, 1, 2};
        const auto g = fixed_menu_rule(menu, enumerate_full(spec));
        const auto viol = is_ubm(g);
        const auto restriction = restrict_rule(g, enumerate_np(spec));
        const bool restriction_sp = !find_manipulation(restriction).has_value();
        const auto rng = range_of(restriction);
        const bool pass = !viol.has_value() && restriction_sp && rng == menu;
        json r{{"ubm", !viol.has_value()},
               {"full_range", range_of(g).size() == static_cast<std::size_t>(spec.m)},
               {"restriction_strategy_proof", restriction_sp},
               {"restriction_range", label_string(rng, spec)},
               {"pass", pass}};
        return {r, pass};
    }
    if (which == "dictator") {
        const auto spec = spec_of(cfg);
        const auto g = dictator_rule(individual, enumerate_np(spec));
        auto r = rule_report(g);
        const bool pass = r["strategy_proof"] == true && r["dictator"] == individual;
        r["pass"] = pass;
        maybe_save(g, save_path, r);
        return {r, pass};
    }
    throw CLI::ValidationError("unknown demo rule: " + which +
                               " (expected majority-superset | ubm-menu | dictator)");
}

void print_text(const json& envelope) {
    const auto& report = envelope["report"];
    for (const auto& [key, value] : report.items())
        std::cout << key << ": " << value.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification toolkit for strategy-proof social choice on non-Paretian domains"};
    app.require_subcommand(1);
    app.fallthrough();  // shared flags may follow the subcommand
    app.set_version_flag("--version", npsp_version);

    run_config cfg;
    app.add_option("--n", cfg.n, "number of individuals")->capture_default_str();
    app.add_option("--m", cfg.m, "number of alternatives")->capture_default_str();
    app.add_option("--labels", cfg.labels, "alternative labels (defaults to abc...)");
    app.add_option("--output", cfg.output, "report format: text | json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--cap", cfg.cap, "solution cap for enumeration")->capture_default_str();
    app.add_option("--seed", cfg.seed, "sampling seed")->capture_default_str();
    app.add_flag("--stretch", cfg.stretch, "enable stretch-sized runs such as (4,3)");

    std::string rule_file, domain_kind = "np", u_text, v_text, s_labels, merge_text,
                cnf_out, demo_rule = "majority-superset", save_path;
    int sample = 0, individual = 1;
    bool no_full_range = false;

    auto* stats = app.add_subcommand("domain-stats", "profile counts for a spec");
    auto* check = app.add_subcommand("check-rule", "strategy-proofness report for a rule file");
    check->add_option("--rule-file", rule_file, "rule table file")->required();
    check->add_option("--domain", domain_kind, "np | full | file")->capture_default_str();
    auto* findd = app.add_subcommand("find-dictator", "dictator of a rule file, if any");
    findd->add_option("--rule-file", rule_file, "rule table file")->required();
    findd->add_option("--domain", domain_kind, "np | full | file")->capture_default_str();
    auto* spathc = app.add_subcommand("spath", "construct and validate an S-path");
    spathc->add_option("--u", u_text, "first endpoint profile");
    spathc->add_option("--v", v_text, "second endpoint profile");
    spathc->add_option("--s", s_labels, "labels of the fixed set S (may be empty)");
    spathc->add_option("--sample", sample, "validate this many seeded random pairs instead");
    auto* basis = app.add_subcommand("verify-basis",
                                     "enumerate all full-range strategy-proof rules");
    auto* liftc = app.add_subcommand("verify-lift", "clone projections at (n,3)");
    auto* mergec = app.add_subcommand("verify-merge", "fused-pair projections at (n,m)");
    mergec->add_option("--merge", merge_text, "fused pair, e.g. c,d=x")->required();
    auto* sweep = app.add_subcommand("decisive-sweep", "decisiveness queries over VP seeds");
    auto* cnf = app.add_subcommand("export-cnf", "write the model as DIMACS CNF");
    cnf->add_option("--cnf-out", cnf_out, "output path")->required();
    cnf->add_flag("--no-full-range", no_full_range, "drop the full-range clauses");
    auto* demo = app.add_subcommand("demo", "build and check a named example rule");
    demo->add_option("--rule", demo_rule, "majority-superset | ubm-menu | dictator")
        ->capture_default_str();
    demo->add_option("--i", individual, "dictator index for --rule dictator")
        ->capture_default_str();
    demo->add_option("--save", save_path, "write the rule table to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        command_result result;
        std::string command;
        if (stats->parsed()) {
            command = "domain-stats";
            result = cmd_domain_stats(cfg);
        } else if (check->parsed()) {
            command = "check-rule";
            result = cmd_check_rule(rule_file, domain_kind);
        } else if (findd->parsed()) {
            command = "find-dictator";
            result = cmd_find_dictator(rule_file, domain_kind);
        } else if (spathc->parsed()) {
            command = "spath";
            if (sample <= 0 && (u_text.empty() || v_text.empty()))
                throw CLI::ValidationError("spath needs --u and --v, or --sample");
            result = cmd_spath(cfg, u_text, v_text, s_labels, sample);
        } else if (basis->parsed()) {
            command = "verify-basis";
            result = cmd_verify_basis(cfg);
        } else if (liftc->parsed()) {
            command = "verify-lift";
            if (cfg.n == 3 && cfg.m == 3) cfg.n = 4;  // the natural lift instance
            result = cmd_verify_lift(cfg);
        } else if (mergec->parsed()) {
            command = "verify-merge";
            if (cfg.m == 3) cfg.m = 4;  // merging needs a bigger alphabet
            result = cmd_verify_merge(cfg, merge_text);
        } else if (sweep->parsed()) {
            command = "decisive-sweep";
            result = cmd_decisive_sweep(cfg);
        } else if (cnf->parsed()) {
            command = "export-cnf";
            result = cmd_export_cnf(cfg, cnf_out, !no_full_range);
        } else {
            command = "demo";
            result = cmd_demo(cfg, demo_rule, individual, save_path);
        }

        json envelope{{"tool", "npsp"},
                      {"version", npsp_version},
                      {"command", command},
                      {"config", config_json(cfg)},
                      {"report", result.report}};
        if (cfg.output == "json")
            std::cout << envelope.dump(2) << '\n';
        else
            print_text(envelope);
        return result.pass ? 0 : 1;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
