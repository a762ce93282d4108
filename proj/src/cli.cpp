#include "adversim/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <utility>

#include "CLI11.hpp"
#include "adversim/adversary.hpp"
#include "adversim/complex.hpp"
#include "adversim/engine.hpp"
#include "adversim/graph.hpp"
#include "adversim/oracle.hpp"
#include "adversim/protocols.hpp"
#include "json.hpp"

namespace adversim::cli {

namespace {

using adversary::AdversarySpec;
using adversary::PairSchedule;
using engine::ExecutionTrace;
using nlohmann::json;

std::uint64_t branch_cap_from_env(std::uint64_t fallback) {
    if (const char* s = std::getenv("ADVERSIM_BUDGET")) {
        return std::stoull(s);
    }
    return fallback;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path);
}

void emit_json(const json& j, const std::string& path) {
    const std::string text = j.dump(2) + "\n";
    if (path.empty()) {
        std::cout << text;
    } else {
        write_text(path, text);
    }
}

struct SimulateConfig {
    int n = 3;
    std::string spec = "tp-complete";
    std::string protocol = "full-info";
    int rounds = -1;  // per-protocol default
    std::uint64_t seed = 0;
    int writes = 1;
    std::string out;
    bool dump_states = false;
};

int cmd_simulate(const SimulateConfig& cfg) {
    const auto spec = AdversarySpec::parse(cfg.spec, cfg.n);
    engine::RunOptions opts;
    opts.dump_states = cfg.dump_states;

    ExecutionTrace trace;
    int exit_code = kExitOk;
    try {
        if (cfg.protocol == "full-info") {
            const int rounds = cfg.rounds < 0 ? 1 : cfg.rounds;
            std::vector<json> inputs;
            for (int i = 0; i < cfg.n; ++i) inputs.push_back(i);
            trace = engine::run(engine::FullInformationProtocol{}, spec, rounds, inputs,
                                cfg.seed, opts)
                        .trace;
        } else if (cfg.protocol == "gossip") {
            const int rounds = cfg.rounds < 0 ? 2 * cfg.n - 1 : cfg.rounds;
            if (spec.kind() == adversary::Kind::tp && rounds == 2 * cfg.n - 1) {
                trace = protocols::emulate_tp_complete_over_tp(cfg.n, cfg.seed).trace;
            } else {
                auto run = engine::run(protocols::GossipProtocol{}, spec, rounds,
                                       protocols::id_items(cfg.n), cfg.seed, opts);
                graph::Rcg emulated(cfg.n);
                for (int j = 0; j < cfg.n; ++j) {
                    for (int i : run.final_states()[static_cast<std::size_t>(j)].ids) {
                        if (i != j) emulated.add_edge(i, j);
                    }
                }
                run.trace.result = {{"emulated", emulated.to_json()}};
                trace = run.trace;
            }
        } else if (cfg.protocol == "snapshot") {
            const int rounds = cfg.rounds < 0 ? cfg.n : cfg.rounds;
            if (spec.kind() == adversary::Kind::tp_complete && rounds == cfg.n) {
                trace = protocols::snapshot_over_tp_complete(cfg.n, cfg.seed).trace;
            } else {
                trace = engine::run(protocols::SnapshotProtocol{}, spec, rounds,
                                    protocols::id_items(cfg.n), cfg.seed, opts)
                            .trace;
            }
        } else if (cfg.protocol == "register") {
            if (spec.kind() != adversary::Kind::tp_complete)
                throw std::invalid_argument("register simulation runs under tp-complete");
            const int budget = cfg.rounds < 0 ? 64 * cfg.n * cfg.writes : cfg.rounds;
            auto res = protocols::simulate_rwwf(cfg.n, cfg.writes, budget, cfg.seed);
            trace = res.trace;
            if (!res.outcome.all_done) {
                std::cerr << "note: round budget " << budget
                          << " exhausted before all processors finished\n";
            }
        } else {
            throw std::invalid_argument("unknown protocol '" + cfg.protocol + "'");
        }
    } catch (const engine::ViolationError& e) {
        trace = e.trace();
        exit_code = kExitViolation;
        std::cerr << "violation: " << e.what() << "\n";
    }

    emit_json(trace.to_json(), cfg.out);
    if (exit_code == kExitOk) {
        std::cerr << "trace: n=" << trace.n << " spec=" << trace.spec
                  << " protocol=" << trace.protocol << " rounds=" << trace.rounds.size()
                  << "\n";
    }
    return exit_code;
}

struct ExhaustiveConfig {
    int n = 3;
    std::string spec;  // empty: per-property default
    std::string property = "snapshot-valid";
    int rounds = -1;
    int writes = 1;
    int jobs = 1;
    std::uint64_t branch_cap = 100'000'000;
    std::uint64_t fallback_trials = 10'000;
    std::string out;
};

json verdict_json(const engine::Verdict& v) {
    json j;
    j["mode"] = "exhaustive";
    j["all_hold"] = v.all_hold;
    j["executions"] = v.executions;
    if (!v.all_hold) {
        j["counterexample_branch"] = v.branch;
        j["counterexample"] = v.counterexample->to_json();
    }
    return j;
}

int report_verdict(const engine::Verdict& verdict, const std::string& out) {
    emit_json(verdict_json(verdict), out);
    if (verdict.all_hold) {
        std::cerr << "all " << verdict.executions << " executions hold\n";
        return kExitOk;
    }
    std::cerr << "counterexample found\n";
    return kExitViolation;
}

// Exhaustion is impossible past the branch cap; falls back to seeded
// sampling of the same property so the run still reports evidence.
template <class RunProperty>
int sampling_fallback(const BudgetError& budget, const ExhaustiveConfig& cfg,
                      RunProperty&& run_property) {
    std::cerr << "branch tree needs " << budget.count << " executions > cap " << budget.cap
              << "; sampling fallback with " << cfg.fallback_trials << " seeded trials\n";
    json j;
    j["mode"] = "sampling-fallback";
    j["branch_count"] = budget.count;
    j["branch_cap"] = budget.cap;
    j["trials"] = cfg.fallback_trials;
    std::uint64_t violations = 0;
    std::optional<std::uint64_t> first_bad_seed;
    for (std::uint64_t seed = 0; seed < cfg.fallback_trials; ++seed) {
        if (!run_property(seed)) {
            violations++;
            if (!first_bad_seed) first_bad_seed = seed;
        }
    }
    j["violations"] = violations;
    if (first_bad_seed) j["first_violating_seed"] = *first_bad_seed;
    emit_json(j, cfg.out);
    return violations > 0 ? kExitViolation : kExitBudget;
}

bool snapshot_run_ok(const engine::Run<protocols::SnapshotProtocol>& run) {
    std::vector<std::pair<int, std::set<int>>> outs;
    for (const auto& s : run.final_states()) {
        if (!s.returned) return false;
        outs.push_back({s.owner, s.returned->second});
    }
    return protocols::validate_snapshot(outs);
}

bool gossip_run_ok(const engine::Run<protocols::GossipProtocol>& run) {
    const int n = static_cast<int>(run.final_states().size());
    graph::Rcg emulated(n);
    for (int j = 0; j < n; ++j) {
        for (int i : run.final_states()[static_cast<std::size_t>(j)].ids) {
            if (i != j) emulated.add_edge(i, j);
        }
    }
    return graph::contains_tournament(emulated);
}

bool register_run_has_completion(const engine::Run<protocols::RegisterSimProtocol>& run) {
    for (const auto& s : run.final_states()) {
        if (!s.writes.empty()) return true;
    }
    return false;
}

bool pairs_run_ok(const engine::Run<protocols::DirectReceiveProtocol>& run) {
    const int n = static_cast<int>(run.final_states().size());
    graph::Rcg emulated(n);
    for (int j = 0; j < n; ++j) {
        for (int i : run.final_states()[static_cast<std::size_t>(j)].heard) emulated.add_edge(i, j);
    }
    return graph::contains_tournament(emulated);
}

int cmd_exhaustive(const ExhaustiveConfig& cfg) {
    engine::ExhaustiveOptions opts;
    opts.branch_cap = cfg.branch_cap;
    opts.jobs = cfg.jobs;

    if (cfg.property == "snapshot-valid") {
        const auto spec = AdversarySpec::parse(cfg.spec.empty() ? "tp-complete" : cfg.spec, cfg.n);
        const int rounds = cfg.rounds < 0 ? cfg.n : cfg.rounds;
        try {
            auto verdict = engine::run_exhaustive(protocols::SnapshotProtocol{}, spec, rounds,
                                                  protocols::id_items(cfg.n), snapshot_run_ok,
                                                  opts);
            return report_verdict(verdict, cfg.out);
        } catch (const BudgetError& b) {
            return sampling_fallback(b, cfg, [&](std::uint64_t seed) {
                return snapshot_run_ok(engine::run(protocols::SnapshotProtocol{}, spec, rounds,
                                                   protocols::id_items(cfg.n), seed));
            });
        }
    }
    if (cfg.property == "tournament-emulation") {
        const auto spec = AdversarySpec::parse(cfg.spec.empty() ? "tp" : cfg.spec, cfg.n);
        const int rounds = cfg.rounds < 0 ? 2 * cfg.n - 1 : cfg.rounds;
        try {
            auto verdict = engine::run_exhaustive(protocols::GossipProtocol{}, spec, rounds,
                                                  protocols::id_items(cfg.n), gossip_run_ok,
                                                  opts);
            return report_verdict(verdict, cfg.out);
        } catch (const BudgetError& b) {
            return sampling_fallback(b, cfg, [&](std::uint64_t seed) {
                return gossip_run_ok(engine::run(protocols::GossipProtocol{}, spec, rounds,
                                                 protocols::id_items(cfg.n), seed));
            });
        }
    }
    if (cfg.property == "king-liveness") {
        const auto spec = AdversarySpec::parse(cfg.spec.empty() ? "tp-complete" : cfg.spec, cfg.n);
        const int rounds = cfg.rounds < 0 ? 3 : cfg.rounds;
        const protocols::RegisterSimProtocol protocol{cfg.n, cfg.writes};
        try {
            auto verdict = engine::run_exhaustive(protocol, spec, rounds,
                                                  protocols::id_items(cfg.n),
                                                  register_run_has_completion, opts);
            return report_verdict(verdict, cfg.out);
        } catch (const BudgetError& b) {
            return sampling_fallback(b, cfg, [&](std::uint64_t seed) {
                return register_run_has_completion(
                    engine::run(protocol, spec, rounds, protocols::id_items(cfg.n), seed));
            });
        }
    }
    if (cfg.property == "pairs-translation") {
        const auto spec = AdversarySpec::parse(cfg.spec.empty() ? "tp-pairs:RR" : cfg.spec, cfg.n);
        const int rounds = cfg.rounds < 0 ? cfg.n * (cfg.n - 1) / 2 : cfg.rounds;
        if (spec.kind() == adversary::Kind::tp_pairs) {
            try {
                auto verdict = engine::run_exhaustive(protocols::DirectReceiveProtocol{}, spec,
                                                      rounds, protocols::id_items(cfg.n),
                                                      pairs_run_ok, opts);
                return report_verdict(verdict, cfg.out);
            } catch (const BudgetError& b) {
                return sampling_fallback(b, cfg, [&](std::uint64_t seed) {
                    return pairs_run_ok(engine::run(protocols::DirectReceiveProtocol{}, spec,
                                                    rounds, protocols::id_items(cfg.n), seed));
                });
            }
        }
        if (spec.kind() == adversary::Kind::tp_complete) {
            const auto schedule = PairSchedule::round_robin(cfg.n);
            const auto pairs_spec = AdversarySpec::tp_pairs(cfg.n, schedule);
            auto restricted_ok = [&](const engine::Run<protocols::PairRestrictedProtocol>& run) {
                for (std::size_t t = 0; t < run.trace.rounds.size(); ++t) {
                    graph::Rcg delivery(cfg.n);
                    const auto& [a, b] = schedule.pair_at(static_cast<int>(t));
                    for (int pid : {a, b}) {
                        const auto& got =
                            run.final_states()[static_cast<std::size_t>(pid)].heard_from_partner[t];
                        if (got) delivery.add_edge(*got, pid);
                    }
                    if (!pairs_spec.validate(static_cast<int>(t), delivery)) return false;
                }
                return true;
            };
            const protocols::PairRestrictedProtocol protocol{schedule};
            try {
                auto verdict = engine::run_exhaustive(protocol, spec, rounds,
                                                      protocols::id_items(cfg.n), restricted_ok,
                                                      opts);
                return report_verdict(verdict, cfg.out);
            } catch (const BudgetError& b) {
                return sampling_fallback(b, cfg, [&](std::uint64_t seed) {
                    return restricted_ok(
                        engine::run(protocol, spec, rounds, protocols::id_items(cfg.n), seed));
                });
            }
        }
        throw std::invalid_argument("pairs-translation expects a tp-pairs or tp-complete spec");
    }
    throw std::invalid_argument("unknown property '" + cfg.property + "'");
}

struct ComplexConfig {
    int n = 3;
    std::string schedule = "rr";
    int rounds = -1;  // default: explicit schedule length
    std::string json_out;
    std::string dot_out;
    std::string svg_out;
    bool cross_validate = false;
};

int cmd_complex(const ComplexConfig& cfg) {
    PairSchedule schedule;
    if (cfg.schedule == "rr" || cfg.schedule == "RR") {
        schedule = PairSchedule::round_robin(cfg.n);
        if (cfg.rounds < 0)
            throw std::invalid_argument("--rounds is required with the round-robin schedule");
    } else {
        schedule = PairSchedule::parse(cfg.schedule, cfg.n);
    }
    const int k = cfg.rounds < 0 ? static_cast<int>(schedule.size()) : cfg.rounds;

    auto c = complex::build(cfg.n, schedule, k);
    std::cerr << "complex: n=" << c.n << " k=" << c.k << " vertices=" << c.vertices.size()
              << " tops=" << c.tops.size() << "\n";

    if (!cfg.json_out.empty()) write_text(cfg.json_out, complex::to_json(c).dump(2) + "\n");
    if (!cfg.dot_out.empty()) write_text(cfg.dot_out, complex::to_dot(c));
    if (!cfg.svg_out.empty()) write_text(cfg.svg_out, complex::to_svg(c));

    if (cfg.cross_validate) {
        auto cv = complex::cross_validate(c);
        if (!cv.ok) {
            std::cerr << "cross-validation failed: " << cv.mismatch << "\n";
            return kExitViolation;
        }
        std::cerr << "cross-validation: " << cv.executions << " executions match "
                  << c.tops.size() << " top simplices\n";
    }
    return kExitOk;
}

struct VerifyConfig {
    std::string trace_path;
    std::string outcome_path;
    std::string complex_path;
    bool run_oracle = false;
    int oracle_facts_n = 4;
    int oracle_reach_n = 3;
    int oracle_king_depth = 4;
    std::string out;
};

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

struct CheckLog {
    bool all_ok = true;

    void check(const std::string& name, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "ok    " : "FAIL  ") << name;
        if (!detail.empty()) std::cout << "  (" << detail << ")";
        std::cout << "\n";
        if (!ok) all_ok = false;
    }

    void note(const std::string& name, const std::string& detail) {
        std::cout << "note  " << name << "  (" << detail << ")\n";
    }
};

void verify_trace(const json& j, CheckLog& log) {
    auto trace = ExecutionTrace::from_json(j);
    std::optional<AdversarySpec> spec;
    try {
        spec = AdversarySpec::parse(trace.spec, trace.n);
    } catch (const std::invalid_argument&) {
        log.note("rcg-legal", "spec '" + trace.spec + "' not a predicate; skipped");
    }
    if (spec) {
        bool ok = true;
        int bad_round = -1;
        for (std::size_t r = 0; r < trace.rounds.size(); ++r) {
            if (!spec->validate(static_cast<int>(r), trace.rounds[r].rcg)) {
                ok = false;
                bad_round = static_cast<int>(r) + 1;
                break;
            }
        }
        log.check("rcg-legal", ok, ok ? "" : "round " + std::to_string(bad_round));
    }
    log.check("shape", trace.outputs.size() == static_cast<std::size_t>(trace.n) &&
                           trace.initial_digests.size() == static_cast<std::size_t>(trace.n));

    if (trace.protocol == "snapshot" &&
        static_cast<int>(trace.rounds.size()) >= trace.n) {
        bool returned = true;
        std::vector<std::pair<int, std::set<int>>> outs;
        for (int i = 0; i < trace.n; ++i) {
            const auto& o = trace.outputs[static_cast<std::size_t>(i)];
            if (!o) {
                returned = false;
                break;
            }
            outs.push_back({i, o->value.get<std::set<int>>()});
        }
        log.check("snapshot-returned", returned);
        if (returned) log.check("snapshot-valid", protocols::validate_snapshot(outs));
    }
    if (trace.protocol == "gossip" && trace.result.contains("emulated")) {
        auto emulated = graph::Rcg::from_json(trace.result.at("emulated"));
        if (spec && spec->kind() == adversary::Kind::tp &&
            static_cast<int>(trace.rounds.size()) >= 2 * trace.n - 1) {
            log.check("emulated-tournament", graph::contains_tournament(emulated));
        } else {
            log.note("emulated-tournament",
                     "not a full-length run under tp; tournament not required");
        }
    }
    if (trace.protocol == "register" && trace.result.contains("type")) {
        auto outcome = protocols::RegisterSimOutcome::from_json(trace.result);
        // King certification is only meaningful under the tournament rule.
        log.check("king-certifiable", outcome.spec == "tp-complete",
                  outcome.spec == "tp-complete" ? "" : "spec '" + outcome.spec + "' too weak");
        if (outcome.spec == "tp-complete") {
            auto hc = protocols::validate_swsr_histories(outcome);
            log.check("histories-legal", hc.ok,
                      hc.ok ? "" : hc.what + " at round " + std::to_string(hc.round));
        }
        if (!outcome.all_done) log.note("all-done", "round budget exhausted; not a failure");
    }
}

void verify_outcome(const json& j, CheckLog& log) {
    auto outcome = protocols::RegisterSimOutcome::from_json(j);
    log.check("king-certifiable", outcome.spec == "tp-complete",
              outcome.spec == "tp-complete" ? "" : "spec '" + outcome.spec + "' too weak");
    if (outcome.spec != "tp-complete") return;
    auto hc = protocols::validate_swsr_histories(outcome);
    log.check("histories-legal", hc.ok,
              hc.ok ? "" : hc.what + " at round " + std::to_string(hc.round));
    if (!outcome.all_done) log.note("all-done", "round budget exhausted; not a failure");
}

void verify_complex(const json& j, CheckLog& log) {
    auto c = complex::from_json(j);
    log.check("chromatic", complex::check_chromatic(c));
    log.check("sperner", complex::check_sperner(c));
    log.check("growth", c.tops.size() == sat_pow(3, static_cast<std::uint64_t>(c.k)),
              std::to_string(c.tops.size()) + " tops after " + std::to_string(c.k) + " splits");
    auto cv = complex::cross_validate(c);
    log.check("execution-bijection", cv.ok, cv.ok ? "" : cv.mismatch);
}

int cmd_verify(const VerifyConfig& cfg) {
    CheckLog log;
    if (!cfg.trace_path.empty()) {
        const json j = load_json(cfg.trace_path);
        if (j.contains("type") && j.at("type") == "register-outcome") {
            verify_outcome(j, log);
        } else {
            verify_trace(j, log);
        }
    }
    if (!cfg.outcome_path.empty()) verify_outcome(load_json(cfg.outcome_path), log);
    if (!cfg.complex_path.empty()) verify_complex(load_json(cfg.complex_path), log);

    if (cfg.run_oracle) {
        json report;
        auto facts = oracle::tournament_facts_oracle(cfg.oracle_facts_n);
        report["tournament_facts"] = facts.to_json();
        log.check("oracle-tournament-facts", facts.all_pass());

        bool agree = true;
        std::uint64_t swept = 0;
        const int n = cfg.oracle_reach_n;
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < n; ++i) {
            for (int j2 = 0; j2 < n; ++j2) {
                if (i != j2) pairs.push_back({i, j2});
            }
        }
        for (std::uint64_t mask = 0; mask < (1ULL << pairs.size()); ++mask) {
            graph::Rcg g(n);
            for (std::size_t p = 0; p < pairs.size(); ++p) {
                if ((mask >> p) & 1) g.add_edge(pairs[p].first, pairs[p].second);
            }
            swept++;
            if (graph::has_traversal_path(g) != oracle::reachability_pair_oracle(g)) {
                agree = false;
                break;
            }
        }
        report["reachability_agreement"] = {{"n", n}, {"digraphs", swept}, {"agree", agree}};
        log.check("oracle-reachability-agreement", agree);

        auto king = oracle::king_liveness_search(3, cfg.oracle_king_depth);
        report["king_liveness"] = king.to_json();
        log.check("oracle-king-liveness", king.l_star.has_value(),
                  king.l_star ? "L*=" + std::to_string(*king.l_star)
                              : "no bound within depth " + std::to_string(cfg.oracle_king_depth));
        emit_json(report, cfg.out);
    }
    return log.all_ok ? kExitOk : kExitViolation;
}

struct OracleConfig {
    int facts_n = 0;        // 0 = skip
    int reachability_n = 0; // 0 = skip
    bool king_liveness = false;
    int king_n = 3;
    int max_depth = 8;
    std::string boundary;  // "A-B"; empty = skip
    int boundary_depth = 8;
    std::string out;
};

int cmd_oracle(const OracleConfig& cfg) {
    json report;
    bool ok = true;
    if (cfg.facts_n > 0) {
        auto facts = oracle::tournament_facts_oracle(cfg.facts_n);
        report["tournament_facts"] = facts.to_json();
        ok = ok && facts.all_pass();
    }
    if (cfg.reachability_n > 0) {
        const int n = cfg.reachability_n;
        if (n > 4) throw std::invalid_argument("reachability sweep: n <= 4");
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i != j) pairs.push_back({i, j});
            }
        }
        bool agree = true;
        for (std::uint64_t mask = 0; mask < (1ULL << pairs.size()); ++mask) {
            graph::Rcg g(n);
            for (std::size_t p = 0; p < pairs.size(); ++p) {
                if ((mask >> p) & 1) g.add_edge(pairs[p].first, pairs[p].second);
            }
            if (graph::has_traversal_path(g) != oracle::reachability_pair_oracle(g)) {
                agree = false;
                break;
            }
        }
        report["reachability_agreement"] = {{"n", n},
                                            {"digraphs", 1ULL << pairs.size()},
                                            {"agree", agree}};
        ok = ok && agree;
    }
    if (cfg.king_liveness) {
        auto king = oracle::king_liveness_search(cfg.king_n, cfg.max_depth);
        report["king_liveness"] = king.to_json();
    }
    if (!cfg.boundary.empty()) {
        auto dash = cfg.boundary.find('-');
        if (dash == std::string::npos)
            throw std::invalid_argument("boundary pair: expected A-B");
        const int a = std::stoi(cfg.boundary.substr(0, dash));
        const int b = std::stoi(cfg.boundary.substr(dash + 1));
        auto witness = oracle::boundary_witness_search(3, {a, b}, cfg.boundary_depth);
        report["boundary_witness"] = witness.to_json();
    }
    emit_json(report, cfg.out);
    return ok ? kExitOk : kExitViolation;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"simulator and verifier for synchronous dynamic networks under "
                 "message adversaries"};
    app.require_subcommand(1);

    SimulateConfig sim;
    auto* simulate = app.add_subcommand("simulate", "run one seeded execution");
    simulate->add_option("--n", sim.n, "processor count")->check(CLI::PositiveNumber);
    simulate->add_option("--spec", sim.spec, "adversary spec");
    simulate->add_option("--protocol", sim.protocol, "protocol")
        ->check(CLI::IsMember({"full-info", "gossip", "snapshot", "register"}));
    simulate->add_option("--rounds", sim.rounds, "round count (default per protocol)");
    simulate->add_option("--seed", sim.seed, "rng seed");
    simulate->add_option("--writes", sim.writes, "write/read pairs per processor (register)")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--out", sim.out, "trace file (default stdout)");
    simulate->add_flag("--dump-states", sim.dump_states, "embed full state dumps");

    ExhaustiveConfig ex;
    auto* exhaustive = app.add_subcommand("exhaustive", "check a property on every execution");
    exhaustive->add_option("--n", ex.n, "processor count")->check(CLI::PositiveNumber);
    exhaustive->add_option("--spec", ex.spec, "adversary spec (default per property)");
    exhaustive->add_option("--property", ex.property, "property to check")
        ->required()
        ->check(CLI::IsMember(
            {"snapshot-valid", "tournament-emulation", "king-liveness", "pairs-translation"}));
    exhaustive->add_option("--rounds", ex.rounds, "round count (default per property)");
    exhaustive->add_option("--writes", ex.writes, "write/read pairs (king-liveness)")
        ->check(CLI::PositiveNumber);
    exhaustive->add_option("--jobs", ex.jobs, "worker threads")->check(CLI::PositiveNumber);
    exhaustive->add_option("--branch-cap", ex.branch_cap, "execution tree cap");
    exhaustive->add_option("--fallback-trials", ex.fallback_trials,
                           "seeded trials when the tree exceeds the cap");
    exhaustive->add_option("--out", ex.out, "report file (default stdout)");

    ComplexConfig cx;
    auto* cplx = app.add_subcommand("complex", "build the per-pair subdivision complex");
    cplx->add_option("--n", cx.n, "processor count")->check(CLI::PositiveNumber);
    cplx->add_option("--schedule", cx.schedule, "'rr' or explicit pair list like 1-2,0-1,0-2");
    cplx->add_option("--rounds", cx.rounds, "split rounds (default: schedule length)");
    cplx->add_option("--json", cx.json_out, "complex JSON output path");
    cplx->add_option("--dot", cx.dot_out, "1-skeleton DOT output path");
    cplx->add_option("--svg", cx.svg_out, "planar SVG output path (n == 3)");
    cplx->add_flag("--cross-validate", cx.cross_validate,
                   "replay the execution tree and compare against the complex");

    VerifyConfig vf;
    auto* verify = app.add_subcommand("verify", "re-check invariants of saved artifacts");
    verify->add_option("--trace", vf.trace_path, "trace or outcome JSON");
    verify->add_option("--outcome", vf.outcome_path, "register outcome JSON");
    verify->add_option("--complex", vf.complex_path, "complex JSON");
    verify->add_flag("--oracle", vf.run_oracle, "run the brute-force oracle bundle");
    verify->add_option("--facts-n", vf.oracle_facts_n, "tournament facts size")
        ->check(CLI::Range(1, 5));
    verify->add_option("--reach-n", vf.oracle_reach_n, "reachability sweep size")
        ->check(CLI::Range(1, 4));
    verify->add_option("--max-depth", vf.oracle_king_depth, "king liveness depth")
        ->check(CLI::Range(1, 8));
    verify->add_option("--out", vf.out, "oracle report file (default stdout)");

    OracleConfig orc;
    auto* oracle_cmd = app.add_subcommand("oracle", "run brute-force ground-truth checks");
    oracle_cmd->add_option("--facts", orc.facts_n, "exhaustive tournament facts for n")
        ->check(CLI::Range(1, 5));
    oracle_cmd->add_option("--reachability", orc.reachability_n,
                           "traversal-path agreement sweep for n")
        ->check(CLI::Range(1, 4));
    oracle_cmd->add_flag("--king-liveness", orc.king_liveness, "search the first-write bound");
    oracle_cmd->add_option("--king-n", orc.king_n, "processors for the liveness search")
        ->check(CLI::Range(1, 3));
    oracle_cmd->add_option("--max-depth", orc.max_depth, "liveness search depth")
        ->check(CLI::Range(1, 8));
    oracle_cmd->add_option("--boundary", orc.boundary,
                           "exempt pair A-B; search for a king-free branch");
    oracle_cmd->add_option("--boundary-depth", orc.boundary_depth, "boundary search depth")
        ->check(CLI::Range(1, 8));
    oracle_cmd->add_option("--out", orc.out, "report file (default stdout)");

    std::vector<const char*> argv;
    argv.push_back("adversim");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    ex.branch_cap = branch_cap_from_env(ex.branch_cap);

    try {
        if (app.got_subcommand(simulate)) return cmd_simulate(sim);
        if (app.got_subcommand(exhaustive)) return cmd_exhaustive(ex);
        if (app.got_subcommand(cplx)) return cmd_complex(cx);
        if (app.got_subcommand(verify)) return cmd_verify(vf);
        if (app.got_subcommand(oracle_cmd)) return cmd_oracle(orc);
    } catch (const complex::UnsupportedDimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const engine::ViolationError& e) {
        std::cerr << "violation: " << e.what() << "\n";
        return kExitViolation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace adversim::cli
