#pragma once

#include <atomic>
#include <concepts>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "adversim/adversary.hpp"
#include "adversim/graph.hpp"
#include "adversim/util.hpp"
#include "adversim/view.hpp"
#include "json.hpp"

namespace adversim::engine {

struct TraceRound {
    graph::Rcg rcg;
    std::vector<std::uint64_t> digests;                 // post-round, per processor
    std::optional<std::vector<nlohmann::json>> states;  // full dumps when requested
};

struct TraceOutput {
    int round = -1;
    nlohmann::json value;
};

// Complete, replayable record of one synchronous execution.
struct ExecutionTrace {
    int n = 0;
    std::string spec;
    std::string protocol;
    std::string seed;  // "seed:<s>", "exhaustive:<digits>" or "fixed"
    std::vector<nlohmann::json> inputs;
    std::vector<std::uint64_t> initial_digests;
    std::vector<TraceRound> rounds;
    std::vector<std::optional<TraceOutput>> outputs;  // per processor, first output
    nlohmann::json result;     // protocol-specific summary; null unless set
    nlohmann::json violation;  // set when a postcondition failed; null otherwise

    nlohmann::json to_json() const;
    static ExecutionTrace from_json(const nlohmann::json& j);
};

// A protocol postcondition failed; carries the offending trace.
class ViolationError : public std::runtime_error {
public:
    ViolationError(const std::string& what, ExecutionTrace trace)
        : std::runtime_error(what), trace_(std::move(trace)) {
        trace_.violation = std::string(std::runtime_error::what());
    }

    const ExecutionTrace& trace() const { return trace_; }

private:
    ExecutionTrace trace_;
};

// A synchronous-round state machine: pure, deterministic functions of their
// arguments. init produces the round-0 state; message is what the processor
// broadcasts this round; receive folds in the round's delivered payloads.
template <class P>
concept Protocol = requires(const P p, const typename P::State& s,
                            const typename P::Item& item,
                            const std::map<int, typename P::Payload>& inbox,
                            const typename P::Output& out) {
    { p.name() } -> std::convertible_to<std::string>;
    { p.init(0, item) } -> std::same_as<typename P::State>;
    { p.message(s) } -> std::same_as<typename P::Payload>;
    { p.receive(s, inbox) } -> std::same_as<typename P::State>;
    { p.output(s) } -> std::same_as<std::optional<typename P::Output>>;
    { p.state_digest(s) } -> std::same_as<std::uint64_t>;
    { p.state_json(s) } -> std::same_as<nlohmann::json>;
    { p.output_json(out) } -> std::same_as<nlohmann::json>;
    { p.item_json(item) } -> std::same_as<nlohmann::json>;
};

struct RunOptions {
    bool dump_states = false;
};

template <Protocol P>
struct Run {
    ExecutionTrace trace;
    // states[r][pid] for r = 0..rounds; states[0] are the initial states.
    std::vector<std::vector<typename P::State>> states;

    const std::vector<typename P::State>& final_states() const { return states.back(); }
};

// One synchronous round: payloads are snapshotted from the pre-round states,
// delivered along g, and all processors advance simultaneously. Processors
// with no incoming edge still take a receive step with an empty inbox.
template <Protocol P>
std::vector<typename P::State> step_round(const P& p,
                                          const std::vector<typename P::State>& states,
                                          const graph::Rcg& g) {
    const int n = static_cast<int>(states.size());
    std::vector<typename P::Payload> payloads;
    payloads.reserve(states.size());
    for (const auto& s : states) payloads.push_back(p.message(s));

    std::vector<std::map<int, typename P::Payload>> inboxes(states.size());
    for (const auto& [s, r] : g.edges()) {
        inboxes[r].emplace(s, payloads[s]);
    }

    std::vector<typename P::State> next;
    next.reserve(states.size());
    for (int i = 0; i < n; ++i) next.push_back(p.receive(states[i], inboxes[i]));
    return next;
}

template <Protocol P>
Run<P> run_with_rcgs(const P& p, const std::vector<graph::Rcg>& rcgs,
                     const std::vector<typename P::Item>& inputs,
                     const RunOptions& opts = {},
                     const std::string& spec_label = "fixed-rcgs",
                     const std::string& seed_label = "fixed") {
    const int n = static_cast<int>(inputs.size());
    if (n < 1) throw std::invalid_argument("run: need at least one processor");
    for (const auto& g : rcgs) {
        if (g.n() != n) throw std::invalid_argument("run: rcg size mismatch");
    }

    Run<P> out;
    ExecutionTrace& tr = out.trace;
    tr.n = n;
    tr.spec = spec_label;
    tr.protocol = p.name();
    tr.seed = seed_label;

    std::vector<typename P::State> cur;
    cur.reserve(inputs.size());
    for (int i = 0; i < n; ++i) {
        cur.push_back(p.init(i, inputs[i]));
        tr.inputs.push_back(p.item_json(inputs[i]));
        tr.initial_digests.push_back(p.state_digest(cur.back()));
    }
    tr.outputs.assign(inputs.size(), std::nullopt);

    auto scan_outputs = [&](int round) {
        for (int i = 0; i < n; ++i) {
            if (tr.outputs[i]) continue;
            if (auto o = p.output(cur[i])) tr.outputs[i].emplace(round, p.output_json(*o));
        }
    };
    scan_outputs(0);
    out.states.push_back(cur);

    for (std::size_t r = 0; r < rcgs.size(); ++r) {
        cur = step_round(p, cur, rcgs[r]);
        TraceRound round{rcgs[r], {}, std::nullopt};
        for (int i = 0; i < n; ++i) round.digests.push_back(p.state_digest(cur[i]));
        if (opts.dump_states) {
            std::vector<nlohmann::json> dumps;
            for (int i = 0; i < n; ++i) dumps.push_back(p.state_json(cur[i]));
            round.states = std::move(dumps);
        }
        tr.rounds.push_back(std::move(round));
        scan_outputs(static_cast<int>(r) + 1);
        out.states.push_back(cur);
    }
    return out;
}

// Samples one delivery graph per round from the adversary. Re-running with
// the same arguments yields an identical trace: each round draws from its own
// seed stream derived from (seed, round).
template <Protocol P>
Run<P> run(const P& p, const adversary::AdversarySpec& spec, int rounds,
           const std::vector<typename P::Item>& inputs, std::uint64_t seed,
           const RunOptions& opts = {}) {
    if (rounds < 0) throw std::invalid_argument("run: negative round count");
    if (static_cast<int>(inputs.size()) != spec.n())
        throw std::invalid_argument("run: input count does not match spec");
    std::vector<graph::Rcg> rcgs;
    rcgs.reserve(static_cast<std::size_t>(rounds));
    for (int r = 0; r < rounds; ++r) rcgs.push_back(spec.sample(r, mix_seed(seed, r)));
    return run_with_rcgs(p, rcgs, inputs, opts, spec.to_string(),
                         "seed:" + std::to_string(seed));
}

struct ExhaustiveOptions {
    std::uint64_t branch_cap = 100'000'000;
    std::uint64_t enum_budget = adversary::kDefaultEnumBudget;
    int jobs = 1;
    RunOptions run_options;
};

struct Verdict {
    bool all_hold = true;
    std::uint64_t executions = 0;  // size of the decision tree
    std::vector<int> branch;       // per-round choice digits of the counterexample
    std::optional<ExecutionTrace> counterexample;
};

namespace detail {

inline std::string branch_label(const std::vector<int>& digits) {
    std::string s = "exhaustive:";
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(digits[i]);
    }
    return s;
}

}  // namespace detail

// Evaluates `property` on every complete execution of the adversary decision
// tree, in canonical branch order. Returns the first counterexample if any.
// Workers split the leaf range; the merged verdict is the canonically
// smallest violating branch, so parallel and serial results agree.
template <Protocol P, class Prop>
Verdict run_exhaustive(const P& p, const adversary::AdversarySpec& spec, int rounds,
                       const std::vector<typename P::Item>& inputs, Prop&& property,
                       const ExhaustiveOptions& opts = {}) {
    if (rounds < 0) throw std::invalid_argument("run_exhaustive: negative round count");
    std::vector<std::vector<graph::Rcg>> choices;
    choices.reserve(static_cast<std::size_t>(rounds));
    for (int r = 0; r < rounds; ++r) choices.push_back(spec.enumerate(r, opts.enum_budget));

    std::uint64_t total = 1;
    for (const auto& c : choices) total = sat_mul(total, c.size());
    if (total > opts.branch_cap) throw BudgetError(total, opts.branch_cap);

    auto digits_of = [&](std::uint64_t leaf) {
        std::vector<int> digits(choices.size(), 0);
        for (int r = rounds - 1; r >= 0; --r) {
            const std::uint64_t base = choices[static_cast<std::size_t>(r)].size();
            digits[static_cast<std::size_t>(r)] = static_cast<int>(leaf % base);
            leaf /= base;
        }
        return digits;
    };
    auto rcgs_of = [&](const std::vector<int>& digits) {
        std::vector<graph::Rcg> rcgs;
        rcgs.reserve(digits.size());
        for (std::size_t r = 0; r < digits.size(); ++r) {
            rcgs.push_back(choices[r][static_cast<std::size_t>(digits[r])]);
        }
        return rcgs;
    };
    auto evaluate = [&](std::uint64_t leaf) {
        auto digits = digits_of(leaf);
        auto one = run_with_rcgs(p, rcgs_of(digits), inputs, opts.run_options,
                                 spec.to_string(), detail::branch_label(digits));
        return property(std::as_const(one));
    };

    std::atomic<std::uint64_t> best{UINT64_MAX};
    const int jobs = std::max(1, opts.jobs);
    if (jobs == 1 || total < 2) {
        for (std::uint64_t leaf = 0; leaf < total; ++leaf) {
            if (!evaluate(leaf)) {
                best.store(leaf);
                break;
            }
        }
    } else {
        std::vector<std::thread> workers;
        const std::uint64_t chunk = (total + static_cast<std::uint64_t>(jobs) - 1) /
                                    static_cast<std::uint64_t>(jobs);
        for (int w = 0; w < jobs; ++w) {
            const std::uint64_t lo = chunk * static_cast<std::uint64_t>(w);
            const std::uint64_t hi = std::min(total, lo + chunk);
            if (lo >= hi) break;
            workers.emplace_back([&, lo, hi] {
                for (std::uint64_t leaf = lo; leaf < hi; ++leaf) {
                    if ((leaf & 63) == 0 && best.load() < lo) return;
                    if (!evaluate(leaf)) {
                        std::uint64_t seen = best.load();
                        while (leaf < seen && !best.compare_exchange_weak(seen, leaf)) {
                        }
                        return;
                    }
                }
            });
        }
        for (auto& t : workers) t.join();
    }

    Verdict verdict;
    verdict.executions = total;
    const std::uint64_t found = best.load();
    if (found != UINT64_MAX) {
        verdict.all_hold = false;
        verdict.branch = digits_of(found);
        auto one = run_with_rcgs(p, rcgs_of(verdict.branch), inputs, opts.run_options,
                                 spec.to_string(), detail::branch_label(verdict.branch));
        verdict.counterexample = std::move(one.trace);
    }
    return verdict;
}

// The canonical protocol: each round every processor broadcasts its entire
// history.
struct FullInformationProtocol {
    using Item = nlohmann::json;
    using State = ViewPtr;
    using Payload = ViewPtr;
    using Output = nlohmann::json;

    std::string name() const { return "full-info"; }
    State init(int pid, const Item& item) const { return View::initial(pid, item); }
    Payload message(const State& s) const { return s; }
    State receive(const State& s, const std::map<int, Payload>& inbox) const {
        return View::extend(s, inbox);
    }
    std::optional<Output> output(const State&) const { return std::nullopt; }
    std::uint64_t state_digest(const State& s) const { return s->digest(); }
    nlohmann::json state_json(const State& s) const { return s->to_json(); }
    nlohmann::json output_json(const Output& o) const { return o; }
    nlohmann::json item_json(const Item& item) const { return item; }
};

}  // namespace adversim::engine
