#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "adversim/adversary.hpp"
#include "adversim/engine.hpp"
#include "adversim/graph.hpp"
#include "json.hpp"

namespace adversim::protocols {

inline std::vector<int> id_items(int n) {
    std::vector<int> ids(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = i;
    return ids;
}

// ---------------------------------------------------------------------------
// Id-set gossip
// ---------------------------------------------------------------------------

struct IdSetState {
    int owner = 0;
    int round = 0;
    std::set<int> ids;  // always contains owner
    std::optional<std::pair<int, std::set<int>>> returned;  // (round, frozen set)
};

nlohmann::json id_set_state_json(const IdSetState& s);
std::uint64_t id_set_state_digest(const IdSetState& s);

// Broadcast the id set, union whatever arrives.
struct GossipProtocol {
    using Item = int;
    using State = IdSetState;
    using Payload = std::set<int>;
    using Output = std::set<int>;

    std::string name() const { return "gossip"; }
    State init(int pid, const Item&) const { return State{pid, 0, {pid}, std::nullopt}; }
    Payload message(const State& s) const { return s.ids; }
    State receive(const State& s, const std::map<int, Payload>& inbox) const {
        State t = s;
        t.round++;
        for (const auto& [from, ids] : inbox) {
            (void)from;
            t.ids.insert(ids.begin(), ids.end());
        }
        return t;
    }
    std::optional<Output> output(const State&) const { return std::nullopt; }
    std::uint64_t state_digest(const State& s) const { return id_set_state_digest(s); }
    nlohmann::json state_json(const State& s) const { return id_set_state_json(s); }
    nlohmann::json output_json(const Output& o) const { return o; }
    nlohmann::json item_json(const Item& item) const { return item; }
};

// Gossip plus the return rule: a processor whose set has exactly `round`
// members at the end of a round returns it, freezes it, and relays the frozen
// set from then on.
struct SnapshotProtocol {
    using Item = int;
    using State = IdSetState;
    using Payload = std::set<int>;
    using Output = std::set<int>;

    std::string name() const { return "snapshot"; }
    State init(int pid, const Item&) const { return State{pid, 0, {pid}, std::nullopt}; }
    Payload message(const State& s) const { return s.returned ? s.returned->second : s.ids; }
    State receive(const State& s, const std::map<int, Payload>& inbox) const {
        State t = s;
        t.round++;
        if (t.returned) return t;  // frozen: relay only
        for (const auto& [from, ids] : inbox) {
            (void)from;
            t.ids.insert(ids.begin(), ids.end());
        }
        if (static_cast<int>(t.ids.size()) == t.round) t.returned = {{t.round, t.ids}};
        return t;
    }
    std::optional<Output> output(const State& s) const {
        if (s.returned) return s.returned->second;
        return std::nullopt;
    }
    std::uint64_t state_digest(const State& s) const { return id_set_state_digest(s); }
    nlohmann::json state_json(const State& s) const { return id_set_state_json(s); }
    nlohmann::json output_json(const Output& o) const { return o; }
    nlohmann::json item_json(const Item& item) const { return item; }
};

// ---------------------------------------------------------------------------
// Register simulation
// ---------------------------------------------------------------------------

// Sequence number marking an output sentinel rather than a real write.
inline constexpr int kDoneSeq = 1'000'000'000;

struct WriteTriplet {
    int writer = -1;
    std::vector<std::optional<nlohmann::json>> values;  // per-register; nullopt = not written
    int seq = 0;
};

struct KnowledgeVector {
    int owner = -1;
    std::map<int, WriteTriplet> latest;  // writer -> most advanced known triplet
    std::set<int> done_marks;
};

nlohmann::json knowledge_vector_json(const KnowledgeVector& v);

// Strict "more advanced" total order on two vectors of the same owner:
// owner's own seq, then the maximum component seq, then the seq vector
// lexicographically, then the done marks. Extends knowledge dominance.
bool more_advanced(const KnowledgeVector& a, const KnowledgeVector& b);

// True iff, for every processor j != kv.owner that is not marked done, either
// j sent nothing this round or the vector j sent already contains the owner's
// current write. `round_received` maps sender -> the sender's own vector as
// sent at the start of the round. Only meaningful when every pair exchanges
// at least one message per round.
bool king_condition(const KnowledgeVector& kv,
                    const std::map<int, KnowledgeVector>& round_received);

struct CompletedWrite {
    int seq = 0;
    int issued_round = 0;
    int completed_round = 0;
};

struct ReadRecord {
    int round = 0;
    std::vector<std::optional<int>> seqs;  // per writer; nullopt = no value known
};

struct RegState {
    int owner = 0;
    int n = 1;
    int writes_target = 1;
    int round = 0;
    KnowledgeVector kv;                    // own vector
    std::map<int, KnowledgeVector> known;  // most advanced vector per other processor
    int current_seq = 1;
    int current_issued_round = 0;
    bool done = false;
    std::optional<nlohmann::json> out;
    std::optional<int> output_round;
    std::vector<CompletedWrite> writes;
    std::vector<ReadRecord> reads;
    std::vector<std::pair<int, int>> issued;  // (seq, round), sentinel included
};

// Alternating write/read simulation. A write completes in the round the king
// condition first holds after issuing it; the read taken that round returns,
// per writer, the highest seq in the knowledge vector. After `writes_target`
// write/read pairs the processor outputs, plants the sentinel triplet, and
// becomes a relay that forwards vectors unchanged.
struct RegisterSimProtocol {
    int n = 1;
    int writes_target = 1;

    using Item = int;
    using State = RegState;
    using Payload = std::map<int, KnowledgeVector>;  // by vector owner
    using Output = nlohmann::json;

    std::string name() const { return "register"; }
    State init(int pid, const Item& item) const;
    Payload message(const State& s) const;
    State receive(const State& s, const std::map<int, Payload>& inbox) const;
    std::optional<Output> output(const State& s) const {
        if (s.done) return s.out;
        return std::nullopt;
    }
    std::uint64_t state_digest(const State& s) const;
    nlohmann::json state_json(const State& s) const;
    nlohmann::json output_json(const Output& o) const { return o; }
    nlohmann::json item_json(const Item& item) const { return item; }
};

struct LinEvent {
    std::string op;  // "write" | "read"
    int pid = 0;
    int seq = 0;  // writes only
    int round = 0;
};

struct ProcessorOutcome {
    std::vector<CompletedWrite> writes;
    std::vector<ReadRecord> reads;
    std::vector<std::pair<int, int>> issued;
    std::optional<int> output_round;
};

struct RegisterSimOutcome {
    int n = 0;
    int writes_target = 0;
    int budget = 0;
    int rounds_used = 0;
    bool all_done = false;
    std::string spec;
    std::vector<ProcessorOutcome> processors;
    // Writes linearize at the first round anyone read them; reads at their
    // own round.
    std::vector<LinEvent> linearization;

    nlohmann::json to_json() const;
    static RegisterSimOutcome from_json(const nlohmann::json& j);
};

struct RegisterSimResult {
    RegisterSimOutcome outcome;
    engine::ExecutionTrace trace;
    engine::Run<RegisterSimProtocol> run;
};

// Collects per-processor logs and the linearization order out of a finished
// run. `budget` is only recorded, not enforced.
RegisterSimOutcome outcome_from_run(const engine::Run<RegisterSimProtocol>& run, int budget);

// Runs the register simulation until every processor has output or the round
// budget is exhausted (reported via all_done, not an error).
RegisterSimResult simulate_rwwf(int n, int writes_per_processor, int budget,
                                std::uint64_t seed);
RegisterSimResult simulate_rwwf(int n, int writes_per_processor,
                                const std::vector<graph::Rcg>& rcgs);

struct HistoryCheck {
    bool ok = true;
    std::string what;
    int round = -1;
};

// Per (writer, reader) legality: (a) seqs seen by one reader never decrease;
// (b) a read returns at least the largest seq whose write completed in a
// strictly earlier round; (c) every returned seq had been issued by then.
HistoryCheck validate_swsr_histories(const RegisterSimOutcome& o);

// ---------------------------------------------------------------------------
// Emulations and translations
// ---------------------------------------------------------------------------

struct EmulationResult {
    graph::Rcg emulated;
    std::vector<std::set<int>> sets;
    engine::ExecutionTrace trace;
};

// Gossip for 2n-1 rounds under a traversal-path adversary; the emulated graph
// has edge i -> j iff i's id reached j. Throws ViolationError if the emulated
// graph misses a pair entirely.
EmulationResult emulate_tp_complete_over_tp(int n, std::uint64_t seed);
EmulationResult emulate_tp_complete_over_tp(int n, const std::vector<graph::Rcg>& rcgs);

struct SnapshotResult {
    std::vector<std::set<int>> returned;
    std::vector<int> return_round;
    engine::ExecutionTrace trace;
};

// Snapshot protocol for exactly n rounds under the tournament adversary.
// Throws ViolationError if some processor fails to return or the returned
// sets are not valid snapshots.
SnapshotResult snapshot_over_tp_complete(int n, std::uint64_t seed);
SnapshotResult snapshot_over_tp_complete(int n, const std::vector<graph::Rcg>& rcgs);

// Self-inclusion plus containment chain.
bool validate_snapshot(const std::vector<std::pair<int, std::set<int>>>& outputs);

// Records which ids arrived directly; payload is the frozen first send.
struct DirectState {
    int owner = 0;
    int round = 0;
    std::set<int> heard;
};

struct DirectReceiveProtocol {
    using Item = int;
    using State = DirectState;
    using Payload = int;
    using Output = std::set<int>;

    std::string name() const { return "direct-receive"; }
    State init(int pid, const Item&) const { return State{pid, 0, {}}; }
    Payload message(const State& s) const { return s.owner; }
    State receive(const State& s, const std::map<int, Payload>& inbox) const {
        State t = s;
        t.round++;
        for (const auto& [from, id] : inbox) {
            (void)id;
            t.heard.insert(from);
        }
        return t;
    }
    std::optional<Output> output(const State&) const { return std::nullopt; }
    std::uint64_t state_digest(const State& s) const;
    nlohmann::json state_json(const State& s) const;
    nlohmann::json output_json(const Output& o) const { return o; }
    nlohmann::json item_json(const Item& item) const { return item; }
};

struct PairsToCompleteResult {
    graph::Rcg emulated;
    engine::ExecutionTrace trace;
};

// One sweep of per-pair rounds emulates one tournament round: edge i -> j iff
// j heard i in their scheduled round. Throws ViolationError if the result
// misses a pair.
PairsToCompleteResult tp_pairs_to_tp_complete(int n, std::uint64_t seed);
PairsToCompleteResult tp_pairs_to_tp_complete(int n, const std::vector<graph::Rcg>& rcgs);

// Keeps only the scheduled partner's message each round.
struct RestrictState {
    int owner = 0;
    int round = 0;
    std::vector<std::optional<int>> heard_from_partner;  // per round
};

struct PairRestrictedProtocol {
    adversary::PairSchedule schedule;

    using Item = int;
    using State = RestrictState;
    using Payload = int;
    using Output = std::set<int>;

    std::string name() const { return "pair-restricted"; }
    State init(int pid, const Item&) const { return State{pid, 0, {}}; }
    Payload message(const State& s) const { return s.owner; }
    State receive(const State& s, const std::map<int, Payload>& inbox) const {
        State t = s;
        const auto& [a, b] = schedule.pair_at(t.round);
        t.round++;
        std::optional<int> got;
        if (t.owner == a && inbox.count(b)) got = b;
        if (t.owner == b && inbox.count(a)) got = a;
        t.heard_from_partner.push_back(got);
        return t;
    }
    std::optional<Output> output(const State&) const { return std::nullopt; }
    std::uint64_t state_digest(const State& s) const;
    nlohmann::json state_json(const State& s) const;
    nlohmann::json output_json(const Output& o) const { return o; }
    nlohmann::json item_json(const Item& item) const { return item; }
};

struct CompleteToPairsResult {
    std::vector<graph::Rcg> deliveries;  // per round, restricted to the scheduled pair
    engine::ExecutionTrace trace;
};

// Per-round projection of tournament rounds onto the scheduled pair; every
// projection is a legal pair delivery because at least one direction of each
// pair survives each round.
CompleteToPairsResult tp_complete_to_tp_pairs(int n, const adversary::PairSchedule& schedule,
                                              std::uint64_t seed);
CompleteToPairsResult tp_complete_to_tp_pairs(int n, const adversary::PairSchedule& schedule,
                                              const std::vector<graph::Rcg>& rcgs);

// ---------------------------------------------------------------------------
// Trace-level checks
// ---------------------------------------------------------------------------

struct GrowthCheck {
    bool ok = true;
    int round = -1;             // first violating round transition
    std::pair<int, int> pair{-1, -1};
};

// Gossip progress under a traversal-path adversary: id sets never shrink, and
// while a pair is mutually uncovered the combined count of processors that
// know i or know j strictly grows each round.
GrowthCheck check_gossip_growth(const std::vector<std::vector<std::set<int>>>& per_round_sets);

}  // namespace adversim::protocols
