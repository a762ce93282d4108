#include "adversim/protocols.hpp"

#include <algorithm>
#include <stdexcept>

namespace adversim::protocols {

using adversary::AdversarySpec;
using adversary::PairSchedule;
using engine::ExecutionTrace;
using engine::ViolationError;
using graph::Rcg;

nlohmann::json id_set_state_json(const IdSetState& s) {
    nlohmann::json j;
    j["owner"] = s.owner;
    j["round"] = s.round;
    j["ids"] = s.ids;
    if (s.returned) {
        j["returned"] = {{"round", s.returned->first}, {"ids", s.returned->second}};
    } else {
        j["returned"] = nullptr;
    }
    return j;
}

std::uint64_t id_set_state_digest(const IdSetState& s) {
    Digest d;
    d.mix(0x696473u);
    d.mix(static_cast<std::uint64_t>(s.owner));
    d.mix(static_cast<std::uint64_t>(s.round));
    d.mix(s.ids.size());
    for (int id : s.ids) d.mix(static_cast<std::uint64_t>(id));
    if (s.returned) {
        d.mix(static_cast<std::uint64_t>(s.returned->first) + 1);
        for (int id : s.returned->second) d.mix(static_cast<std::uint64_t>(id));
    } else {
        d.mix(0);
    }
    return d.value();
}

// ---------------------------------------------------------------------------
// Knowledge vectors and the king condition
// ---------------------------------------------------------------------------

namespace {

int seq_of(const KnowledgeVector& v, int writer) {
    auto it = v.latest.find(writer);
    return it == v.latest.end() ? 0 : it->second.seq;
}

nlohmann::json triplet_json(const WriteTriplet& t) {
    nlohmann::json values = nlohmann::json::array();
    for (const auto& v : t.values) {
        if (v) values.push_back(*v);
        else values.push_back(nullptr);
    }
    return {{"writer", t.writer}, {"seq", t.seq}, {"values", values}};
}

std::vector<std::optional<nlohmann::json>> write_values(int n, int seq) {
    return std::vector<std::optional<nlohmann::json>>(static_cast<std::size_t>(n),
                                                      nlohmann::json(seq));
}

}  // namespace

nlohmann::json knowledge_vector_json(const KnowledgeVector& v) {
    nlohmann::json latest = nlohmann::json::object();
    for (const auto& [writer, triplet] : v.latest) {
        latest[std::to_string(writer)] = triplet_json(triplet);
    }
    return {{"owner", v.owner}, {"latest", latest}, {"done", v.done_marks}};
}

bool more_advanced(const KnowledgeVector& a, const KnowledgeVector& b) {
    if (a.owner != b.owner)
        throw std::invalid_argument("more_advanced: vectors of different owners");
    const int own_a = seq_of(a, a.owner);
    const int own_b = seq_of(b, b.owner);
    if (own_a != own_b) return own_a > own_b;

    std::set<int> writers;
    for (const auto& [w, t] : a.latest) {
        (void)t;
        writers.insert(w);
    }
    for (const auto& [w, t] : b.latest) {
        (void)t;
        writers.insert(w);
    }
    int max_a = 0, max_b = 0;
    for (int w : writers) {
        max_a = std::max(max_a, seq_of(a, w));
        max_b = std::max(max_b, seq_of(b, w));
    }
    if (max_a != max_b) return max_a > max_b;
    for (int w : writers) {
        const int sa = seq_of(a, w), sb = seq_of(b, w);
        if (sa != sb) return sa > sb;
    }
    return a.done_marks > b.done_marks;
}

bool king_condition(const KnowledgeVector& kv,
                    const std::map<int, KnowledgeVector>& round_received) {
    const int current = seq_of(kv, kv.owner);
    for (const auto& [sender, vec] : round_received) {
        if (sender == kv.owner) continue;
        if (kv.done_marks.count(sender)) continue;
        if (seq_of(vec, kv.owner) < current) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Register simulation protocol
// ---------------------------------------------------------------------------

RegState RegisterSimProtocol::init(int pid, const Item& item) const {
    (void)item;
    RegState s;
    s.owner = pid;
    s.n = n;
    s.writes_target = writes_target;
    s.kv.owner = pid;
    s.kv.latest[pid] = WriteTriplet{pid, write_values(n, 1), 1};
    s.current_seq = 1;
    s.current_issued_round = 0;
    s.issued.push_back({1, 0});
    return s;
}

RegisterSimProtocol::Payload RegisterSimProtocol::message(const State& s) const {
    Payload p = s.known;
    p[s.owner] = s.kv;
    return p;
}

RegState RegisterSimProtocol::receive(const State& s,
                                      const std::map<int, Payload>& inbox) const {
    RegState t = s;
    t.round++;

    // Senders' own vectors as sent at the start of the round.
    std::map<int, KnowledgeVector> senders;
    for (const auto& [from, payload] : inbox) {
        auto own = payload.find(from);
        if (own != payload.end()) senders.emplace(from, own->second);
        for (const auto& [who, vec] : payload) {
            if (who == t.owner) continue;  // local copy is ground truth
            auto it = t.known.find(who);
            if (it == t.known.end() || more_advanced(vec, it->second)) t.known[who] = vec;
            // Fold triplets and done marks into the owner's table.
            for (const auto& [writer, triplet] : vec.latest) {
                if (writer == t.owner) continue;
                if (seq_of(t.kv, writer) < triplet.seq) t.kv.latest[writer] = triplet;
                if (triplet.seq == kDoneSeq) t.kv.done_marks.insert(writer);
            }
            t.kv.done_marks.insert(vec.done_marks.begin(), vec.done_marks.end());
        }
    }
    t.kv.done_marks.erase(t.owner);

    if (t.done) return t;  // relay: forward merged vectors, own sentinel frozen

    if (king_condition(t.kv, senders)) {
        t.writes.push_back({t.current_seq, t.current_issued_round, t.round});
        ReadRecord read{t.round, {}};
        read.seqs.resize(static_cast<std::size_t>(t.n));
        for (int w = 0; w < t.n; ++w) {
            const int seq = seq_of(t.kv, w);
            if (seq > 0) read.seqs[static_cast<std::size_t>(w)] = seq;
        }
        t.reads.push_back(read);

        if (t.current_seq == t.writes_target) {
            nlohmann::json out_seqs = nlohmann::json::array();
            for (const auto& seq : read.seqs) {
                if (seq) out_seqs.push_back(*seq);
                else out_seqs.push_back(nullptr);
            }
            t.done = true;
            t.out = nlohmann::json{{"seqs", out_seqs}};
            t.output_round = t.round;
            t.kv.latest[t.owner] = WriteTriplet{
                t.owner,
                std::vector<std::optional<nlohmann::json>>(static_cast<std::size_t>(t.n),
                                                           *t.out),
                kDoneSeq};
            t.issued.push_back({kDoneSeq, t.round});
        } else {
            t.current_seq++;
            t.kv.latest[t.owner] = WriteTriplet{t.owner, write_values(t.n, t.current_seq),
                                                t.current_seq};
            t.current_issued_round = t.round;
            t.issued.push_back({t.current_seq, t.round});
        }
    }
    return t;
}

std::uint64_t RegisterSimProtocol::state_digest(const State& s) const {
    Digest d;
    d.mix(0x726567u);
    d.mix(static_cast<std::uint64_t>(s.owner));
    d.mix(static_cast<std::uint64_t>(s.round));
    d.mix(static_cast<std::uint64_t>(s.current_seq));
    d.mix(s.done ? 1 : 0);
    auto mix_vector = [&d](const KnowledgeVector& v) {
        d.mix(static_cast<std::uint64_t>(v.owner));
        d.mix(v.latest.size());
        for (const auto& [writer, triplet] : v.latest) {
            d.mix(static_cast<std::uint64_t>(writer));
            d.mix(static_cast<std::uint64_t>(triplet.seq));
        }
        d.mix(v.done_marks.size());
        for (int m : v.done_marks) d.mix(static_cast<std::uint64_t>(m));
    };
    mix_vector(s.kv);
    d.mix(s.known.size());
    for (const auto& [who, vec] : s.known) {
        d.mix(static_cast<std::uint64_t>(who));
        mix_vector(vec);
    }
    d.mix(s.writes.size());
    d.mix(s.reads.size());
    return d.value();
}

nlohmann::json RegisterSimProtocol::state_json(const State& s) const {
    nlohmann::json known = nlohmann::json::object();
    for (const auto& [who, vec] : s.known) known[std::to_string(who)] = knowledge_vector_json(vec);
    nlohmann::json writes = nlohmann::json::array();
    for (const auto& w : s.writes) {
        writes.push_back({{"seq", w.seq}, {"issued", w.issued_round}, {"completed", w.completed_round}});
    }
    nlohmann::json reads = nlohmann::json::array();
    for (const auto& r : s.reads) {
        nlohmann::json seqs = nlohmann::json::array();
        for (const auto& q : r.seqs) {
            if (q) seqs.push_back(*q);
            else seqs.push_back(nullptr);
        }
        reads.push_back({{"round", r.round}, {"seqs", seqs}});
    }
    return {{"owner", s.owner},   {"round", s.round}, {"current_seq", s.current_seq},
            {"done", s.done},     {"kv", knowledge_vector_json(s.kv)},
            {"known", known},     {"writes", writes}, {"reads", reads}};
}

// ---------------------------------------------------------------------------
// Register simulation driver and outcome
// ---------------------------------------------------------------------------

RegisterSimOutcome outcome_from_run(const engine::Run<RegisterSimProtocol>& run, int budget) {
    const auto& finals = run.final_states();
    RegisterSimOutcome o;
    o.n = static_cast<int>(finals.size());
    o.writes_target = finals.empty() ? 0 : finals.front().writes_target;
    o.budget = budget;
    o.rounds_used = static_cast<int>(run.trace.rounds.size());
    o.spec = run.trace.spec;
    o.all_done = true;
    for (const auto& s : finals) {
        o.processors.push_back({s.writes, s.reads, s.issued, s.output_round});
        if (!s.done) o.all_done = false;
    }

    // Writes linearize at the earliest round any processor read them.
    std::map<std::pair<int, int>, int> first_read;  // (writer, seq) -> round
    for (const auto& s : finals) {
        for (const auto& r : s.reads) {
            for (int w = 0; w < o.n; ++w) {
                const auto& q = r.seqs[static_cast<std::size_t>(w)];
                if (!q) continue;
                auto key = std::make_pair(w, *q);
                auto it = first_read.find(key);
                if (it == first_read.end() || r.round < it->second) first_read[key] = r.round;
            }
        }
    }
    for (const auto& [key, round] : first_read) {
        o.linearization.push_back({"write", key.first, key.second, round});
    }
    for (const auto& s : finals) {
        for (const auto& r : s.reads) o.linearization.push_back({"read", s.owner, 0, r.round});
    }
    std::sort(o.linearization.begin(), o.linearization.end(),
              [](const LinEvent& a, const LinEvent& b) {
                  return std::tie(a.round, a.op, a.pid, a.seq) <
                         std::tie(b.round, b.op, b.pid, b.seq);
              });
    return o;
}

namespace {

RegisterSimResult finish_register_run(engine::Run<RegisterSimProtocol>&& run, int budget) {
    RegisterSimResult res;
    res.outcome = outcome_from_run(run, budget);
    run.trace.result = res.outcome.to_json();
    res.trace = run.trace;
    res.run = std::move(run);
    return res;
}

}  // namespace

RegisterSimResult simulate_rwwf(int n, int writes_per_processor, int budget,
                                std::uint64_t seed) {
    if (writes_per_processor < 1) throw std::invalid_argument("simulate_rwwf: need writes >= 1");
    if (budget < 1) throw std::invalid_argument("simulate_rwwf: need budget >= 1");
    const auto spec = AdversarySpec::tp_complete(n);
    const RegisterSimProtocol protocol{n, writes_per_processor};

    // Round-by-round loop so the run can stop as soon as everyone is done.
    std::vector<graph::Rcg> rcgs;
    std::vector<RegState> cur;
    for (int i = 0; i < n; ++i) cur.push_back(protocol.init(i, i));
    for (int r = 0; r < budget; ++r) {
        bool all_done = true;
        for (const auto& s : cur) {
            if (!s.done) {
                all_done = false;
                break;
            }
        }
        if (all_done) break;
        rcgs.push_back(spec.sample(r, mix_seed(seed, r)));
        cur = engine::step_round(protocol, cur, rcgs.back());
    }

    auto run = engine::run_with_rcgs(protocol, rcgs, id_items(n), {}, spec.to_string(),
                                     "seed:" + std::to_string(seed));
    return finish_register_run(std::move(run), budget);
}

RegisterSimResult simulate_rwwf(int n, int writes_per_processor,
                                const std::vector<graph::Rcg>& rcgs) {
    if (writes_per_processor < 1) throw std::invalid_argument("simulate_rwwf: need writes >= 1");
    const RegisterSimProtocol protocol{n, writes_per_processor};
    auto run = engine::run_with_rcgs(protocol, rcgs, id_items(n), {}, "tp-complete", "fixed");
    return finish_register_run(std::move(run), static_cast<int>(rcgs.size()));
}

nlohmann::json RegisterSimOutcome::to_json() const {
    nlohmann::json procs = nlohmann::json::array();
    for (const auto& p : processors) {
        nlohmann::json writes = nlohmann::json::array();
        for (const auto& w : p.writes) {
            writes.push_back(
                {{"seq", w.seq}, {"issued", w.issued_round}, {"completed", w.completed_round}});
        }
        nlohmann::json reads = nlohmann::json::array();
        for (const auto& r : p.reads) {
            nlohmann::json seqs = nlohmann::json::array();
            for (const auto& q : r.seqs) {
                if (q) seqs.push_back(*q);
                else seqs.push_back(nullptr);
            }
            reads.push_back({{"round", r.round}, {"seqs", seqs}});
        }
        nlohmann::json issued = nlohmann::json::array();
        for (const auto& [seq, round] : p.issued) issued.push_back({seq, round});
        nlohmann::json proc = {{"writes", writes}, {"reads", reads}, {"issued", issued}};
        if (p.output_round) proc["output_round"] = *p.output_round;
        else proc["output_round"] = nullptr;
        procs.push_back(std::move(proc));
    }
    nlohmann::json lin = nlohmann::json::array();
    for (const auto& e : linearization) {
        nlohmann::json ev = {{"op", e.op}, {"pid", e.pid}, {"round", e.round}};
        if (e.op == "write") ev["seq"] = e.seq;
        lin.push_back(std::move(ev));
    }
    return {{"schema_version", 1},
            {"type", "register-outcome"},
            {"n", n},
            {"writes_target", writes_target},
            {"budget", budget},
            {"rounds_used", rounds_used},
            {"all_done", all_done},
            {"spec", spec},
            {"processors", procs},
            {"linearization", lin}};
}

RegisterSimOutcome RegisterSimOutcome::from_json(const nlohmann::json& j) {
    RegisterSimOutcome o;
    o.n = j.at("n").get<int>();
    o.writes_target = j.at("writes_target").get<int>();
    o.budget = j.at("budget").get<int>();
    o.rounds_used = j.at("rounds_used").get<int>();
    o.all_done = j.at("all_done").get<bool>();
    o.spec = j.at("spec").get<std::string>();
    for (const auto& jp : j.at("processors")) {
        ProcessorOutcome p;
        for (const auto& w : jp.at("writes")) {
            p.writes.push_back({w.at("seq").get<int>(), w.at("issued").get<int>(),
                                w.at("completed").get<int>()});
        }
        for (const auto& r : jp.at("reads")) {
            ReadRecord rec{r.at("round").get<int>(), {}};
            for (const auto& q : r.at("seqs")) {
                if (q.is_null()) rec.seqs.push_back(std::nullopt);
                else rec.seqs.push_back(q.get<int>());
            }
            p.reads.push_back(std::move(rec));
        }
        for (const auto& i : jp.at("issued")) {
            p.issued.push_back({i.at(0).get<int>(), i.at(1).get<int>()});
        }
        if (!jp.at("output_round").is_null()) p.output_round = jp.at("output_round").get<int>();
        o.processors.push_back(std::move(p));
    }
    for (const auto& e : j.at("linearization")) {
        LinEvent ev;
        ev.op = e.at("op").get<std::string>();
        ev.pid = e.at("pid").get<int>();
        ev.round = e.at("round").get<int>();
        if (e.contains("seq")) ev.seq = e.at("seq").get<int>();
        o.linearization.push_back(std::move(ev));
    }
    return o;
}

HistoryCheck validate_swsr_histories(const RegisterSimOutcome& o) {
    for (int writer = 0; writer < o.n; ++writer) {
        const auto& wp = o.processors[static_cast<std::size_t>(writer)];
        std::map<int, int> issue_round;  // seq -> round
        for (const auto& [seq, round] : wp.issued) issue_round[seq] = round;
        // completed seqs sorted by completion round
        std::vector<std::pair<int, int>> completions;  // (completed_round, seq)
        for (const auto& w : wp.writes) completions.push_back({w.completed_round, w.seq});
        std::sort(completions.begin(), completions.end());

        for (int reader = 0; reader < o.n; ++reader) {
            const auto& rp = o.processors[static_cast<std::size_t>(reader)];
            int prev_seq = 0;
            for (const auto& read : rp.reads) {
                const auto& q = read.seqs[static_cast<std::size_t>(writer)];
                const int seq = q ? *q : 0;
                if (seq < prev_seq) {
                    return {false,
                            "reader " + std::to_string(reader) + " saw writer " +
                                std::to_string(writer) + " go backwards",
                            read.round};
                }
                prev_seq = seq;
                int floor_seq = 0;
                for (const auto& [round, cseq] : completions) {
                    if (round < read.round) floor_seq = std::max(floor_seq, cseq);
                }
                if (seq < floor_seq) {
                    return {false,
                            "read by " + std::to_string(reader) + " missed writer " +
                                std::to_string(writer) + "'s completed write " +
                                std::to_string(floor_seq),
                            read.round};
                }
                if (seq > 0) {
                    auto it = issue_round.find(seq);
                    if (it == issue_round.end() || it->second > read.round) {
                        return {false,
                                "read by " + std::to_string(reader) + " returned seq " +
                                    std::to_string(seq) + " never issued by " +
                                    std::to_string(writer) + " by then",
                                read.round};
                    }
                }
            }
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Emulations and translations
// ---------------------------------------------------------------------------

namespace {

EmulationResult finish_emulation(engine::Run<GossipProtocol>&& run) {
    EmulationResult res;
    const auto& finals = run.final_states();
    const int n = static_cast<int>(finals.size());
    graph::Rcg emulated(n);
    for (int j = 0; j < n; ++j) {
        for (int i : finals[static_cast<std::size_t>(j)].ids) {
            if (i != j) emulated.add_edge(i, j);
        }
    }
    run.trace.result = {{"emulated", emulated.to_json()}};
    res.trace = run.trace;
    for (const auto& s : finals) res.sets.push_back(s.ids);
    if (!graph::contains_tournament(emulated)) {
        throw ViolationError("emulated graph misses a pair", res.trace);
    }
    res.emulated = std::move(emulated);
    return res;
}

}  // namespace

EmulationResult emulate_tp_complete_over_tp(int n, std::uint64_t seed) {
    auto run = engine::run(GossipProtocol{}, AdversarySpec::tp(n), 2 * n - 1, id_items(n), seed);
    return finish_emulation(std::move(run));
}

EmulationResult emulate_tp_complete_over_tp(int n, const std::vector<graph::Rcg>& rcgs) {
    auto run = engine::run_with_rcgs(GossipProtocol{}, rcgs, id_items(n), {}, "tp", "fixed");
    return finish_emulation(std::move(run));
}

namespace {

SnapshotResult finish_snapshot(engine::Run<SnapshotProtocol>&& run) {
    SnapshotResult res;
    const auto& finals = run.final_states();
    const int n = static_cast<int>(finals.size());
    nlohmann::json returned = nlohmann::json::array();
    std::vector<std::pair<int, std::set<int>>> outputs;
    for (int i = 0; i < n; ++i) {
        const auto& s = finals[static_cast<std::size_t>(i)];
        if (!s.returned) {
            run.trace.result = {{"returned", nullptr}};
            throw ViolationError("processor " + std::to_string(i) +
                                     " did not return within n rounds",
                                 run.trace);
        }
        res.returned.push_back(s.returned->second);
        res.return_round.push_back(s.returned->first);
        outputs.push_back({i, s.returned->second});
        returned.push_back({{"pid", i}, {"round", s.returned->first}, {"ids", s.returned->second}});
    }
    run.trace.result = {{"returned", returned}};
    res.trace = run.trace;
    if (!validate_snapshot(outputs)) {
        throw ViolationError("returned sets are not snapshots", res.trace);
    }
    return res;
}

}  // namespace

SnapshotResult snapshot_over_tp_complete(int n, std::uint64_t seed) {
    auto run = engine::run(SnapshotProtocol{}, AdversarySpec::tp_complete(n), n, id_items(n), seed);
    return finish_snapshot(std::move(run));
}

SnapshotResult snapshot_over_tp_complete(int n, const std::vector<graph::Rcg>& rcgs) {
    if (static_cast<int>(rcgs.size()) != n)
        throw std::invalid_argument("snapshot: need exactly n rounds");
    auto run = engine::run_with_rcgs(SnapshotProtocol{}, rcgs, id_items(n), {}, "tp-complete",
                                     "fixed");
    return finish_snapshot(std::move(run));
}

bool validate_snapshot(const std::vector<std::pair<int, std::set<int>>>& outputs) {
    for (const auto& [pid, ids] : outputs) {
        if (ids.count(pid) == 0) return false;
    }
    std::vector<const std::set<int>*> sets;
    sets.reserve(outputs.size());
    for (const auto& [pid, ids] : outputs) {
        (void)pid;
        sets.push_back(&ids);
    }
    std::sort(sets.begin(), sets.end(),
              [](const std::set<int>* a, const std::set<int>* b) { return a->size() < b->size(); });
    for (std::size_t i = 0; i + 1 < sets.size(); ++i) {
        if (!std::includes(sets[i + 1]->begin(), sets[i + 1]->end(), sets[i]->begin(),
                           sets[i]->end()))
            return false;
    }
    return true;
}

std::uint64_t DirectReceiveProtocol::state_digest(const State& s) const {
    Digest d;
    d.mix(0x646972u);
    d.mix(static_cast<std::uint64_t>(s.owner));
    d.mix(static_cast<std::uint64_t>(s.round));
    for (int id : s.heard) d.mix(static_cast<std::uint64_t>(id));
    return d.value();
}

nlohmann::json DirectReceiveProtocol::state_json(const State& s) const {
    return {{"owner", s.owner}, {"round", s.round}, {"heard", s.heard}};
}

namespace {

PairsToCompleteResult finish_pairs_to_complete(engine::Run<DirectReceiveProtocol>&& run) {
    PairsToCompleteResult res;
    const auto& finals = run.final_states();
    const int n = static_cast<int>(finals.size());
    graph::Rcg emulated(n);
    for (int j = 0; j < n; ++j) {
        for (int i : finals[static_cast<std::size_t>(j)].heard) emulated.add_edge(i, j);
    }
    run.trace.result = {{"emulated", emulated.to_json()}};
    res.trace = run.trace;
    if (n >= 2 && !graph::contains_tournament(emulated)) {
        throw ViolationError("pair sweep missed a pair", res.trace);
    }
    res.emulated = std::move(emulated);
    return res;
}

}  // namespace

PairsToCompleteResult tp_pairs_to_tp_complete(int n, std::uint64_t seed) {
    if (n < 2) {
        PairsToCompleteResult res{graph::Rcg(std::max(1, n)), {}};
        res.trace.n = std::max(1, n);
        return res;
    }
    const int rounds = n * (n - 1) / 2;
    auto run = engine::run(DirectReceiveProtocol{}, AdversarySpec::tp_pairs(n), rounds,
                           id_items(n), seed);
    return finish_pairs_to_complete(std::move(run));
}

PairsToCompleteResult tp_pairs_to_tp_complete(int n, const std::vector<graph::Rcg>& rcgs) {
    if (n < 2) {
        PairsToCompleteResult res{graph::Rcg(std::max(1, n)), {}};
        res.trace.n = std::max(1, n);
        return res;
    }
    if (static_cast<int>(rcgs.size()) != n * (n - 1) / 2)
        throw std::invalid_argument("pairs sweep: need n(n-1)/2 rounds");
    auto run = engine::run_with_rcgs(DirectReceiveProtocol{}, rcgs, id_items(n), {},
                                     AdversarySpec::tp_pairs(n).to_string(), "fixed");
    return finish_pairs_to_complete(std::move(run));
}

std::uint64_t PairRestrictedProtocol::state_digest(const State& s) const {
    Digest d;
    d.mix(0x726573u);
    d.mix(static_cast<std::uint64_t>(s.owner));
    d.mix(static_cast<std::uint64_t>(s.round));
    for (const auto& h : s.heard_from_partner) {
        d.mix(h ? static_cast<std::uint64_t>(*h) + 2 : 1);
    }
    return d.value();
}

nlohmann::json PairRestrictedProtocol::state_json(const State& s) const {
    nlohmann::json heard = nlohmann::json::array();
    for (const auto& h : s.heard_from_partner) {
        if (h) heard.push_back(*h);
        else heard.push_back(nullptr);
    }
    return {{"owner", s.owner}, {"round", s.round}, {"heard", heard}};
}

namespace {

CompleteToPairsResult finish_complete_to_pairs(engine::Run<PairRestrictedProtocol>&& run,
                                               int n, const PairSchedule& schedule) {
    CompleteToPairsResult res;
    const auto& finals = run.final_states();
    const int rounds = static_cast<int>(run.trace.rounds.size());
    nlohmann::json deliveries = nlohmann::json::array();
    const auto pairs_spec = AdversarySpec::tp_pairs(n, schedule);
    for (int t = 0; t < rounds; ++t) {
        graph::Rcg delivery(n);
        const auto& [a, b] = schedule.pair_at(t);
        for (int pid : {a, b}) {
            const auto& got =
                finals[static_cast<std::size_t>(pid)].heard_from_partner[static_cast<std::size_t>(t)];
            if (got) delivery.add_edge(*got, pid);
        }
        if (!pairs_spec.validate(t, delivery)) {
            run.trace.result = {{"deliveries", deliveries}};
            throw ViolationError("restriction of round " + std::to_string(t) +
                                     " is not a legal pair delivery",
                                 run.trace);
        }
        deliveries.push_back(delivery.to_json());
        res.deliveries.push_back(std::move(delivery));
    }
    run.trace.result = {{"deliveries", deliveries}};
    res.trace = run.trace;
    return res;
}

}  // namespace

CompleteToPairsResult tp_complete_to_tp_pairs(int n, const PairSchedule& schedule,
                                              std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("pair translation: need n >= 2");
    const int rounds = n * (n - 1) / 2;
    auto run = engine::run(PairRestrictedProtocol{schedule}, AdversarySpec::tp_complete(n),
                           rounds, id_items(n), seed);
    return finish_complete_to_pairs(std::move(run), n, schedule);
}

CompleteToPairsResult tp_complete_to_tp_pairs(int n, const PairSchedule& schedule,
                                              const std::vector<graph::Rcg>& rcgs) {
    if (n < 2) throw std::invalid_argument("pair translation: need n >= 2");
    auto run = engine::run_with_rcgs(PairRestrictedProtocol{schedule}, rcgs, id_items(n), {},
                                     "tp-complete", "fixed");
    return finish_complete_to_pairs(std::move(run), n, schedule);
}

GrowthCheck check_gossip_growth(const std::vector<std::vector<std::set<int>>>& per_round_sets) {
    if (per_round_sets.empty()) return {};
    const int n = static_cast<int>(per_round_sets.front().size());
    auto knows = [&](const std::vector<std::set<int>>& sets, int who, int target) {
        return sets[static_cast<std::size_t>(who)].count(target) != 0;
    };
    auto heard_count = [&](const std::vector<std::set<int>>& sets, int target) {
        int c = 0;
        for (int k = 0; k < n; ++k) {
            if (knows(sets, k, target)) c++;
        }
        return c;
    };
    for (std::size_t r = 0; r + 1 < per_round_sets.size(); ++r) {
        const auto& before = per_round_sets[r];
        const auto& after = per_round_sets[r + 1];
        for (int i = 0; i < n; ++i) {
            if (!std::includes(after[static_cast<std::size_t>(i)].begin(),
                               after[static_cast<std::size_t>(i)].end(),
                               before[static_cast<std::size_t>(i)].begin(),
                               before[static_cast<std::size_t>(i)].end())) {
                return {false, static_cast<int>(r) + 1, {i, i}};
            }
            for (int j = i + 1; j < n; ++j) {
                if (knows(before, j, i) || knows(before, i, j)) continue;  // covered
                const int sum_before = heard_count(before, i) + heard_count(before, j);
                const int sum_after = heard_count(after, i) + heard_count(after, j);
                if (sum_after <= sum_before) {
                    return {false, static_cast<int>(r) + 1, {i, j}};
                }
            }
        }
    }
    return {};
}

}  // namespace adversim::protocols
