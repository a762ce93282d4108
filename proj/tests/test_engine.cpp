#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "adversim/engine.hpp"
#include "adversim/protocols.hpp"

using namespace adversim;
using adversary::AdversarySpec;
using engine::ExecutionTrace;
using engine::FullInformationProtocol;
using graph::Rcg;

namespace {

std::vector<nlohmann::json> json_ids(int n) {
    std::vector<nlohmann::json> out;
    for (int i = 0; i < n; ++i) out.push_back(i);
    return out;
}

// Records, per round, exactly which senders were heard and what they sent.
// Used to pin down the synchrony contract: deliveries come from the current
// round's graph and from the senders' pre-round states, nothing else.
struct SpyProtocol {
    struct StateT {
        int owner = 0;
        int round = 0;
        std::vector<std::map<int, int>> inboxes;  // per round: sender -> sender's round at send
    };
    using Item = int;
    using State = StateT;
    using Payload = std::pair<int, int>;  // (owner, rounds elapsed at send)
    using Output = int;

    std::string name() const { return "spy"; }
    State init(int pid, const Item&) const { return State{pid, 0, {}}; }
    Payload message(const State& s) const { return {s.owner, s.round}; }
    State receive(const State& s, const std::map<int, Payload>& inbox) const {
        State t = s;
        std::map<int, int> record;
        for (const auto& [from, payload] : inbox) {
            REQUIRE(payload.first == from);
            record[from] = payload.second;
        }
        t.inboxes.push_back(record);
        t.round++;
        return t;
    }
    std::optional<Output> output(const State&) const { return std::nullopt; }
    std::uint64_t state_digest(const State& s) const {
        Digest d;
        d.mix(static_cast<std::uint64_t>(s.owner));
        d.mix(static_cast<std::uint64_t>(s.round));
        for (const auto& inbox : s.inboxes) {
            d.mix(inbox.size());
            for (const auto& [from, round] : inbox) {
                d.mix(static_cast<std::uint64_t>(from));
                d.mix(static_cast<std::uint64_t>(round));
            }
        }
        return d.value();
    }
    nlohmann::json state_json(const State& s) const {
        return {{"owner", s.owner}, {"round", s.round}};
    }
    nlohmann::json output_json(const Output& o) const { return o; }
    nlohmann::json item_json(const Item& item) const { return item; }
};

}  // namespace

TEST_CASE("zero rounds leaves only initial states") {
    auto run = engine::run(FullInformationProtocol{}, AdversarySpec::tp_complete(3), 0,
                           json_ids(3), 1);
    CHECK(run.trace.rounds.empty());
    CHECK(run.states.size() == 1);
    CHECK(run.trace.initial_digests.size() == 3);
    for (const auto& s : run.final_states()) CHECK(s->rounds() == 0);
}

TEST_CASE("a forced edge delivers exactly one view") {
    auto run = engine::run_with_rcgs(FullInformationProtocol{}, {Rcg(2, {{0, 1}})},
                                     json_ids(2));
    const auto& v0 = run.final_states()[0];
    const auto& v1 = run.final_states()[1];
    CHECK(v1->inbox().count(0) == 1);
    CHECK(v1->inbox().size() == 1);
    CHECK(v0->inbox().empty());
    CHECK(v0->rounds() == 1);
}

TEST_CASE("every tournament round delivers between zero and n-1 views") {
    for (const auto& g : AdversarySpec::tp_complete(3).enumerate(0)) {
        auto run = engine::run_with_rcgs(FullInformationProtocol{}, {g}, json_ids(3));
        for (int pid = 0; pid < 3; ++pid) {
            const auto& inbox = run.final_states()[static_cast<std::size_t>(pid)]->inbox();
            CHECK(inbox.size() <= 2);
            for (int other = 0; other < 3; ++other) {
                if (other == pid) continue;
                // At least one of the two heard the other.
                const auto& other_inbox =
                    run.final_states()[static_cast<std::size_t>(other)]->inbox();
                CHECK((inbox.count(other) == 1 || other_inbox.count(pid) == 1));
            }
        }
    }
}

TEST_CASE("identical seeds give bit-identical traces") {
    for (const char* name : {"tp", "tp-complete", "sc", "kcc:2", "tp-pairs:RR"}) {
        auto spec = AdversarySpec::parse(name, 4);
        auto a = engine::run(FullInformationProtocol{}, spec, 4, json_ids(4), 99);
        auto b = engine::run(FullInformationProtocol{}, spec, 4, json_ids(4), 99);
        CHECK(a.trace.to_json().dump() == b.trace.to_json().dump());
        auto c = engine::run(FullInformationProtocol{}, spec, 4, json_ids(4), 100);
        CHECK(a.trace.to_json().dump() != c.trace.to_json().dump());
    }
}

TEST_CASE("spy protocol sees exactly the round's deliveries") {
    auto spec = AdversarySpec::tp_complete(4);
    std::vector<Rcg> rcgs;
    for (int r = 0; r < 5; ++r) rcgs.push_back(spec.sample(r, mix_seed(11, r)));
    auto run = engine::run_with_rcgs(SpyProtocol{}, rcgs, {0, 1, 2, 3});
    for (int pid = 0; pid < 4; ++pid) {
        const auto& state = run.final_states()[static_cast<std::size_t>(pid)];
        REQUIRE(state.inboxes.size() == 5);
        for (int r = 0; r < 5; ++r) {
            const auto& inbox = state.inboxes[static_cast<std::size_t>(r)];
            for (int s = 0; s < 4; ++s) {
                if (s == pid) continue;
                CHECK(inbox.count(s) == (rcgs[static_cast<std::size_t>(r)].has_edge(s, pid) ? 1u : 0u));
            }
            // Payloads were snapshotted before any state advanced this round.
            for (const auto& [from, round_at_send] : inbox) {
                (void)from;
                CHECK(round_at_send == r);
            }
        }
    }
}

TEST_CASE("trace json round-trips") {
    auto run = engine::run(FullInformationProtocol{}, AdversarySpec::tp_complete(3), 2,
                           json_ids(3), 5, {.dump_states = true});
    auto parsed = ExecutionTrace::from_json(run.trace.to_json());
    CHECK(parsed.to_json().dump() == run.trace.to_json().dump());
}

TEST_CASE("exhaustive with zero rounds runs the single empty execution") {
    auto verdict = engine::run_exhaustive(
        FullInformationProtocol{}, AdversarySpec::tp_complete(3), 0, json_ids(3),
        [](const engine::Run<FullInformationProtocol>& run) {
            return run.states.size() == 1 && run.trace.rounds.empty();
        });
    CHECK(verdict.all_hold);
    CHECK(verdict.executions == 1);
}

TEST_CASE("exhaustive tree size is the per-round product") {
    auto verdict = engine::run_exhaustive(
        FullInformationProtocol{}, AdversarySpec::tp_complete(3), 3, json_ids(3),
        [](const engine::Run<FullInformationProtocol>&) { return true; });
    CHECK(verdict.all_hold);
    CHECK(verdict.executions == 19683);
}

TEST_CASE("exhaustive runs the decision tree without duplicates") {
    std::set<std::vector<std::uint64_t>> seen;
    auto verdict = engine::run_exhaustive(
        FullInformationProtocol{}, AdversarySpec::tp_complete(2), 3, json_ids(2),
        [&](const engine::Run<FullInformationProtocol>& run) {
            std::vector<std::uint64_t> sig;
            for (const auto& r : run.trace.rounds) {
                for (auto d : r.digests) sig.push_back(d);
            }
            return seen.insert(sig).second;
        });
    CHECK(verdict.all_hold);  // distinct branches give distinct histories
    CHECK(seen.size() == 27);
}

TEST_CASE("a failing property reports the canonically first branch") {
    auto verdict = engine::run_exhaustive(
        FullInformationProtocol{}, AdversarySpec::tp_complete(2), 2, json_ids(2),
        [](const engine::Run<FullInformationProtocol>&) { return false; });
    CHECK_FALSE(verdict.all_hold);
    CHECK(verdict.branch == std::vector<int>{0, 0});
    REQUIRE(verdict.counterexample);
    // Branch 0 is the canonically smallest tournament round on two nodes.
    CHECK(verdict.counterexample->rounds[0].rcg == Rcg(2, {{0, 1}}));
    CHECK(verdict.counterexample->seed == "exhaustive:0.0");
}

TEST_CASE("parallel and serial verdicts agree") {
    auto property = [](const engine::Run<FullInformationProtocol>& run) {
        // Fails on branches whose last round delivered both directions.
        return run.trace.rounds.back().rcg.edges().size() != 2;
    };
    auto serial = engine::run_exhaustive(FullInformationProtocol{},
                                         AdversarySpec::tp_complete(2), 3, json_ids(2),
                                         property);
    engine::ExhaustiveOptions par;
    par.jobs = 4;
    auto parallel = engine::run_exhaustive(FullInformationProtocol{},
                                           AdversarySpec::tp_complete(2), 3, json_ids(2),
                                           property, par);
    CHECK_FALSE(serial.all_hold);
    CHECK(serial.branch == parallel.branch);
}

TEST_CASE("branch cap guards the tree") {
    engine::ExhaustiveOptions opts;
    opts.branch_cap = 100;
    CHECK_THROWS_AS(
        engine::run_exhaustive(
            FullInformationProtocol{}, AdversarySpec::tp_complete(3), 3, json_ids(3),
            [](const engine::Run<FullInformationProtocol>&) { return true; }, opts),
        BudgetError);
}

TEST_CASE("views share structure and memoize digests") {
    auto v0 = engine::View::initial(0, 0);
    auto v1 = engine::View::initial(1, 1);
    auto v0x = engine::View::extend(v0, {{1, v1}});
    CHECK(v0x->prev() == v0);
    CHECK(v0x->inbox().at(1) == v1);
    CHECK(v0x->rounds() == 1);
    CHECK(v0x->digest() != v0->digest());
    auto again = engine::View::extend(v0, {{1, v1}});
    CHECK(again->digest() == v0x->digest());
    CHECK_THROWS_AS(engine::View::extend(v0, {{0, v0}}), std::invalid_argument);
    // A view extended at round r can only receive views with r prior rounds.
    CHECK_THROWS_AS(engine::View::extend(v0x, {{1, v1}}), std::invalid_argument);
}
