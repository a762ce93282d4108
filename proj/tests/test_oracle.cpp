#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "adversim/graph.hpp"
#include "adversim/oracle.hpp"
#include "adversim/protocols.hpp"

using namespace adversim;
using graph::Rcg;

TEST_CASE("reachability oracle basics") {
    CHECK(oracle::reachability_pair_oracle(Rcg(3, {{0, 1}, {1, 2}, {2, 0}})));
    CHECK(oracle::reachability_pair_oracle(Rcg(3, {{0, 1}, {1, 2}})));
    CHECK_FALSE(oracle::reachability_pair_oracle(Rcg(3, {{0, 1}, {2, 1}})));
    CHECK(oracle::reachability_pair_oracle(Rcg(1)));
    CHECK_FALSE(oracle::reachability_pair_oracle(Rcg(2)));
    CHECK_THROWS_AS(oracle::reachability_pair_oracle(Rcg(9)), std::invalid_argument);
}

TEST_CASE("tournament facts hold exhaustively") {
    for (int n = 1; n <= 4; ++n) {
        auto report = oracle::tournament_facts_oracle(n);
        CHECK(report.tournaments == (1ULL << graph::Tournament::pair_count(n)));
        CHECK(report.all_pass());
    }
    CHECK_THROWS_AS(oracle::tournament_facts_oracle(6), std::invalid_argument);
}

TEST_CASE("king liveness bounds at small sizes") {
    auto one = oracle::king_liveness_search(1, 4);
    REQUIRE(one.l_star.has_value());
    CHECK(*one.l_star == 1);
    CHECK(one.choices_per_round == 1);

    auto two = oracle::king_liveness_search(2, 4);
    REQUIRE(two.l_star.has_value());
    CHECK(*two.l_star == 2);
    CHECK(two.choices_per_round == 3);

    auto three = oracle::king_liveness_search(3, 8);
    REQUIRE(three.l_star.has_value());
    CHECK(*three.l_star == 3);  // discovered by the search, frozen here
    CHECK(three.choices_per_round == 27);
    CHECK(three.nominal_branches == 19683);
}

TEST_CASE("a too-shallow liveness search reports not-found") {
    auto report = oracle::king_liveness_search(3, 2);
    CHECK_FALSE(report.l_star.has_value());
}

TEST_CASE("boundary witness exists once a pair is exempt") {
    for (auto pair : {std::pair<int, int>{0, 1}, {0, 2}, {1, 2}}) {
        auto report = oracle::boundary_witness_search(3, pair, 8);
        REQUIRE(report.found);
        CHECK(report.witness.size() == 8);

        // Replay through the register simulation: within the witness, the
        // exempt endpoints never complete a single write.
        auto res = protocols::simulate_rwwf(3, 1000, report.witness);
        for (int pid : {pair.first, pair.second}) {
            CHECK(res.outcome.processors[static_cast<std::size_t>(pid)].writes.empty());
        }
    }
}

TEST_CASE("without the exemption no such branch exists") {
    // The same search restricted to legal tournament rounds dies at the
    // liveness bound, so the witness is really about the weakened rule.
    auto live = oracle::king_liveness_search(3, 8);
    REQUIRE(live.l_star.has_value());
    CHECK(*live.l_star <= 8);
}

TEST_CASE("boundary witness rejects bad arguments") {
    CHECK_THROWS_AS(oracle::boundary_witness_search(2, {0, 1}, 4), std::invalid_argument);
    CHECK_THROWS_AS(oracle::boundary_witness_search(3, {0, 0}, 4), std::invalid_argument);
    CHECK_THROWS_AS(oracle::boundary_witness_search(3, {0, 1}, 9), std::invalid_argument);
}
