#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "adversim/graph.hpp"
#include "adversim/oracle.hpp"
#include "adversim/util.hpp"

using namespace adversim;
using graph::Rcg;
using graph::Tournament;

namespace {

bool reaches_within_two_hops(const Tournament& t, int v) {
    for (int u = 0; u < t.n(); ++u) {
        if (u == v || t.beats(v, u)) continue;
        bool ok = false;
        for (int w = 0; w < t.n() && !ok; ++w) {
            if (w != v && w != u && t.beats(v, w) && t.beats(w, u)) ok = true;
        }
        if (!ok) return false;
    }
    return true;
}

bool path_valid(const Tournament& t, const std::vector<int>& path) {
    if (static_cast<int>(path.size()) != t.n()) return false;
    std::set<int> seen(path.begin(), path.end());
    if (static_cast<int>(seen.size()) != t.n()) return false;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (!t.beats(path[i], path[i + 1])) return false;
    }
    return true;
}

// All digraphs on n nodes, by edge mask over ordered pairs.
template <class F>
void for_each_digraph(int n, F&& f) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) pairs.push_back({i, j});
        }
    }
    for (std::uint64_t mask = 0; mask < (1ULL << pairs.size()); ++mask) {
        Rcg g(n);
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            if ((mask >> p) & 1) g.add_edge(pairs[p].first, pairs[p].second);
        }
        f(g);
    }
}

}  // namespace

TEST_CASE("rcg rejects malformed edges") {
    CHECK_THROWS_AS(Rcg(0), std::invalid_argument);
    Rcg g(3);
    CHECK_THROWS_AS(g.add_edge(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(-1, 1), std::invalid_argument);
}

TEST_CASE("traversal path examples") {
    CHECK(graph::has_traversal_path(Rcg(3, {{0, 1}, {1, 2}})));
    CHECK(graph::has_traversal_path(Rcg(3, {{0, 1}, {1, 2}, {2, 0}})));
    Rcg no_path(3, {{0, 1}, {2, 1}});
    CHECK_FALSE(oracle::reachability_pair_oracle(no_path));
    CHECK_FALSE(graph::has_traversal_path(no_path));
    CHECK(graph::has_traversal_path(Rcg(1)));
}

TEST_CASE("contains_tournament examples") {
    Rcg full(3);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i != j) full.add_edge(i, j);
        }
    }
    CHECK(graph::contains_tournament(full));
    CHECK(graph::contains_tournament(Rcg(3, {{0, 1}, {1, 2}, {0, 2}})));
    CHECK_FALSE(graph::contains_tournament(Rcg(3, {{1, 2}, {2, 1}})));
}

TEST_CASE("scc condensation examples") {
    auto two = graph::scc_condensation(Rcg(3, {{0, 1}, {1, 0}}));
    CHECK(two.count == 2);
    CHECK(two.component == std::vector<int>{0, 0, 1});
    CHECK(two.dag_edges.empty());

    auto cycle = graph::scc_condensation(Rcg(3, {{0, 1}, {1, 2}, {2, 0}}));
    CHECK(cycle.count == 1);

    auto chained = graph::scc_condensation(Rcg(4, {{0, 1}, {1, 0}, {1, 2}, {2, 3}, {3, 2}}));
    CHECK(chained.count == 2);
    CHECK(chained.component == std::vector<int>{0, 0, 1, 1});
    CHECK(chained.dag_edges == std::set<std::pair<int, int>>{{0, 1}});
}

TEST_CASE("spanning path examples") {
    Tournament transitive(3, {{0, 1}, {0, 2}, {1, 2}});
    CHECK(graph::tournament_spanning_path(transitive) == std::vector<int>{0, 1, 2});

    Tournament cycle(3, {{0, 1}, {1, 2}, {2, 0}});
    CHECK(path_valid(cycle, graph::tournament_spanning_path(cycle)));

    Tournament single(1, {});
    CHECK(graph::tournament_spanning_path(single) == std::vector<int>{0});
}

TEST_CASE("find_king examples") {
    Tournament transitive(3, {{0, 1}, {0, 2}, {1, 2}});
    CHECK(graph::find_king(transitive) == 0);
    CHECK(reaches_within_two_hops(transitive, 0));

    Tournament cycle(3, {{0, 1}, {1, 2}, {2, 0}});
    CHECK(graph::find_king(cycle) == 0);  // all three are kings; smallest wins
    CHECK(reaches_within_two_hops(cycle, 0));

    Tournament single(1, {});
    CHECK(graph::find_king(single) == 0);
}

TEST_CASE("spanning path and king on every tournament up to n=6") {
    for (int n = 1; n <= 6; ++n) {
        const std::uint64_t bits = Tournament::pair_count(n);
        for (std::uint64_t mask = 0; mask < (1ULL << bits); ++mask) {
            auto t = Tournament::from_bits(n, mask);
            CHECK(path_valid(t, graph::tournament_spanning_path(t)));
            CHECK(reaches_within_two_hops(t, graph::find_king(t)));
        }
    }
}

TEST_CASE("spanning path on random tournaments up to n=12") {
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 7 + static_cast<int>(rng.below(6));
        std::set<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (rng.coin()) edges.insert({i, j});
                else edges.insert({j, i});
            }
        }
        Tournament t(n, edges);
        CHECK(path_valid(t, graph::tournament_spanning_path(t)));
    }
}

TEST_CASE("traversal decision agrees with the oracle on all digraphs up to n=4") {
    for (int n = 1; n <= 4; ++n) {
        for_each_digraph(n, [](const Rcg& g) {
            CHECK(graph::has_traversal_path(g) == oracle::reachability_pair_oracle(g));
        });
    }
}

TEST_CASE("a tournament always yields a traversal path") {
    for (int n = 1; n <= 4; ++n) {
        for_each_digraph(n, [](const Rcg& g) {
            if (graph::contains_tournament(g)) CHECK(graph::has_traversal_path(g));
        });
    }
}

TEST_CASE("json round-trip is the identity") {
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(6));
        Rcg g(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i != j && rng.coin()) g.add_edge(i, j);
            }
        }
        CHECK(Rcg::from_json(g.to_json()) == g);
        CHECK(Rcg::from_json(g.to_json()).to_json().dump() == g.to_json().dump());
    }
}

TEST_CASE("dot export labels processors") {
    auto dot = Rcg(2, {{0, 1}}).to_dot();
    CHECK(dot.find("p0 -> p1") != std::string::npos);
    CHECK(dot.find("digraph") != std::string::npos);
}
