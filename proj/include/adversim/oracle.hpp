#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "adversim/graph.hpp"
#include "json.hpp"

namespace adversim::oracle {

// Ground-truth validators, deliberately naive and written without calling the
// code they certify. Size guards keep the brute force honest about its range.

// Traversal-walk existence decided two independent ways: pairwise
// comparability under the transitive closure, and permutation search for a
// Hamiltonian path over naively computed components. n <= 8.
bool reachability_pair_oracle(const graph::Rcg& g);

struct TournamentFactsReport {
    int n = 0;
    std::uint64_t tournaments = 0;
    bool spanning_path_all = true;  // permutation search found a path in each
    bool king_all = true;           // some vertex reaches all within 2 hops in each
    bool matches_primary = true;    // primary construction outputs verified too
    bool all_pass() const { return spanning_path_all && king_all && matches_primary; }
    nlohmann::json to_json() const;
};

// Exhaustive over all 2^(n(n-1)/2) tournaments. n <= 5.
TournamentFactsReport tournament_facts_oracle(int n);

struct KingLivenessReport {
    int n = 0;
    int max_depth = 0;
    std::optional<int> l_star;          // smallest depth with no king-free execution
    std::uint64_t choices_per_round = 0;
    std::uint64_t nominal_branches = 0;  // choices^l_star (saturating)
    std::uint64_t explored = 0;          // (state, round) expansions actually visited
    nlohmann::json to_json() const;
};

// First-write king liveness over every per-pair delivery tree: finds the
// smallest L such that every length-L execution contains a round where some
// processor's king condition fires, or reports not-found within max_depth.
// n <= 3, max_depth <= 8.
KingLivenessReport king_liveness_search(int n, int max_depth);

struct BoundaryWitnessReport {
    int n = 0;
    std::pair<int, int> exempt{-1, -1};
    int depth = 0;
    bool found = false;
    std::vector<graph::Rcg> witness;  // per-round deliveries
    std::uint64_t explored = 0;
    nlohmann::json to_json() const;
};

// Weakens the per-pair rule by exempting one pair (both of its messages may
// be purged every round) and searches the execution tree for a branch where
// neither endpoint's king condition ever fires. n == 3, depth <= 8.
BoundaryWitnessReport boundary_witness_search(int n, std::pair<int, int> exempt, int depth);

}  // namespace adversim::oracle
