#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace adversim::graph {

// One round's directed message-delivery graph on n processors. Edge (s, r)
// means the message s -> r was delivered this round. Self-delivery is
// implicit and never stored. Immutable in spirit: build, then share freely.
class Rcg {
public:
    Rcg() : n_(1) {}
    explicit Rcg(int n);
    Rcg(int n, std::set<std::pair<int, int>> edges);
    Rcg(int n, std::initializer_list<std::pair<int, int>> edges);

    void add_edge(int sender, int receiver);
    bool has_edge(int sender, int receiver) const { return edges_.count({sender, receiver}) != 0; }

    int n() const { return n_; }
    const std::set<std::pair<int, int>>& edges() const { return edges_; }

    bool operator==(const Rcg& o) const { return n_ == o.n_ && edges_ == o.edges_; }
    bool operator!=(const Rcg& o) const { return !(*this == o); }
    // Canonical order: (n, sorted edge list) compared lexicographically.
    bool operator<(const Rcg& o) const {
        if (n_ != o.n_) return n_ < o.n_;
        return edges_ < o.edges_;
    }

    nlohmann::json to_json() const;
    static Rcg from_json(const nlohmann::json& j);
    std::string to_dot() const;

private:
    void check_edge(int sender, int receiver) const;

    int n_;
    std::set<std::pair<int, int>> edges_;
};

// Complete orientation: exactly one directed edge per unordered pair.
class Tournament {
public:
    Tournament(int n, std::set<std::pair<int, int>> edges);

    // bits has one bit per pair (i, j), i < j, in lexicographic pair order;
    // a set bit orients i -> j, a clear bit j -> i.
    static Tournament from_bits(int n, std::uint64_t bits);
    static std::uint64_t pair_count(int n) {
        return static_cast<std::uint64_t>(n) * (n - 1) / 2;
    }

    int n() const { return n_; }
    bool beats(int a, int b) const { return edges_.count({a, b}) != 0; }
    const std::set<std::pair<int, int>>& edges() const { return edges_; }
    Rcg to_rcg() const { return Rcg(n_, edges_); }

private:
    int n_;
    std::set<std::pair<int, int>> edges_;
};

struct SccResult {
    // vertex -> component id; ids are 0..count-1, numbered by the smallest
    // vertex contained in each component.
    std::vector<int> component;
    int count = 0;
    std::set<std::pair<int, int>> dag_edges;
};

SccResult scc_condensation(const Rcg& g);

// True iff a directed (possibly non-simple) walk visits all n nodes.
// Decided via the condensation: such a walk exists iff the condensation DAG
// has a Hamiltonian path, which holds iff some topological order is
// consecutively connected by edges.
bool has_traversal_path(const Rcg& g);

// True iff every unordered pair has at least one direction present.
bool contains_tournament(const Rcg& g);

// Vertex order v_1..v_n with an edge v_i -> v_{i+1} for all i. Insertion
// construction: each vertex (ascending index) goes to the first position
// where it beats the successor, else the end.
std::vector<int> tournament_spanning_path(const Tournament& t);

// Vertex of maximum out-degree, ties broken by smallest index. Reaches every
// other vertex within two hops.
int find_king(const Tournament& t);

}  // namespace adversim::graph
