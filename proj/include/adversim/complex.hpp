#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "adversim/adversary.hpp"
#include "adversim/view.hpp"
#include "json.hpp"

namespace adversim::complex {

// A (processor, reachable local state) pair. The carrier is the minimal face
// of the original simplex the vertex lies on, tracked combinatorially.
struct Vertex {
    int id = 0;
    int color = 0;
    std::uint64_t digest = 0;
    std::set<int> carrier;
    engine::ViewPtr state;  // null when loaded from JSON
};

// Pure chromatic complex: every top cell has n vertices, one per color.
// Edges and lower faces are derived from the top cells.
struct SimComplex {
    int n = 0;
    int k = 0;                                   // splits applied
    std::vector<std::pair<int, int>> schedule;   // pairs applied, in order
    std::vector<Vertex> vertices;
    std::vector<std::vector<int>> tops;          // sorted vertex ids
    std::map<int, std::array<double, 2>> coords; // planar embedding, n == 3 only
};

class MalformedComplexError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedDimensionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// One top simplex; vertex i has color i, carrier {i}, and the initial view of
// processor i.
SimComplex initial_complex(int n, const std::vector<nlohmann::json>& inputs);
SimComplex initial_complex(int n);

// Replaces every edge colored {i, j} by a three-edge alternating path and
// each incident top simplex by three. The split vertices receive the partner's
// message; every surviving vertex gets one "heard nothing" incarnation.
SimComplex xy_split_round(const SimComplex& c, std::pair<int, int> pair);

// Folds xy_split_round over k rounds of the schedule.
SimComplex build(int n, const adversary::PairSchedule& schedule, int k,
                 const std::vector<nlohmann::json>& inputs);
SimComplex build(int n, const adversary::PairSchedule& schedule, int k);

// Every top simplex carries all n colors exactly once.
bool check_chromatic(const SimComplex& c);
// Every vertex's color belongs to its carrier.
bool check_sperner(const SimComplex& c);

// Undirected 1-skeleton derived from the top cells.
std::set<std::pair<int, int>> skeleton_edges(const SimComplex& c);

struct CrossValidation {
    bool ok = true;
    std::string mismatch;
    std::uint64_t executions = 0;
};

// Replays every per-pair adversary choice tree over the complex's schedule
// with the full-information protocol and checks that executions correspond
// one-to-one with top simplices (equal state digests per color), so two
// vertices share a top cell exactly when some execution realizes both states.
CrossValidation cross_validate(const SimComplex& c, const std::vector<nlohmann::json>& inputs);
CrossValidation cross_validate(const SimComplex& c);

nlohmann::json to_json(const SimComplex& c);
SimComplex from_json(const nlohmann::json& j);
std::string to_dot(const SimComplex& c);
// Planar drawing with split vertices at 1/3 and 2/3 along their parent edge.
// Requires n == 3 and a complex built in-process (coordinates present).
std::string to_svg(const SimComplex& c);

}  // namespace adversim::complex
