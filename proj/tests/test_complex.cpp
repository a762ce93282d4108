#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>

#include "adversim/complex.hpp"
#include "adversim/util.hpp"

using namespace adversim;
using adversary::PairSchedule;
using namespace adversim::complex;

namespace {

PairSchedule figure_schedule() {
    PairSchedule s;
    s.rounds = {{1, 2}, {0, 1}, {0, 2}};
    return s;
}

// The boundary side of pair (i, j): vertices whose carrier is inside {i, j},
// ordered into a path by the skeleton edges between them.
std::vector<int> boundary_path(const SimComplex& c, int i, int j) {
    std::set<int> side;
    for (const auto& v : c.vertices) {
        bool inside = true;
        for (int col : v.carrier) {
            if (col != i && col != j) inside = false;
        }
        if (inside) side.insert(v.id);
    }
    std::map<int, std::vector<int>> adj;
    for (const auto& [a, b] : skeleton_edges(c)) {
        if (side.count(a) && side.count(b)) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
    }
    // Path endpoints are the original corners (carrier singletons).
    int start = -1;
    for (const auto& v : c.vertices) {
        if (v.carrier == std::set<int>{i}) start = v.id;
    }
    REQUIRE(start != -1);
    std::vector<int> path{start};
    int prev = -1, cur = start;
    while (true) {
        REQUIRE(adj[cur].size() <= 2);
        int next = -1;
        for (int cand : adj[cur]) {
            if (cand != prev) next = cand;
        }
        if (next == -1) break;
        path.push_back(next);
        prev = cur;
        cur = next;
    }
    REQUIRE(path.size() == side.size());
    return path;
}

int color_of(const SimComplex& c, int id) {
    for (const auto& v : c.vertices) {
        if (v.id == id) return v.color;
    }
    REQUIRE(false);
    return -1;
}

}  // namespace

TEST_CASE("initial complex shape") {
    auto c3 = initial_complex(3);
    CHECK(c3.vertices.size() == 3);
    CHECK(c3.tops.size() == 1);
    auto c1 = initial_complex(1);
    CHECK(c1.vertices.size() == 1);
    CHECK(c1.tops.size() == 1);
    for (const auto& v : c3.vertices) {
        CHECK(v.carrier == std::set<int>{v.color});
    }
    CHECK(check_chromatic(c3));
    CHECK(check_sperner(c3));
}

TEST_CASE("first split of the initial triangle") {
    auto c = xy_split_round(initial_complex(3), {1, 2});
    CHECK(c.vertices.size() == 5);
    CHECK(c.tops.size() == 3);
    CHECK(check_chromatic(c));
    CHECK(check_sperner(c));

    // The split side is an alternating path p1, p2, p1, p2.
    auto path = boundary_path(c, 1, 2);
    REQUIRE(path.size() == 4);
    CHECK(color_of(c, path[0]) == 1);
    CHECK(color_of(c, path[1]) == 2);
    CHECK(color_of(c, path[2]) == 1);
    CHECK(color_of(c, path[3]) == 2);
}

TEST_CASE("first split leaves three triangles around the idle processor") {
    auto c = xy_split_round(initial_complex(3), {1, 2});
    int idle = -1;
    for (const auto& v : c.vertices) {
        if (v.color == 0) idle = v.id;
    }
    REQUIRE(idle != -1);
    for (const auto& top : c.tops) {
        CHECK(std::find(top.begin(), top.end(), idle) != top.end());
    }
}

TEST_CASE("splitting a single edge") {
    auto c = xy_split_round(initial_complex(2), {0, 1});
    CHECK(c.vertices.size() == 4);
    CHECK(c.tops.size() == 3);
    CHECK(check_chromatic(c));
    CHECK(check_sperner(c));
}

TEST_CASE("three splits give 27 top simplices") {
    auto c = build(3, figure_schedule(), 3);
    CHECK(c.tops.size() == 27);
    CHECK(check_chromatic(c));
    CHECK(check_sperner(c));
}

TEST_CASE("growth is exactly threefold per split") {
    for (int n = 2; n <= 4; ++n) {
        auto c = initial_complex(n);
        auto schedule = PairSchedule::round_robin(n);
        for (int k = 1; k <= 6; ++k) {
            c = xy_split_round(c, schedule.pair_at(k - 1));
            CHECK(c.tops.size() == sat_pow(3, static_cast<std::uint64_t>(k)));
            CHECK(check_chromatic(c));
            CHECK(check_sperner(c));
        }
    }
}

TEST_CASE("repeated splits of one side keep it alternating") {
    PairSchedule only01;
    only01.rounds = {{0, 1}};
    auto c = build(3, only01, 2);
    auto path = boundary_path(c, 0, 1);
    REQUIRE(path.size() == 10);  // 9 edges after two threefold splits
    for (std::size_t idx = 0; idx < path.size(); ++idx) {
        CHECK(color_of(c, path[idx]) == (idx % 2 == 0 ? 0 : 1));
    }
    // The unsplit sides are still the original corner pairs.
    CHECK(boundary_path(c, 1, 2).size() == 2);
    CHECK(boundary_path(c, 0, 2).size() == 2);
}

TEST_CASE("carriers follow the union rule") {
    auto c = build(3, figure_schedule(), 3);
    for (const auto& v : c.vertices) {
        CHECK(!v.carrier.empty());
        CHECK(v.carrier.count(v.color) == 1);
    }
    // Interior vertices exist after the full sweep and carry all colors.
    bool interior = false;
    for (const auto& v : c.vertices) {
        if (v.carrier.size() == 3) interior = true;
    }
    CHECK(interior);
}

TEST_CASE("a vertex recolored outside its carrier fails the sperner check") {
    auto c = xy_split_round(initial_complex(3), {1, 2});
    for (auto& v : c.vertices) {
        if (v.carrier == std::set<int>{1, 2} && v.color == 1) {
            v.color = 0;  // 0 is not in the carrier
        }
    }
    CHECK_FALSE(check_sperner(c));
}

TEST_CASE("splits demand a well-formed chromatic complex") {
    auto c = initial_complex(3);
    c.vertices[1].color = 0;  // duplicate color in the top simplex
    CHECK_THROWS_AS(xy_split_round(c, {1, 2}), MalformedComplexError);
    CHECK_THROWS_AS(xy_split_round(c, {3, 1}), std::invalid_argument);
}

TEST_CASE("cross validation at k=0") {
    auto cv = cross_validate(initial_complex(3));
    CHECK(cv.ok);
    CHECK(cv.executions == 1);
}

TEST_CASE("cross validation on a single edge: three executions, three cells") {
    PairSchedule only01;
    only01.rounds = {{0, 1}};
    auto c = build(2, only01, 1);
    CHECK(c.tops.size() == 3);
    auto cv = cross_validate(c);
    CHECK(cv.ok);
    CHECK(cv.executions == 3);
}

TEST_CASE("cross validation over the full three-round schedule") {
    auto c = build(3, figure_schedule(), 3);
    auto cv = cross_validate(c);
    CHECK(cv.ok);
    CHECK(cv.executions == 27);
}

TEST_CASE("cross validation catches a corrupted digest") {
    auto c = build(3, figure_schedule(), 2);
    c.vertices[4].digest ^= 0x1;
    auto cv = cross_validate(c);
    CHECK_FALSE(cv.ok);
}

TEST_CASE("complex json round-trips") {
    auto c = build(3, figure_schedule(), 3);
    auto j = to_json(c);
    auto parsed = from_json(j);
    CHECK(to_json(parsed).dump() == j.dump());
    // Digests survive, so a parsed complex can still be cross-validated.
    auto cv = cross_validate(parsed);
    CHECK(cv.ok);
}

TEST_CASE("svg rendering is for triangles only") {
    CHECK_THROWS_AS(to_svg(build(4, PairSchedule::round_robin(4), 1)),
                    UnsupportedDimensionError);
    auto svg = to_svg(build(3, figure_schedule(), 1));
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<circle") != std::string::npos);
    auto again = to_svg(build(3, figure_schedule(), 1));
    CHECK(svg == again);
}

TEST_CASE("dot export lists every skeleton edge") {
    auto c = xy_split_round(initial_complex(3), {1, 2});
    auto dot = to_dot(c);
    for (const auto& [a, b] : skeleton_edges(c)) {
        CHECK(dot.find("v" + std::to_string(a) + " -- v" + std::to_string(b)) !=
              std::string::npos);
    }
}
