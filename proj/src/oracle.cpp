#include "adversim/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "adversim/util.hpp"

namespace adversim::oracle {

namespace {

std::vector<std::vector<bool>> transitive_closure(const graph::Rcg& g) {
    const int n = g.n();
    std::vector<std::vector<bool>> reach(static_cast<std::size_t>(n),
                                         std::vector<bool>(static_cast<std::size_t>(n), false));
    for (int i = 0; i < n; ++i) reach[i][i] = true;
    for (const auto& [s, r] : g.edges()) reach[s][r] = true;
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
            }
        }
    }
    return reach;
}

}  // namespace

bool reachability_pair_oracle(const graph::Rcg& g) {
    const int n = g.n();
    if (n > 8) throw std::invalid_argument("reachability oracle: n <= 8");
    auto reach = transitive_closure(g);

    bool pairwise = true;
    for (int i = 0; i < n && pairwise; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (!reach[i][j] && !reach[j][i]) {
                pairwise = false;
                break;
            }
        }
    }

    // Components from the closure, then a permutation search for a
    // Hamiltonian path over them.
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    int count = 0;
    for (int i = 0; i < n; ++i) {
        if (comp[i] != -1) continue;
        for (int j = i; j < n; ++j) {
            if (reach[i][j] && reach[j][i]) comp[j] = count;
        }
        count++;
    }
    std::set<std::pair<int, int>> comp_edges;
    for (const auto& [s, r] : g.edges()) {
        if (comp[s] != comp[r]) comp_edges.insert({comp[s], comp[r]});
    }
    std::vector<int> perm(static_cast<std::size_t>(count));
    for (int c = 0; c < count; ++c) perm[c] = c;
    bool ham = false;
    do {
        bool ok = true;
        for (int c = 0; c + 1 < count; ++c) {
            if (comp_edges.count({perm[c], perm[c + 1]}) == 0) {
                ok = false;
                break;
            }
        }
        if (ok) {
            ham = true;
            break;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    return pairwise && ham;
}

nlohmann::json TournamentFactsReport::to_json() const {
    return {{"n", n},
            {"tournaments", tournaments},
            {"spanning_path_all", spanning_path_all},
            {"king_all", king_all},
            {"matches_primary", matches_primary},
            {"all_pass", all_pass()}};
}

namespace {

bool has_spanning_path_by_permutation(const graph::Tournament& t) {
    std::vector<int> perm(static_cast<std::size_t>(t.n()));
    for (int v = 0; v < t.n(); ++v) perm[v] = v;
    do {
        bool ok = true;
        for (int i = 0; i + 1 < t.n(); ++i) {
            if (!t.beats(perm[i], perm[i + 1])) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

bool reaches_all_within_two_hops(const graph::Tournament& t, int v) {
    for (int u = 0; u < t.n(); ++u) {
        if (u == v || t.beats(v, u)) continue;
        bool two_hop = false;
        for (int w = 0; w < t.n(); ++w) {
            if (w != v && w != u && t.beats(v, w) && t.beats(w, u)) {
                two_hop = true;
                break;
            }
        }
        if (!two_hop) return false;
    }
    return true;
}

bool path_is_valid(const graph::Tournament& t, const std::vector<int>& path) {
    if (static_cast<int>(path.size()) != t.n()) return false;
    std::set<int> seen(path.begin(), path.end());
    if (static_cast<int>(seen.size()) != t.n()) return false;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (!t.beats(path[i], path[i + 1])) return false;
    }
    return true;
}

}  // namespace

TournamentFactsReport tournament_facts_oracle(int n) {
    if (n < 1 || n > 5) throw std::invalid_argument("tournament facts oracle: 1 <= n <= 5");
    TournamentFactsReport report;
    report.n = n;
    const std::uint64_t pair_bits = graph::Tournament::pair_count(n);
    for (std::uint64_t bits = 0; bits < (1ULL << pair_bits); ++bits) {
        auto t = graph::Tournament::from_bits(n, bits);
        report.tournaments++;
        if (!has_spanning_path_by_permutation(t)) report.spanning_path_all = false;
        bool some_king = false;
        for (int v = 0; v < n && !some_king; ++v) some_king = reaches_all_within_two_hops(t, v);
        if (!some_king) report.king_all = false;
        if (!path_is_valid(t, graph::tournament_spanning_path(t))) report.matches_primary = false;
        if (!reaches_all_within_two_hops(t, graph::find_king(t))) report.matches_primary = false;
    }
    return report;
}

nlohmann::json KingLivenessReport::to_json() const {
    nlohmann::json j = {{"n", n},
                        {"max_depth", max_depth},
                        {"choices_per_round", choices_per_round},
                        {"explored", explored}};
    if (l_star) {
        j["l_star"] = *l_star;
        j["nominal_branches"] = nominal_branches;
    } else {
        j["l_star"] = nullptr;
    }
    return j;
}

namespace {

// Knowledge state for first writes: know[i] = set of writers whose first
// write p_i has heard of, as a bitmask. know[i] always contains i.
using KnowState = std::vector<unsigned>;

std::uint64_t encode_state(const KnowState& k) {
    std::uint64_t key = 0;
    for (unsigned m : k) key = (key << 8) | m;
    return key;
}

// All per-pair delivery graphs: each pair gets one direction or both, except
// pairs listed in `exempt_pair` which may also stay silent.
std::vector<graph::Rcg> per_pair_deliveries(int n, std::optional<std::pair<int, int>> exempt) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
    }
    std::vector<graph::Rcg> out;
    std::vector<int> choice(pairs.size(), 0);
    while (true) {
        graph::Rcg g(n);
        bool legal = true;
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            const auto& [i, j] = pairs[p];
            switch (choice[p]) {
                case 0: g.add_edge(i, j); break;
                case 1: g.add_edge(j, i); break;
                case 2:
                    g.add_edge(i, j);
                    g.add_edge(j, i);
                    break;
                default:
                    // silent pair: legal only for the exempt pair
                    if (!(exempt && pairs[p] == *exempt)) legal = false;
            }
        }
        if (legal) out.push_back(std::move(g));
        std::size_t p = 0;
        const int radix = 4;
        while (p < choice.size() && ++choice[p] == radix) choice[p++] = 0;
        if (p == choice.size()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

// One synchronous round over knowledge masks. Returns the set of processors
// whose king condition fires (every message they get comes from a sender that
// already knew their write, with silence counting in their favor).
unsigned apply_round(const graph::Rcg& g, const KnowState& before, KnowState& after) {
    const int n = static_cast<int>(before.size());
    after = before;
    unsigned fired = 0;
    for (int i = 0; i < n; ++i) {
        bool king = true;
        for (int j = 0; j < n; ++j) {
            if (j == i || !g.has_edge(j, i)) continue;
            after[static_cast<std::size_t>(i)] |= before[static_cast<std::size_t>(j)];
            if ((before[static_cast<std::size_t>(j)] >> i & 1u) == 0) king = false;
        }
        if (king) fired |= 1u << i;
    }
    return fired;
}

}  // namespace

KingLivenessReport king_liveness_search(int n, int max_depth) {
    if (n < 1 || n > 3) throw std::invalid_argument("king liveness search: 1 <= n <= 3");
    if (max_depth < 1 || max_depth > 8)
        throw std::invalid_argument("king liveness search: 1 <= max_depth <= 8");

    KingLivenessReport report;
    report.n = n;
    report.max_depth = max_depth;
    const auto choices = per_pair_deliveries(n, std::nullopt);
    report.choices_per_round = choices.size();

    KnowState init(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) init[static_cast<std::size_t>(i)] = 1u << i;

    // Breadth-first over king-free knowledge states; depth d holds the states
    // reachable by some execution whose first d rounds never fired a king.
    std::map<std::uint64_t, KnowState> layer{{encode_state(init), init}};
    for (int depth = 1; depth <= max_depth; ++depth) {
        std::map<std::uint64_t, KnowState> next;
        for (const auto& [key, state] : layer) {
            (void)key;
            for (const auto& g : choices) {
                KnowState after;
                report.explored++;
                if (apply_round(g, state, after) != 0) continue;
                next.emplace(encode_state(after), after);
            }
        }
        if (next.empty()) {
            report.l_star = depth;
            report.nominal_branches = sat_pow(report.choices_per_round,
                                              static_cast<std::uint64_t>(depth));
            return report;
        }
        layer = std::move(next);
    }
    return report;
}

nlohmann::json BoundaryWitnessReport::to_json() const {
    nlohmann::json witness_json = nlohmann::json::array();
    for (const auto& g : witness) witness_json.push_back(g.to_json());
    return {{"n", n},
            {"exempt", {exempt.first, exempt.second}},
            {"depth", depth},
            {"found", found},
            {"witness", witness_json},
            {"explored", explored}};
}

namespace {

bool boundary_dfs(const std::vector<graph::Rcg>& choices, const KnowState& state,
                  std::pair<int, int> exempt, int remaining,
                  std::map<std::uint64_t, int>& failed_at, std::uint64_t& explored,
                  std::vector<graph::Rcg>& path) {
    if (remaining == 0) return true;
    const std::uint64_t key = encode_state(state);
    auto it = failed_at.find(key);
    if (it != failed_at.end() && it->second >= remaining) return false;

    const unsigned endpoint_mask = (1u << exempt.first) | (1u << exempt.second);
    for (const auto& g : choices) {
        KnowState after;
        explored++;
        if ((apply_round(g, state, after) & endpoint_mask) != 0) continue;
        path.push_back(g);
        if (boundary_dfs(choices, after, exempt, remaining - 1, failed_at, explored, path))
            return true;
        path.pop_back();
    }
    auto& best = failed_at[key];
    best = std::max(best, remaining);
    return false;
}

}  // namespace

BoundaryWitnessReport boundary_witness_search(int n, std::pair<int, int> exempt, int depth) {
    if (n != 3) throw std::invalid_argument("boundary witness search: n == 3");
    if (depth < 1 || depth > 8)
        throw std::invalid_argument("boundary witness search: 1 <= depth <= 8");
    if (exempt.first > exempt.second) std::swap(exempt.first, exempt.second);
    if (exempt.first < 0 || exempt.second >= n || exempt.first == exempt.second)
        throw std::invalid_argument("boundary witness search: bad pair");

    BoundaryWitnessReport report;
    report.n = n;
    report.exempt = exempt;
    report.depth = depth;

    const auto choices = per_pair_deliveries(n, exempt);
    KnowState init(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) init[static_cast<std::size_t>(i)] = 1u << i;

    std::map<std::uint64_t, int> failed_at;
    report.found = boundary_dfs(choices, init, exempt, depth, failed_at, report.explored,
                                report.witness);
    if (!report.found) report.witness.clear();
    return report;
}

}  // namespace adversim::oracle
