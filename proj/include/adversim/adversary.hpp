#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "adversim/graph.hpp"
#include "adversim/util.hpp"

namespace adversim::adversary {

inline constexpr std::uint64_t kDefaultEnumBudget = 1'000'000;

// Ordered list of unordered processor pairs; round r uses rounds[r % size].
// The default round-robin covers every pair once per sweep.
struct PairSchedule {
    std::vector<std::pair<int, int>> rounds;  // stored (lo, hi)

    static PairSchedule round_robin(int n);
    static PairSchedule parse(const std::string& text, int n);  // "1-2,0-1,0-2"

    const std::pair<int, int>& pair_at(int round) const;
    bool empty() const { return rounds.empty(); }
    std::size_t size() const { return rounds.size(); }
    // True iff one cycle of the schedule covers every pair of [0, n).
    bool covers_all_pairs(int n) const;
    std::string to_string() const;
};

enum class Kind { tp, tp_complete, sc, kcc, tp_pairs };

// A per-round predicate over delivery graphs, plus a constructive sampler and
// an exhaustive enumerator. All variants are memoryless; tp_pairs is the one
// deliberate exception and keys its predicate on the round index.
class AdversarySpec {
public:
    static AdversarySpec tp(int n);
    static AdversarySpec tp_complete(int n);
    static AdversarySpec sc(int n);
    static AdversarySpec kcc(int n, int k);
    static AdversarySpec tp_pairs(int n);  // default round-robin schedule
    static AdversarySpec tp_pairs(int n, PairSchedule schedule);

    // CLI syntax: "tp" | "tp-complete" | "sc" | "kcc:K" | "tp-pairs:RR" |
    // "tp-pairs:1-2,0-1,0-2".
    static AdversarySpec parse(const std::string& text, int n);
    std::string to_string() const;

    Kind kind() const { return kind_; }
    int n() const { return n_; }
    int k() const { return k_; }
    const PairSchedule& schedule() const { return schedule_; }

    bool validate(int round, const graph::Rcg& g) const;
    graph::Rcg sample(int round, std::uint64_t seed) const;
    graph::Rcg sample(int round, Rng& rng) const;

    // Every satisfying graph, each exactly once, in canonical order. Throws
    // BudgetError before enumerating if the candidate count exceeds `budget`.
    std::vector<graph::Rcg> enumerate(int round,
                                      std::uint64_t budget = kDefaultEnumBudget) const;
    // Candidate count the enumerator would have to consider (saturating).
    std::uint64_t enumeration_candidates() const;

private:
    AdversarySpec(Kind kind, int n, int k, PairSchedule schedule);

    Kind kind_;
    int n_;
    int k_ = 0;
    PairSchedule schedule_;
};

}  // namespace adversim::adversary
