#include "adversim/adversary.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace adversim::adversary {

PairSchedule PairSchedule::round_robin(int n) {
    PairSchedule s;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) s.rounds.push_back({i, j});
    }
    return s;
}

PairSchedule PairSchedule::parse(const std::string& text, int n) {
    PairSchedule s;
    std::stringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        auto dash = token.find('-');
        if (dash == std::string::npos)
            throw std::invalid_argument("pair schedule: expected I-J, got '" + token + "'");
        int a = std::stoi(token.substr(0, dash));
        int b = std::stoi(token.substr(dash + 1));
        if (a == b || a < 0 || b < 0 || a >= n || b >= n)
            throw std::invalid_argument("pair schedule: bad pair '" + token + "'");
        s.rounds.push_back({std::min(a, b), std::max(a, b)});
    }
    if (s.rounds.empty()) throw std::invalid_argument("pair schedule: empty");
    return s;
}

const std::pair<int, int>& PairSchedule::pair_at(int round) const {
    if (rounds.empty()) throw std::logic_error("pair schedule: empty");
    return rounds[static_cast<std::size_t>(round) % rounds.size()];
}

bool PairSchedule::covers_all_pairs(int n) const {
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (std::find(rounds.begin(), rounds.end(), std::make_pair(i, j)) == rounds.end())
                return false;
        }
    }
    return true;
}

std::string PairSchedule::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < rounds.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(rounds[i].first) + "-" + std::to_string(rounds[i].second);
    }
    return out;
}

AdversarySpec::AdversarySpec(Kind kind, int n, int k, PairSchedule schedule)
    : kind_(kind), n_(n), k_(k), schedule_(std::move(schedule)) {
    if (n < 1) throw std::invalid_argument("adversary: processor count must be >= 1");
    if (kind == Kind::kcc && (k < 2 || k > n))
        throw std::invalid_argument("kcc: need 2 <= k <= n");
    if (kind == Kind::tp_pairs) {
        if (n < 2) throw std::invalid_argument("tp-pairs: need n >= 2");
        if (schedule_.empty()) throw std::invalid_argument("tp-pairs: empty schedule");
        for (const auto& [a, b] : schedule_.rounds) {
            if (a < 0 || b >= n || a >= b)
                throw std::invalid_argument("tp-pairs: schedule pair out of range");
        }
    }
}

AdversarySpec AdversarySpec::tp(int n) { return {Kind::tp, n, 0, {}}; }
AdversarySpec AdversarySpec::tp_complete(int n) { return {Kind::tp_complete, n, 0, {}}; }
AdversarySpec AdversarySpec::sc(int n) { return {Kind::sc, n, 0, {}}; }
AdversarySpec AdversarySpec::kcc(int n, int k) { return {Kind::kcc, n, k, {}}; }
AdversarySpec AdversarySpec::tp_pairs(int n) {
    return {Kind::tp_pairs, n, 0, PairSchedule::round_robin(n)};
}
AdversarySpec AdversarySpec::tp_pairs(int n, PairSchedule schedule) {
    return {Kind::tp_pairs, n, 0, std::move(schedule)};
}

AdversarySpec AdversarySpec::parse(const std::string& text, int n) {
    if (text == "tp") return tp(n);
    if (text == "tp-complete") return tp_complete(n);
    if (text == "sc") return sc(n);
    if (text.rfind("kcc:", 0) == 0) {
        int k = std::stoi(text.substr(4));
        return kcc(n, k);
    }
    if (text.rfind("tp-pairs:", 0) == 0) {
        std::string rest = text.substr(9);
        if (rest == "RR" || rest == "rr") return tp_pairs(n);
        return tp_pairs(n, PairSchedule::parse(rest, n));
    }
    throw std::invalid_argument("unknown adversary spec '" + text + "'");
}

std::string AdversarySpec::to_string() const {
    switch (kind_) {
        case Kind::tp: return "tp";
        case Kind::tp_complete: return "tp-complete";
        case Kind::sc: return "sc";
        case Kind::kcc: return "kcc:" + std::to_string(k_);
        case Kind::tp_pairs: return "tp-pairs:" + schedule_.to_string();
    }
    return "?";
}

bool AdversarySpec::validate(int round, const graph::Rcg& g) const {
    if (g.n() != n_)
        throw std::invalid_argument("validate: graph has " + std::to_string(g.n()) +
                                    " processors, spec expects " + std::to_string(n_));
    switch (kind_) {
        case Kind::tp:
            return graph::has_traversal_path(g);
        case Kind::tp_complete:
            return graph::contains_tournament(g);
        case Kind::sc:
            return graph::scc_condensation(g).count == 1;
        case Kind::kcc: {
            auto scc = graph::scc_condensation(g);
            std::vector<int> sizes(scc.count, 0);
            for (int c : scc.component) sizes[c]++;
            return *std::max_element(sizes.begin(), sizes.end()) >= k_;
        }
        case Kind::tp_pairs: {
            const auto& [a, b] = schedule_.pair_at(round);
            for (const auto& e : g.edges()) {
                if (e != std::make_pair(a, b) && e != std::make_pair(b, a)) return false;
            }
            return g.has_edge(a, b) || g.has_edge(b, a);
        }
    }
    return false;
}

graph::Rcg AdversarySpec::sample(int round, std::uint64_t seed) const {
    Rng rng(mix64(seed));
    return sample(round, rng);
}

graph::Rcg AdversarySpec::sample(int round, Rng& rng) const {
    graph::Rcg g(n_);
    switch (kind_) {
        case Kind::tp_complete: {
            for (int i = 0; i < n_; ++i) {
                for (int j = i + 1; j < n_; ++j) {
                    switch (rng.below(3)) {
                        case 0: g.add_edge(i, j); break;
                        case 1: g.add_edge(j, i); break;
                        default:
                            g.add_edge(i, j);
                            g.add_edge(j, i);
                    }
                }
            }
            break;
        }
        case Kind::tp: {
            // A permutation path guarantees the traversal; extra edges with
            // probability 1/2 each.
            std::vector<int> perm(n_);
            for (int i = 0; i < n_; ++i) perm[i] = i;
            rng.shuffle(perm);
            for (int i = 0; i + 1 < n_; ++i) g.add_edge(perm[i], perm[i + 1]);
            for (int i = 0; i < n_; ++i) {
                for (int j = 0; j < n_; ++j) {
                    if (i != j && !g.has_edge(i, j) && rng.coin()) g.add_edge(i, j);
                }
            }
            break;
        }
        case Kind::sc: {
            if (n_ > 1) {
                std::vector<int> perm(n_);
                for (int i = 0; i < n_; ++i) perm[i] = i;
                rng.shuffle(perm);
                for (int i = 0; i < n_; ++i) g.add_edge(perm[i], perm[(i + 1) % n_]);
            }
            for (int i = 0; i < n_; ++i) {
                for (int j = 0; j < n_; ++j) {
                    if (i != j && !g.has_edge(i, j) && rng.coin()) g.add_edge(i, j);
                }
            }
            break;
        }
        case Kind::kcc: {
            // Random cycle on a random k-subset; extras cannot shrink an SCC.
            std::vector<int> perm(n_);
            for (int i = 0; i < n_; ++i) perm[i] = i;
            rng.shuffle(perm);
            if (k_ > 1) {
                for (int i = 0; i < k_; ++i) g.add_edge(perm[i], perm[(i + 1) % k_]);
            }
            for (int i = 0; i < n_; ++i) {
                for (int j = 0; j < n_; ++j) {
                    if (i != j && !g.has_edge(i, j) && rng.coin()) g.add_edge(i, j);
                }
            }
            break;
        }
        case Kind::tp_pairs: {
            const auto& [a, b] = schedule_.pair_at(round);
            switch (rng.below(3)) {
                case 0: g.add_edge(a, b); break;
                case 1: g.add_edge(b, a); break;
                default:
                    g.add_edge(a, b);
                    g.add_edge(b, a);
            }
            break;
        }
    }
    return g;
}

std::uint64_t AdversarySpec::enumeration_candidates() const {
    switch (kind_) {
        case Kind::tp_complete:
            return sat_pow(3, graph::Tournament::pair_count(n_));
        case Kind::tp_pairs:
            return 3;
        default:
            // Filtered from all digraphs on the ordered pairs.
            return sat_pow(2, static_cast<std::uint64_t>(n_) * (n_ - 1));
    }
}

std::vector<graph::Rcg> AdversarySpec::enumerate(int round, std::uint64_t budget) const {
    const std::uint64_t candidates = enumeration_candidates();
    if (candidates > budget) throw BudgetError(candidates, budget);

    std::vector<graph::Rcg> out;
    switch (kind_) {
        case Kind::tp_complete: {
            std::vector<std::pair<int, int>> pairs;
            for (int i = 0; i < n_; ++i) {
                for (int j = i + 1; j < n_; ++j) pairs.push_back({i, j});
            }
            std::vector<int> choice(pairs.size(), 0);
            while (true) {
                graph::Rcg g(n_);
                for (std::size_t p = 0; p < pairs.size(); ++p) {
                    const auto& [i, j] = pairs[p];
                    if (choice[p] == 0) g.add_edge(i, j);
                    else if (choice[p] == 1) g.add_edge(j, i);
                    else {
                        g.add_edge(i, j);
                        g.add_edge(j, i);
                    }
                }
                out.push_back(std::move(g));
                std::size_t p = 0;
                while (p < choice.size() && ++choice[p] == 3) choice[p++] = 0;
                if (p == choice.size()) break;
            }
            break;
        }
        case Kind::tp_pairs: {
            const auto& [a, b] = schedule_.pair_at(round);
            out.push_back(graph::Rcg(n_, {{a, b}}));
            out.push_back(graph::Rcg(n_, {{b, a}}));
            out.push_back(graph::Rcg(n_, {{a, b}, {b, a}}));
            break;
        }
        default: {
            std::vector<std::pair<int, int>> pairs;
            for (int i = 0; i < n_; ++i) {
                for (int j = 0; j < n_; ++j) {
                    if (i != j) pairs.push_back({i, j});
                }
            }
            for (std::uint64_t mask = 0; mask < candidates; ++mask) {
                graph::Rcg g(n_);
                for (std::size_t p = 0; p < pairs.size(); ++p) {
                    if ((mask >> p) & 1) g.add_edge(pairs[p].first, pairs[p].second);
                }
                if (validate(round, g)) out.push_back(std::move(g));
            }
            break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace adversim::adversary
