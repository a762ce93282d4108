#include "adversim/graph.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "adversim/util.hpp"

namespace adversim {

std::string to_hex(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s = "0x";
    for (int shift = 60; shift >= 0; shift -= 4) {
        s += digits[(v >> shift) & 0xf];
    }
    return s;
}

std::uint64_t parse_hex(const std::string& s) {
    std::string body = s;
    if (body.rfind("0x", 0) == 0) body = body.substr(2);
    if (body.empty() || body.size() > 16) throw std::invalid_argument("bad hex digest: " + s);
    std::uint64_t v = 0;
    for (char c : body) {
        v <<= 4;
        if (c >= '0' && c <= '9') v |= static_cast<std::uint64_t>(c - '0');
        else if (c >= 'a' && c <= 'f') v |= static_cast<std::uint64_t>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') v |= static_cast<std::uint64_t>(c - 'A' + 10);
        else throw std::invalid_argument("bad hex digest: " + s);
    }
    return v;
}

}  // namespace adversim

namespace adversim::graph {

Rcg::Rcg(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("Rcg: processor count must be >= 1");
}

Rcg::Rcg(int n, std::set<std::pair<int, int>> edges) : Rcg(n) {
    for (const auto& [s, r] : edges) check_edge(s, r);
    edges_ = std::move(edges);
}

Rcg::Rcg(int n, std::initializer_list<std::pair<int, int>> edges) : Rcg(n) {
    for (const auto& [s, r] : edges) add_edge(s, r);
}

void Rcg::check_edge(int sender, int receiver) const {
    if (sender < 0 || sender >= n_ || receiver < 0 || receiver >= n_)
        throw std::invalid_argument("Rcg: edge index out of range");
    if (sender == receiver)
        throw std::invalid_argument("Rcg: self-loops are not stored");
}

void Rcg::add_edge(int sender, int receiver) {
    check_edge(sender, receiver);
    edges_.insert({sender, receiver});
}

nlohmann::json Rcg::to_json() const {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [s, r] : edges_) edges.push_back({s, r});
    return {{"n", n_}, {"edges", edges}};
}

Rcg Rcg::from_json(const nlohmann::json& j) {
    Rcg g(j.at("n").get<int>());
    for (const auto& e : j.at("edges")) {
        g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    }
    return g;
}

std::string Rcg::to_dot() const {
    std::ostringstream out;
    out << "digraph rcg {\n";
    for (int i = 0; i < n_; ++i) out << "  p" << i << ";\n";
    for (const auto& [s, r] : edges_) out << "  p" << s << " -> p" << r << ";\n";
    out << "}\n";
    return out.str();
}

Tournament::Tournament(int n, std::set<std::pair<int, int>> edges) : n_(n) {
    if (n < 1) throw std::invalid_argument("Tournament: processor count must be >= 1");
    if (edges.size() != pair_count(n))
        throw std::invalid_argument("Tournament: wrong edge count");
    for (const auto& [a, b] : edges) {
        if (a < 0 || a >= n || b < 0 || b >= n || a == b)
            throw std::invalid_argument("Tournament: bad edge");
        if (edges.count({b, a}) != 0)
            throw std::invalid_argument("Tournament: both directions present");
    }
    edges_ = std::move(edges);
}

Tournament Tournament::from_bits(int n, std::uint64_t bits) {
    std::set<std::pair<int, int>> edges;
    int bit = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++bit) {
            if ((bits >> bit) & 1) {
                edges.insert({i, j});
            } else {
                edges.insert({j, i});
            }
        }
    }
    return Tournament(n, std::move(edges));
}

namespace {

// Tarjan; vertex counts here are tiny, so recursion is fine.
struct TarjanState {
    const std::vector<std::vector<int>>& adj;
    std::vector<int> index, lowlink, on_stack;
    std::vector<int> stack;
    std::vector<std::vector<int>> sccs;
    int counter = 0;

    explicit TarjanState(const std::vector<std::vector<int>>& adj)
        : adj(adj),
          index(adj.size(), -1),
          lowlink(adj.size(), -1),
          on_stack(adj.size(), 0) {}

    void visit(int v) {
        index[v] = lowlink[v] = counter++;
        stack.push_back(v);
        on_stack[v] = 1;
        for (int w : adj[v]) {
            if (index[w] == -1) {
                visit(w);
                lowlink[v] = std::min(lowlink[v], lowlink[w]);
            } else if (on_stack[w]) {
                lowlink[v] = std::min(lowlink[v], index[w]);
            }
        }
        if (lowlink[v] == index[v]) {
            std::vector<int> scc;
            while (true) {
                int w = stack.back();
                stack.pop_back();
                on_stack[w] = 0;
                scc.push_back(w);
                if (w == v) break;
            }
            sccs.push_back(std::move(scc));
        }
    }
};

}  // namespace

SccResult scc_condensation(const Rcg& g) {
    const int n = g.n();
    std::vector<std::vector<int>> adj(n);
    for (const auto& [s, r] : g.edges()) adj[s].push_back(r);

    TarjanState t(adj);
    for (int v = 0; v < n; ++v) {
        if (t.index[v] == -1) t.visit(v);
    }

    // Renumber components by their smallest contained vertex.
    std::vector<std::pair<int, std::size_t>> order;
    for (std::size_t c = 0; c < t.sccs.size(); ++c) {
        order.push_back({*std::min_element(t.sccs[c].begin(), t.sccs[c].end()), c});
    }
    std::sort(order.begin(), order.end());

    SccResult res;
    res.component.assign(n, -1);
    res.count = static_cast<int>(order.size());
    for (int id = 0; id < res.count; ++id) {
        for (int v : t.sccs[order[id].second]) res.component[v] = id;
    }
    for (const auto& [s, r] : g.edges()) {
        int cs = res.component[s], cr = res.component[r];
        if (cs != cr) res.dag_edges.insert({cs, cr});
    }
    return res;
}

bool has_traversal_path(const Rcg& g) {
    SccResult scc = scc_condensation(g);
    const int m = scc.count;
    if (m == 1) return true;

    std::vector<std::vector<int>> adj(m);
    std::vector<int> indeg(m, 0);
    for (const auto& [a, b] : scc.dag_edges) {
        adj[a].push_back(b);
        indeg[b]++;
    }

    // Kahn with smallest-id-first pops for a canonical topological order. A
    // DAG has a Hamiltonian path iff its topological order is unique, so one
    // consecutively connected order decides the question.
    std::set<int> ready;
    for (int c = 0; c < m; ++c) {
        if (indeg[c] == 0) ready.insert(c);
    }
    std::vector<int> topo;
    while (!ready.empty()) {
        int c = *ready.begin();
        ready.erase(ready.begin());
        topo.push_back(c);
        for (int d : adj[c]) {
            if (--indeg[d] == 0) ready.insert(d);
        }
    }
    for (std::size_t i = 0; i + 1 < topo.size(); ++i) {
        if (scc.dag_edges.count({topo[i], topo[i + 1]}) == 0) return false;
    }
    return true;
}

bool contains_tournament(const Rcg& g) {
    for (int i = 0; i < g.n(); ++i) {
        for (int j = i + 1; j < g.n(); ++j) {
            if (!g.has_edge(i, j) && !g.has_edge(j, i)) return false;
        }
    }
    return true;
}

std::vector<int> tournament_spanning_path(const Tournament& t) {
    std::vector<int> path;
    for (int v = 0; v < t.n(); ++v) {
        std::size_t pos = path.size();
        for (std::size_t i = 0; i < path.size(); ++i) {
            if (t.beats(v, path[i])) {
                pos = i;
                break;
            }
        }
        path.insert(path.begin() + static_cast<std::ptrdiff_t>(pos), v);
    }
    return path;
}

int find_king(const Tournament& t) {
    int best = 0, best_deg = -1;
    std::vector<int> outdeg(t.n(), 0);
    for (const auto& [a, b] : t.edges()) {
        (void)b;
        outdeg[a]++;
    }
    for (int v = 0; v < t.n(); ++v) {
        if (outdeg[v] > best_deg) {
            best = v;
            best_deg = outdeg[v];
        }
    }
    return best;
}

}  // namespace adversim::graph
