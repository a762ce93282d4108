#include "adversim/complex.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "adversim/engine.hpp"
#include "adversim/util.hpp"

namespace adversim::complex {

using engine::View;
using engine::ViewPtr;

SimComplex initial_complex(int n, const std::vector<nlohmann::json>& inputs) {
    if (n < 1) throw std::invalid_argument("complex: need n >= 1");
    if (static_cast<int>(inputs.size()) != n)
        throw std::invalid_argument("complex: one input per processor");
    SimComplex c;
    c.n = n;
    std::vector<int> top;
    for (int i = 0; i < n; ++i) {
        Vertex v;
        v.id = i;
        v.color = i;
        v.carrier = {i};
        v.state = View::initial(i, inputs[static_cast<std::size_t>(i)]);
        v.digest = v.state->digest();
        c.vertices.push_back(std::move(v));
        top.push_back(i);
    }
    c.tops.push_back(std::move(top));
    if (n == 3) {
        c.coords[0] = {60.0, 440.0};
        c.coords[1] = {440.0, 440.0};
        c.coords[2] = {250.0, 60.0};
    }
    return c;
}

SimComplex initial_complex(int n) {
    std::vector<nlohmann::json> inputs;
    for (int i = 0; i < n; ++i) inputs.push_back(i);
    return initial_complex(n, inputs);
}

SimComplex xy_split_round(const SimComplex& c, std::pair<int, int> pair) {
    const auto [i, j] = pair;
    if (i == j || i < 0 || j < 0 || i >= c.n || j >= c.n)
        throw std::invalid_argument("xy split: colors out of range");
    for (const auto& v : c.vertices) {
        if (!v.state) throw std::invalid_argument("xy split: complex has no states");
    }

    std::map<int, const Vertex*> by_id;
    for (const auto& v : c.vertices) by_id[v.id] = &v;

    // Locate the single {i, j}-colored edge of every top simplex.
    std::set<std::pair<int, int>> split_edges;  // (x id, y id), x colored i, y colored j
    struct TopSplit {
        int x = -1, y = -1;
        std::vector<int> rest;
    };
    std::vector<TopSplit> top_splits;
    for (const auto& top : c.tops) {
        TopSplit ts;
        for (int id : top) {
            const Vertex* v = by_id.at(id);
            if (v->color == i) {
                if (ts.x != -1) throw MalformedComplexError("top simplex repeats a color");
                ts.x = id;
            } else if (v->color == j) {
                if (ts.y != -1) throw MalformedComplexError("top simplex repeats a color");
                ts.y = id;
            } else {
                ts.rest.push_back(id);
            }
        }
        if (ts.x == -1 || ts.y == -1)
            throw MalformedComplexError("top simplex lacks the split pair's colors");
        split_edges.insert({ts.x, ts.y});
        top_splits.push_back(std::move(ts));
    }

    SimComplex out;
    out.n = c.n;
    out.k = c.k + 1;
    out.schedule = c.schedule;
    out.schedule.push_back({std::min(i, j), std::max(i, j)});

    // Every surviving vertex extends its state with an empty inbox; ids keep
    // the old relative order.
    std::map<int, int> ext;
    int next_id = 0;
    for (const auto& v : c.vertices) {
        Vertex nv;
        nv.id = next_id;
        nv.color = v.color;
        nv.carrier = v.carrier;
        nv.state = View::extend(v.state, {});
        nv.digest = nv.state->digest();
        ext[v.id] = next_id;
        if (c.n == 3) out.coords[next_id] = c.coords.at(v.id);
        out.vertices.push_back(std::move(nv));
        next_id++;
    }

    // Two interior vertices per split edge: z1 takes color j and receives
    // i's message, z2 takes color i and receives j's. Both sit on the parent
    // edge, so their carrier is the union of the endpoints' carriers.
    std::map<std::pair<int, int>, std::pair<int, int>> z_of_edge;
    for (const auto& [xid, yid] : split_edges) {
        const Vertex* x = by_id.at(xid);
        const Vertex* y = by_id.at(yid);
        std::set<int> carrier = x->carrier;
        carrier.insert(y->carrier.begin(), y->carrier.end());

        Vertex z1;
        z1.id = next_id++;
        z1.color = j;
        z1.carrier = carrier;
        z1.state = View::extend(y->state, {{i, x->state}});
        z1.digest = z1.state->digest();

        Vertex z2;
        z2.id = next_id++;
        z2.color = i;
        z2.carrier = carrier;
        z2.state = View::extend(x->state, {{j, y->state}});
        z2.digest = z2.state->digest();

        if (c.n == 3) {
            const auto& px = c.coords.at(xid);
            const auto& py = c.coords.at(yid);
            out.coords[z1.id] = {px[0] + (py[0] - px[0]) / 3.0, px[1] + (py[1] - px[1]) / 3.0};
            out.coords[z2.id] = {px[0] + 2.0 * (py[0] - px[0]) / 3.0,
                                 px[1] + 2.0 * (py[1] - px[1]) / 3.0};
        }
        z_of_edge[{xid, yid}] = {z1.id, z2.id};
        out.vertices.push_back(std::move(z1));
        out.vertices.push_back(std::move(z2));
    }

    for (const auto& ts : top_splits) {
        const auto [z1, z2] = z_of_edge.at({ts.x, ts.y});
        std::vector<int> rest;
        rest.reserve(ts.rest.size());
        for (int id : ts.rest) rest.push_back(ext.at(id));
        auto make_top = [&rest](int a, int b) {
            std::vector<int> top = rest;
            top.push_back(a);
            top.push_back(b);
            std::sort(top.begin(), top.end());
            return top;
        };
        out.tops.push_back(make_top(ext.at(ts.x), z1));
        out.tops.push_back(make_top(z1, z2));
        out.tops.push_back(make_top(z2, ext.at(ts.y)));
    }
    return out;
}

SimComplex build(int n, const adversary::PairSchedule& schedule, int k,
                 const std::vector<nlohmann::json>& inputs) {
    if (k < 0) throw std::invalid_argument("build: negative round count");
    if (k > 0 && schedule.empty()) throw std::invalid_argument("build: empty schedule");
    SimComplex c = initial_complex(n, inputs);
    for (int r = 0; r < k; ++r) c = xy_split_round(c, schedule.pair_at(r));
    return c;
}

SimComplex build(int n, const adversary::PairSchedule& schedule, int k) {
    std::vector<nlohmann::json> inputs;
    for (int i = 0; i < n; ++i) inputs.push_back(i);
    return build(n, schedule, k, inputs);
}

bool check_chromatic(const SimComplex& c) {
    std::map<int, int> color_of;
    for (const auto& v : c.vertices) color_of[v.id] = v.color;
    for (const auto& top : c.tops) {
        if (static_cast<int>(top.size()) != c.n) return false;
        std::set<int> colors;
        for (int id : top) colors.insert(color_of.at(id));
        if (static_cast<int>(colors.size()) != c.n) return false;
    }
    return true;
}

bool check_sperner(const SimComplex& c) {
    for (const auto& v : c.vertices) {
        if (v.carrier.empty()) return false;
        if (v.carrier.count(v.color) == 0) return false;
    }
    return true;
}

std::set<std::pair<int, int>> skeleton_edges(const SimComplex& c) {
    std::set<std::pair<int, int>> edges;
    for (const auto& top : c.tops) {
        for (std::size_t a = 0; a < top.size(); ++a) {
            for (std::size_t b = a + 1; b < top.size(); ++b) {
                edges.insert({top[a], top[b]});
            }
        }
    }
    return edges;
}

CrossValidation cross_validate(const SimComplex& c, const std::vector<nlohmann::json>& inputs) {
    CrossValidation cv;

    std::map<int, const Vertex*> by_id;
    std::set<std::pair<int, std::uint64_t>> vertex_keys;
    for (const auto& v : c.vertices) {
        by_id[v.id] = &v;
        if (!vertex_keys.insert({v.color, v.digest}).second) {
            cv.ok = false;
            cv.mismatch = "two vertices share color and state digest";
            return cv;
        }
    }

    // Top cells as per-color digest signatures.
    std::vector<std::vector<std::uint64_t>> top_sigs;
    for (const auto& top : c.tops) {
        std::vector<std::uint64_t> sig(static_cast<std::size_t>(c.n), 0);
        for (int id : top) {
            const Vertex* v = by_id.at(id);
            sig[static_cast<std::size_t>(v->color)] = v->digest;
        }
        top_sigs.push_back(std::move(sig));
    }

    // Every execution of the choice tree as the same kind of signature.
    engine::FullInformationProtocol protocol;
    std::vector<std::vector<std::uint64_t>> exec_sigs;
    if (c.k == 0) {
        auto run = engine::run_with_rcgs(protocol, {}, inputs);
        exec_sigs.push_back(run.trace.initial_digests);
        cv.executions = 1;
    } else {
        adversary::PairSchedule schedule;
        schedule.rounds = c.schedule;
        const auto spec = adversary::AdversarySpec::tp_pairs(c.n, schedule);
        std::vector<std::vector<graph::Rcg>> choices;
        for (int r = 0; r < c.k; ++r) choices.push_back(spec.enumerate(r));
        std::vector<int> digits(static_cast<std::size_t>(c.k), 0);
        while (true) {
            std::vector<graph::Rcg> rcgs;
            for (int r = 0; r < c.k; ++r) {
                rcgs.push_back(choices[static_cast<std::size_t>(r)]
                                      [static_cast<std::size_t>(digits[static_cast<std::size_t>(r)])]);
            }
            auto run = engine::run_with_rcgs(protocol, rcgs, inputs);
            exec_sigs.push_back(run.trace.rounds.back().digests);
            cv.executions++;
            int r = c.k - 1;
            while (r >= 0 && ++digits[static_cast<std::size_t>(r)] ==
                                 static_cast<int>(choices[static_cast<std::size_t>(r)].size())) {
                digits[static_cast<std::size_t>(r)] = 0;
                r--;
            }
            if (r < 0) break;
        }
    }

    std::sort(top_sigs.begin(), top_sigs.end());
    std::sort(exec_sigs.begin(), exec_sigs.end());
    if (std::adjacent_find(top_sigs.begin(), top_sigs.end()) != top_sigs.end()) {
        cv.ok = false;
        cv.mismatch = "two top simplices carry identical states";
        return cv;
    }
    if (std::adjacent_find(exec_sigs.begin(), exec_sigs.end()) != exec_sigs.end()) {
        cv.ok = false;
        cv.mismatch = "two executions produced identical states";
        return cv;
    }
    if (top_sigs != exec_sigs) {
        cv.ok = false;
        cv.mismatch = "execution states and top simplices do not match";
        return cv;
    }
    return cv;
}

CrossValidation cross_validate(const SimComplex& c) {
    std::vector<nlohmann::json> inputs;
    for (int i = 0; i < c.n; ++i) inputs.push_back(i);
    return cross_validate(c, inputs);
}

nlohmann::json to_json(const SimComplex& c) {
    nlohmann::json schedule = nlohmann::json::array();
    for (const auto& [a, b] : c.schedule) schedule.push_back({a, b});
    nlohmann::json vertices = nlohmann::json::array();
    for (const auto& v : c.vertices) {
        vertices.push_back({{"id", v.id},
                            {"color", v.color},
                            {"carrier", v.carrier},
                            {"digest", to_hex(v.digest)}});
    }
    return {{"n", c.n}, {"k", c.k}, {"schedule", schedule}, {"vertices", vertices},
            {"tops", c.tops}};
}

SimComplex from_json(const nlohmann::json& j) {
    SimComplex c;
    c.n = j.at("n").get<int>();
    c.k = j.at("k").get<int>();
    for (const auto& p : j.at("schedule")) {
        c.schedule.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
    }
    for (const auto& jv : j.at("vertices")) {
        Vertex v;
        v.id = jv.at("id").get<int>();
        v.color = jv.at("color").get<int>();
        v.carrier = jv.at("carrier").get<std::set<int>>();
        v.digest = parse_hex(jv.at("digest").get<std::string>());
        c.vertices.push_back(std::move(v));
    }
    c.tops = j.at("tops").get<std::vector<std::vector<int>>>();
    return c;
}

std::string to_dot(const SimComplex& c) {
    std::ostringstream out;
    out << "graph complex {\n";
    for (const auto& v : c.vertices) {
        out << "  v" << v.id << " [label=\"p" << v.color << "\"];\n";
    }
    for (const auto& [a, b] : skeleton_edges(c)) {
        out << "  v" << a << " -- v" << b << ";\n";
    }
    out << "}\n";
    return out.str();
}

namespace {

std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string to_svg(const SimComplex& c) {
    if (c.n != 3) throw UnsupportedDimensionError("svg drawing requires n == 3");
    if (c.coords.size() != c.vertices.size())
        throw std::invalid_argument("svg drawing requires a complex built in-process");
    static const char* palette[3] = {"#c0392b", "#2980b9", "#27ae60"};
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"500\" height=\"500\" "
           "viewBox=\"0 0 500 500\">\n";
    for (const auto& [a, b] : skeleton_edges(c)) {
        const auto& pa = c.coords.at(a);
        const auto& pb = c.coords.at(b);
        out << "  <line x1=\"" << fmt_coord(pa[0]) << "\" y1=\"" << fmt_coord(pa[1])
            << "\" x2=\"" << fmt_coord(pb[0]) << "\" y2=\"" << fmt_coord(pb[1])
            << "\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
    }
    for (const auto& v : c.vertices) {
        const auto& p = c.coords.at(v.id);
        out << "  <circle cx=\"" << fmt_coord(p[0]) << "\" cy=\"" << fmt_coord(p[1])
            << "\" r=\"6\" fill=\"" << palette[v.color % 3] << "\"/>\n";
        out << "  <text x=\"" << fmt_coord(p[0] + 8) << "\" y=\"" << fmt_coord(p[1] - 8)
            << "\" font-size=\"11\">p" << v.color << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace adversim::complex
