#include "adversim/engine.hpp"

namespace adversim::engine {

nlohmann::json ExecutionTrace::to_json() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["n"] = n;
    j["spec"] = spec;
    j["protocol"] = protocol;
    j["seed"] = seed;
    j["inputs"] = inputs;

    nlohmann::json init = nlohmann::json::array();
    for (std::uint64_t d : initial_digests) init.push_back(to_hex(d));
    j["initial_digests"] = init;

    nlohmann::json rs = nlohmann::json::array();
    for (const auto& r : rounds) {
        nlohmann::json jr;
        jr["rcg"] = r.rcg.to_json();
        nlohmann::json ds = nlohmann::json::array();
        for (std::uint64_t d : r.digests) ds.push_back(to_hex(d));
        jr["digests"] = ds;
        if (r.states) jr["states"] = *r.states;
        rs.push_back(std::move(jr));
    }
    j["rounds"] = rs;

    nlohmann::json outs = nlohmann::json::array();
    for (const auto& o : outputs) {
        if (!o) {
            outs.push_back(nullptr);
        } else {
            outs.push_back({{"round", o->round}, {"value", o->value}});
        }
    }
    j["outputs"] = outs;

    if (!result.is_null()) j["result"] = result;
    if (!violation.is_null()) j["violation"] = violation;
    return j;
}

ExecutionTrace ExecutionTrace::from_json(const nlohmann::json& j) {
    if (j.at("schema_version").get<int>() != 1)
        throw std::invalid_argument("trace: unsupported schema version");
    ExecutionTrace t;
    t.n = j.at("n").get<int>();
    t.spec = j.at("spec").get<std::string>();
    t.protocol = j.at("protocol").get<std::string>();
    t.seed = j.at("seed").get<std::string>();
    t.inputs = j.at("inputs").get<std::vector<nlohmann::json>>();
    for (const auto& d : j.at("initial_digests")) {
        t.initial_digests.push_back(parse_hex(d.get<std::string>()));
    }
    for (const auto& jr : j.at("rounds")) {
        TraceRound r{graph::Rcg::from_json(jr.at("rcg")), {}, std::nullopt};
        for (const auto& d : jr.at("digests")) r.digests.push_back(parse_hex(d.get<std::string>()));
        if (jr.contains("states")) r.states = jr.at("states").get<std::vector<nlohmann::json>>();
        t.rounds.push_back(std::move(r));
    }
    for (const auto& o : j.at("outputs")) {
        if (o.is_null()) {
            t.outputs.push_back(std::nullopt);
        } else {
            t.outputs.push_back(TraceOutput{o.at("round").get<int>(), o.at("value")});
        }
    }
    if (j.contains("result")) t.result = j.at("result");
    if (j.contains("violation")) t.violation = j.at("violation");
    return t;
}

}  // namespace adversim::engine
