#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "adversim/cli.hpp"
#include "json.hpp"

using namespace adversim;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("cli_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("simulate writes a snapshot trace and exits cleanly") {
    TempFile trace("snap.json");
    int rc = cli::run({"simulate", "--n", "3", "--spec", "tp-complete", "--protocol",
                       "snapshot", "--rounds", "3", "--seed", "7", "--out", trace.path});
    CHECK(rc == cli::kExitOk);
    auto j = nlohmann::json::parse(slurp(trace.path));
    CHECK(j.at("n") == 3);
    CHECK(j.at("protocol") == "snapshot");
    CHECK(j.at("rounds").size() == 3);
    int returned = 0;
    for (const auto& o : j.at("outputs")) {
        if (!o.is_null()) returned++;
    }
    CHECK(returned == 3);
}

TEST_CASE("simulate is deterministic file-for-file") {
    TempFile a("det_a.json"), b("det_b.json");
    auto args = std::vector<std::string>{"simulate", "--n",     "4",  "--spec",
                                         "tp",       "--rounds", "5", "--seed",
                                         "21",       "--protocol", "gossip"};
    auto run_to = [&](const std::string& out) {
        auto full = args;
        full.push_back("--out");
        full.push_back(out);
        return cli::run(full);
    };
    CHECK(run_to(a.path) == cli::kExitOk);
    CHECK(run_to(b.path) == cli::kExitOk);
    CHECK(slurp(a.path) == slurp(b.path));
}

TEST_CASE("usage errors exit 64") {
    CHECK(cli::run({"simulate", "--n", "0"}) == cli::kExitUsage);
    CHECK(cli::run({"exhaustive", "--n", "3", "--property", "snapshot-vlaid"}) ==
          cli::kExitUsage);
    CHECK(cli::run({"simulate", "--spec", "nonsense"}) == cli::kExitUsage);
    CHECK(cli::run({}) == cli::kExitUsage);
}

TEST_CASE("exhaustive snapshot validity at n=3 exits 0") {
    TempFile report("exh.json");
    int rc = cli::run({"exhaustive", "--n", "3", "--spec", "tp-complete", "--rounds", "3",
                       "--property", "snapshot-valid", "--out", report.path});
    CHECK(rc == cli::kExitOk);
    auto j = nlohmann::json::parse(slurp(report.path));
    CHECK(j.at("mode") == "exhaustive");
    CHECK(j.at("all_hold") == true);
    CHECK(j.at("executions") == 19683);
}

TEST_CASE("exhaustive past the cap reports the sampling fallback and exits 3") {
    TempFile report("fallback.json");
    int rc = cli::run({"exhaustive", "--n", "3", "--spec", "tp", "--rounds", "5",
                       "--property", "tournament-emulation", "--branch-cap", "100000",
                       "--fallback-trials", "200", "--out", report.path});
    CHECK(rc == cli::kExitBudget);
    auto j = nlohmann::json::parse(slurp(report.path));
    CHECK(j.at("mode") == "sampling-fallback");
    CHECK(j.at("violations") == 0);
    CHECK(j.at("trials") == 200);
}

TEST_CASE("the budget environment variable caps the tree") {
    TempFile report("env.json");
    setenv("ADVERSIM_BUDGET", "100", 1);
    int rc = cli::run({"exhaustive", "--n", "3", "--spec", "tp-complete", "--rounds", "3",
                       "--property", "snapshot-valid", "--fallback-trials", "50", "--out",
                       report.path});
    unsetenv("ADVERSIM_BUDGET");
    CHECK(rc == cli::kExitBudget);
    auto j = nlohmann::json::parse(slurp(report.path));
    CHECK(j.at("mode") == "sampling-fallback");
    CHECK(j.at("branch_cap") == 100);
}

TEST_CASE("complex build writes artifacts and cross-validates") {
    TempFile cj("complex.json"), cs("complex.svg");
    int rc = cli::run({"complex", "--n", "3", "--schedule", "1-2,0-1,0-2", "--json", cj.path,
                       "--svg", cs.path, "--cross-validate"});
    CHECK(rc == cli::kExitOk);
    auto j = nlohmann::json::parse(slurp(cj.path));
    CHECK(j.at("tops").size() == 27);
    CHECK(slurp(cs.path).find("<svg") == 0);
}

TEST_CASE("complex svg outside n=3 exits 65") {
    TempFile cs("bad.svg");
    CHECK(cli::run({"complex", "--n", "5", "--schedule", "rr", "--rounds", "2", "--svg",
                    cs.path}) == cli::kExitUnsupported);
}

TEST_CASE("small complex has three cells per split") {
    TempFile cj("pair.json");
    CHECK(cli::run({"complex", "--n", "2", "--schedule", "0-1", "--json", cj.path}) ==
          cli::kExitOk);
    auto j = nlohmann::json::parse(slurp(cj.path));
    CHECK(j.at("tops").size() == 3);
}

TEST_CASE("verify accepts its own trace output") {
    TempFile trace("verify_in.json");
    REQUIRE(cli::run({"simulate", "--n", "3", "--spec", "tp-complete", "--protocol",
                      "snapshot", "--rounds", "3", "--seed", "9", "--out", trace.path}) ==
            cli::kExitOk);
    CHECK(cli::run({"verify", "--trace", trace.path}) == cli::kExitOk);
}

TEST_CASE("verify rejects a trace with a foreign round graph") {
    TempFile trace("verify_bad.json");
    REQUIRE(cli::run({"simulate", "--n", "3", "--spec", "tp-complete", "--protocol",
                      "snapshot", "--rounds", "3", "--seed", "9", "--out", trace.path}) ==
            cli::kExitOk);
    auto j = nlohmann::json::parse(slurp(trace.path));
    j["rounds"][0]["rcg"]["edges"] = nlohmann::json::array();  // empty round
    {
        std::ofstream out(trace.path);
        out << j.dump(2) << "\n";
    }
    CHECK(cli::run({"verify", "--trace", trace.path}) == cli::kExitViolation);
}

TEST_CASE("verify checks register outcomes and refuses weak specs") {
    TempFile trace("verify_reg.json");
    REQUIRE(cli::run({"simulate", "--n", "3", "--spec", "tp-complete", "--protocol",
                      "register", "--writes", "2", "--seed", "3", "--out", trace.path}) ==
            cli::kExitOk);
    CHECK(cli::run({"verify", "--trace", trace.path}) == cli::kExitOk);

    auto j = nlohmann::json::parse(slurp(trace.path));
    auto outcome = j.at("result");
    TempFile oc("verify_outcome.json");
    {
        std::ofstream out(oc.path);
        out << outcome.dump(2) << "\n";
    }
    CHECK(cli::run({"verify", "--outcome", oc.path}) == cli::kExitOk);

    outcome["spec"] = "tp";  // king certification demands the tournament rule
    {
        std::ofstream out(oc.path);
        out << outcome.dump(2) << "\n";
    }
    CHECK(cli::run({"verify", "--outcome", oc.path}) == cli::kExitViolation);
}

TEST_CASE("verify cross-validates complex files") {
    TempFile cj("verify_complex.json");
    REQUIRE(cli::run({"complex", "--n", "3", "--schedule", "1-2,0-1", "--json", cj.path}) ==
            cli::kExitOk);
    CHECK(cli::run({"verify", "--complex", cj.path}) == cli::kExitOk);

    auto j = nlohmann::json::parse(slurp(cj.path));
    j["vertices"][0]["digest"] = "0x0000000000000001";
    {
        std::ofstream out(cj.path);
        out << j.dump(2) << "\n";
    }
    CHECK(cli::run({"verify", "--complex", cj.path}) == cli::kExitViolation);
}

TEST_CASE("oracle subcommand bundles ground-truth reports") {
    TempFile report("oracle.json");
    int rc = cli::run({"oracle", "--facts", "4", "--reachability", "3", "--king-liveness",
                       "--max-depth", "4", "--boundary", "0-1", "--boundary-depth", "6",
                       "--out", report.path});
    CHECK(rc == cli::kExitOk);
    auto j = nlohmann::json::parse(slurp(report.path));
    CHECK(j.at("tournament_facts").at("all_pass") == true);
    CHECK(j.at("reachability_agreement").at("agree") == true);
    CHECK(j.at("king_liveness").at("l_star") == 3);
    CHECK(j.at("boundary_witness").at("found") == true);
}
