#include "cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sstream>

namespace {

struct Run {
    int code = 0;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Run r;
    r.code = borsut::run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

const std::string data_dir = BORSUT_DATA_DIR;

} // namespace

TEST_CASE("cli verify") {
    const Run k3 = run({"verify", "catalog:K_3"});
    CHECK(k3.code == 0);
    CHECK(k3.out.find("PASS") != std::string::npos);
    CHECK(k3.out.find("FAIL") == std::string::npos);
    CHECK(run({"verify", "catalog:phi_B"}).code == 0);
    CHECK(run({"verify", "catalog:Q_7"}).code == 2);
    CHECK(run({"verify", data_dir + "/does_not_exist.json"}).code == 2);
}

TEST_CASE("cli output is deterministic") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"hfk", "--variant", "minus", "--fixture", "trefoil"},
             {"maps", "--fixture", "unknot", "--bound", "6"},
             {"catalog", "dump", "C_2"},
             {"limit", "--tower", "direct", "--bound", "4"}}) {
        const Run a = run(args), b = run(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(!a.out.empty());
    }
}

TEST_CASE("cli hfk json") {
    const Run r = run({"hfk", "--variant", "hat", "--fixture", "trefoil", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["fixture"] == "trefoil");
    CHECK(j["variant"] == "hat");
    CHECK(j["ranks"].size() == 3);
}

TEST_CASE("cli catalog") {
    const Run l = run({"catalog", "list"});
    CHECK(l.code == 0);
    CHECK(l.out.find(" M_A") != std::string::npos);
    CHECK(l.out.find(" phi_B") != std::string::npos);
    const Run d = run({"catalog", "dump", "K_inf", "--format", "json"});
    CHECK(d.code == 0);
    CHECK(nlohmann::json::parse(d.out)["generators"].size() == 1);
    CHECK(run({"catalog", "dump"}).code == 2);
    CHECK(run({"catalog", "dump", "Q_7"}).code == 2);
}

TEST_CASE("cli pair and diagram") {
    const Run p = run({"pair", "trefoil", "catalog:K_inf"});
    CHECK(p.code == 0);
    CHECK(p.out.find("rank") != std::string::npos);
    const Run d = run({"diagram", data_dir + "/diagrams/K_3.json", "--compare", "catalog:K_3"});
    CHECK(d.code == 0);
    CHECK(d.out.find("PASS equals") != std::string::npos);
    const Run w = run({"diagram", data_dir + "/diagrams/K_2.json", "--compare", "catalog:K_3"});
    CHECK(w.code == 1);
    CHECK(w.out.find("FAIL equals") != std::string::npos);
}

TEST_CASE("cli usage errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"hfk", "--variant", "flat", "--fixture", "unknot"}).code == 2);
    CHECK(run({"hfk", "--fixture", "figure_eight"}).code == 2);
    CHECK(run({"limit", "--tower", "sideways"}).code == 2);
    CHECK(run({"limit", "--bound", "0"}).code == 2);
    CHECK(run({"homology", "catalog:K_2"}).code == 2);
}
