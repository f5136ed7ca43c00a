#include "borsut/catalog.hpp"
#include "borsut/error.hpp"
#include "borsut/io.hpp"

#include <doctest.h>
#include <json.hpp>

using namespace borsut;
using nlohmann::json;

namespace {

Errc code_of(const std::string& text) {
    try {
        load_module_text(text);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("module was accepted");
    return Errc::Usage;
}

json k1() { return json::parse(dump_module_json(*torus_module(1))); }

} // namespace

TEST_CASE("every catalog module round-trips through its file form") {
    for (const std::string name : {"M_A", "M_B", "M_C", "K_0", "K_3", "M_2", "M_inf", "N", "C_1", "C_3", "B_1", "B_2",
                                   "K_inf", "K_2h", "K_fill", "Kp_3", "Kminus_4", "Kplus_4"}) {
        const ModPtr m = catalog_module(name);
        const std::string text = dump_module_json(*m, "note here");
        const LoadedModule back = load_module_text(text);
        CHECK(back.note == "note here");
        CHECK(back.module->name() == m->name());
        CHECK(back.module->kind() == m->kind());
        CHECK(back.module->dump() == m->dump());
        CHECK(dump_module_json(*back.module, "note here") == text);
    }
}

TEST_CASE("algebra tags") {
    CHECK(algebra_from_tag("WT")->tag() == "WT.1");
    CHECK(algebra_from_tag("WA.2")->tag() == "WA.2");
    CHECK(algebra_from_tag("F2")->size() == 1);
    CHECK_THROWS_AS(algebra_from_tag("WX"), Error);
    CHECK_THROWS_AS(algebra_from_tag("WT.7"), Error);
}

TEST_CASE("malformed module files") {
    CHECK(code_of("{") == Errc::ParseError);
    json a = k1();
    a["generators"][0].erase("idempotent");
    CHECK(code_of(a.dump()) == Errc::ParseError);
    json b = k1();
    b["operations"][0]["to"] = "nobody";
    CHECK(code_of(b.dump()) == Errc::ParseError);
    json c = k1();
    c["operations"][0]["coef"] = "rho_3"; // wrong idempotents for b_1 -> a
    CHECK(code_of(c.dump()) == Errc::ParseError);
    json d = k1();
    d["kind"] = "type_q";
    CHECK(code_of(d.dump()) == Errc::ParseError);
    json e = json::parse(dump_module_json(*torus_bimodule()));
    e["operations"][0]["inputs"] = {"I_2"};
    CHECK(code_of(e.dump()) == Errc::ParseError);
    json f = json::parse(dump_module_json(*torus_bimodule()));
    f["operations"][0]["inputs"] = {"rho_1 + rho_2"};
    CHECK(code_of(f.dump()) == Errc::ParseError);
    CHECK_THROWS_AS(load_module("/nonexistent.json"), Error);
}

TEST_CASE("half-integer gradings and Maslov mod 2") {
    json j = k1();
    j["generators"][1]["maslov"] = 3;
    const ModPtr m = load_module_text(j.dump()).module;
    CHECK(m->gradings()[0].a2 == -1);
    CHECK(m->gradings()[1].m == 1);
    json bad = k1();
    bad["generators"][0]["alexander"] = 0.25;
    CHECK(code_of(bad.dump()) == Errc::ParseError);
}
