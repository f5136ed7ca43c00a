#include "borsut/io.hpp"

#include "borsut/error.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace borsut {

using ordered_json = nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::ParseError, what); }

bool trivial(const AlgebraPtr& a) { return a->diagram().k() == 0; }

const char* kind_key(Kind k) {
    switch (k) {
    case Kind::TypeD: return "type_d";
    case Kind::AInf: return "type_a";
    case Kind::DA: return "da";
    case Kind::Complex: return "complex";
    }
    return "complex";
}

int idem_of(const Algebra& A, const ordered_json& g, const char* key, const std::string& gen) {
    if (A.diagram().k() == 0) return 0;
    if (!g.contains(key)) bad("generator " + gen + " has no " + key + " idempotent");
    const auto& v = g.at(key);
    std::vector<int> s = v.is_number() ? std::vector<int>{v.get<int>()} : v.get<std::vector<int>>();
    return A.idem_index(s);
}

int single_basis(const Algebra& A, const std::string& text, const std::string& where) {
    BitVec v = A.parse(text);
    if (v.count() != 1) bad(where + ": input '" + text + "' is not a single basis element");
    int b = int(v.first());
    if (A.is_idempotent(b)) bad(where + ": idempotent input '" + text + "' (modules are strictly unital)");
    return b;
}

} // namespace

AlgebraPtr algebra_from_tag(const std::string& tag) {
    if (tag == "F2") return ground_field();
    auto dot = tag.find('.');
    if (dot == std::string::npos) return named_algebra(tag, 1);
    try {
        return named_algebra(tag.substr(0, dot), std::stoi(tag.substr(dot + 1)));
    } catch (const std::invalid_argument&) {
        bad("bad algebra tag '" + tag + "'");
    }
}

LoadedModule load_module_text(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        bad(std::string("module file is not valid JSON: ") + e.what());
    }
    try {
        const std::string kind = j.at("kind").get<std::string>();
        AlgebraPtr left = ground_field(), right = ground_field();
        // "algebra" is shorthand for the one nontrivial side.
        if (kind == "type_d") left = algebra_from_tag(j.value("left", j.value("algebra", std::string())));
        else if (kind == "type_a") right = algebra_from_tag(j.value("right", j.value("algebra", std::string())));
        else if (kind == "da") {
            left = algebra_from_tag(j.at("left").get<std::string>());
            right = algebra_from_tag(j.at("right").get<std::string>());
        } else if (kind != "complex") bad("unknown kind '" + kind + "'");

        Bimodule m(j.value("name", std::string("module")), left, right);
        const char* lkey = kind == "type_d" ? "idempotent" : "left";
        const char* rkey = kind == "type_a" ? "idempotent" : "right";
        std::vector<Grading> gr;
        int graded = -1;
        for (const auto& g : j.at("generators")) {
            const std::string name = g.at("name").get<std::string>();
            if (m.find(name)) bad("duplicate generator " + name);
            m.add_gen(name, idem_of(*left, g, lkey, name), idem_of(*right, g, rkey, name));
            const bool has = g.contains("alexander");
            if (graded >= 0 && graded != int(has)) bad("gradings given for some generators only");
            graded = has;
            if (has) {
                double a = g.at("alexander").get<double>();
                int a2 = int(std::lround(2 * a));
                if (std::fabs(2 * a - a2) > 1e-9) bad("Alexander grading of " + name + " is not a half-integer");
                int mas = g.value("maslov", 0);
                gr.push_back({a2, ((mas % 2) + 2) % 2});
            }
        }
        for (const auto& op : j.value("operations", ordered_json::array())) {
            const std::string from = op.at("from").get<std::string>(), to = op.at("to").get<std::string>();
            const std::string where = "operation " + from + " -> " + to;
            std::vector<int> in;
            for (const auto& t : op.value("inputs", ordered_json::array()))
                in.push_back(single_basis(*right, t.get<std::string>(), where));
            BitVec coef = left->unit();
            if (op.contains("coef")) coef = left->parse(op.at("coef").get<std::string>());
            else if (!trivial(left)) bad(where + ": missing coef");
            const int x = m.index(from), y = m.index(to);
            // Left coefficients are sandwiched by the generator idempotents.
            const Algebra& L = *left;
            BitVec c = L.mul(L.mul(L.basis_vec(L.idem_basis(m.gen(x).left)), coef), L.basis_vec(L.idem_basis(m.gen(y).left)));
            if (c != coef) bad(where + ": coefficient does not match the generator idempotents");
            m.add_op(x, in, coef, y);
        }
        if (graded == 1) m.set_gradings(gr);
        return {std::make_shared<const Bimodule>(std::move(m)), j.value("note", std::string())};
    } catch (const ordered_json::exception& e) {
        bad(std::string("module field error: ") + e.what());
    }
}

LoadedModule load_module(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_module_text(ss.str());
}

std::string dump_module_json(const Bimodule& m, const std::string& note) {
    ordered_json j;
    j["name"] = m.name();
    const Kind k = m.kind();
    j["kind"] = kind_key(k);
    if (!trivial(m.left())) j["left"] = m.left()->tag();
    if (!trivial(m.right())) j["right"] = m.right()->tag();
    if (!note.empty()) j["note"] = note;
    const char* lkey = k == Kind::TypeD ? "idempotent" : "left";
    const char* rkey = k == Kind::AInf ? "idempotent" : "right";
    auto gens = ordered_json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        ordered_json g;
        g["name"] = m.gen(int(i)).name;
        if (!trivial(m.left())) g[lkey] = m.left()->idem_set(m.gen(int(i)).left);
        if (!trivial(m.right())) g[rkey] = m.right()->idem_set(m.gen(int(i)).right);
        if (m.graded()) {
            const auto& gr = m.gradings()[i];
            if (gr.a2 % 2 == 0) g["alexander"] = gr.a2 / 2;
            else g["alexander"] = gr.a2 / 2.0;
            g["maslov"] = gr.m;
        }
        gens.push_back(g);
    }
    j["generators"] = gens;
    auto ops = ordered_json::array();
    for (std::size_t x = 0; x < m.size(); ++x)
        for (const auto& [in, terms] : m.table(int(x)))
            for (const auto& [a, y] : terms) {
                ordered_json o;
                o["from"] = m.gen(int(x)).name;
                if (!in.empty()) {
                    auto arr = ordered_json::array();
                    for (int b : in) arr.push_back(m.right()->name(b));
                    o["inputs"] = arr;
                }
                if (!trivial(m.left())) o["coef"] = m.left()->name(a);
                o["to"] = m.gen(y).name;
                ops.push_back(o);
            }
    j["operations"] = ops;
    return j.dump(2) + "\n";
}

} // namespace borsut
