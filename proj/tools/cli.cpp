#include "cli.hpp"

#include "borsut/catalog.hpp"
#include "borsut/diagrams.hpp"
#include "borsut/error.hpp"
#include "borsut/gradings.hpp"
#include "borsut/io.hpp"
#include "borsut/knot_floer.hpp"
#include "borsut/limits.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace borsut {

namespace {

using ojson = nlohmann::ordered_json;

struct Failed {}; // a verification failed; the report is already printed

bool is_catalog_ref(const std::string& s) { return s.rfind("catalog:", 0) == 0; }

ModPtr module_ref(const std::string& s) {
    if (is_catalog_ref(s)) return catalog_module(s.substr(8));
    return load_module(s).module;
}

ModPtr type_a_ref(const std::string& s) {
    if (is_catalog_ref(s)) return catalog_module(s.substr(8));
    return fixture(s).module;
}

// "1", "-0.5", "1/2" -> doubled Alexander grading.
int parse_alexander(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            int num = std::stoi(s.substr(0, slash)), den = std::stoi(s.substr(slash + 1));
            if (den == 1) return 2 * num;
            if (den == 2) return num;
        } else {
            double a = std::stod(s);
            int a2 = int(std::lround(2 * a));
            if (std::fabs(2 * a - a2) < 1e-9) return a2;
        }
    } catch (const std::exception&) {
    }
    throw Error(Errc::Usage, "grading '" + s + "' is not a half-integer");
}

ojson ranks_json(const std::map<Grading, int>& r) {
    auto arr = ojson::array();
    for (const auto& [g, n] : r) arr.push_back({{"alexander", half_str(g.a2)}, {"maslov", g.m}, {"rank", n}});
    return arr;
}

void print_ranks(std::ostream& out, const std::map<Grading, int>& r, bool graded) {
    if (!graded) {
        int t = 0;
        for (const auto& [g, n] : r) t += n;
        out << "  rank " << t << " (ungraded)\n";
        return;
    }
    out << "  " << std::setw(8) << "A" << std::setw(8) << "M" << std::setw(8) << "rank" << "\n";
    for (const auto& [g, n] : r)
        out << "  " << std::setw(8) << half_str(g.a2) << std::setw(8) << g.m << std::setw(8) << n << "\n";
}

std::string matrix_str(const F2Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return "[" + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + "]";
    std::string s;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) s += ";";
        for (std::size_t j = 0; j < m.cols(); ++j) s += m.get(i, j) ? '1' : '0';
    }
    return "[" + s + "]";
}

bool line(std::ostream& out, const std::string& name, bool ok, const std::string& detail) {
    out << (ok ? "PASS " : "FAIL ") << name;
    if (!detail.empty()) out << ": " << detail;
    out << "\n";
    return ok;
}

int cmd_verify(const std::string& target, int max_n, std::ostream& out) {
    bool ok = true;
    if (target == "catalog") {
        for (const auto& c : verify_catalog(max_n)) ok &= line(out, c.name, c.ok, c.detail);
        for (const auto& c : rederive_maps(max_n)) ok &= line(out, "rederive " + c.name, c.ok, c.detail);
        return ok ? 0 : 1;
    }
    if (is_catalog_ref(target)) {
        const std::string name = target.substr(8);
        std::optional<ModPtr> m;
        try {
            m = catalog_module(name);
        } catch (const Error&) {
        }
        if (!m) {
            const Morphism f = catalog_map(name);
            Report r = is_type_d_morphism(f);
            return line(out, name, r.ok, r.ok ? std::to_string(r.checked) + " generators" : r.failure) ? 0 : 1;
        }
        Report r = verify_structure(**m);
        ok &= line(out, name, r.ok, r.ok ? std::to_string(r.checked) + " relations" : r.failure);
        if ((*m)->graded() && (*m)->kind() == Kind::TypeD) {
            Report g = check_type_d_gradings(**m);
            ok &= line(out, name + " gradings", g.ok, g.failure);
        }
        return ok ? 0 : 1;
    }
    const LoadedModule lm = load_module(target);
    Report r = verify_structure(*lm.module);
    ok &= line(out, lm.module->name(), r.ok, r.ok ? std::to_string(r.checked) + " relations" : r.failure);
    if (lm.module->graded() && lm.module->kind() == Kind::AInf) {
        Report g = check_ainf_gradings(*lm.module);
        ok &= line(out, lm.module->name() + " gradings", g.ok, g.failure);
    } else if (lm.module->graded() && lm.module->kind() == Kind::TypeD) {
        Report g = check_type_d_gradings(*lm.module);
        ok &= line(out, lm.module->name() + " gradings", g.ok, g.failure);
    }
    return ok ? 0 : 1;
}

int cmd_catalog(const std::string& action, const std::string& name, const std::string& format, std::ostream& out) {
    if (action == "list") {
        out << "modules:";
        for (const auto& n : catalog_module_names()) out << " " << n;
        out << "\nmaps:";
        for (const auto& n : catalog_map_names()) out << " " << n;
        out << "\n";
        return 0;
    }
    if (action != "dump") throw Error(Errc::Usage, "catalog action must be list or dump");
    if (name.empty()) throw Error(Errc::Usage, "catalog dump needs a name");
    std::optional<ModPtr> m;
    try {
        m = catalog_module(name);
    } catch (const Error&) {
    }
    if (m) {
        out << (format == "json" ? dump_module_json(**m) : (*m)->dump());
        return 0;
    }
    const Morphism f = catalog_map(name);
    if (format == "json") {
        ojson j;
        j["name"] = f.name;
        j["source"] = f.src->name();
        j["target"] = f.tgt->name();
        auto terms = ojson::array();
        for (std::size_t x = 0; x < f.map.size(); ++x)
            for (const auto& [a, y] : f.map[x])
                terms.push_back({{"from", f.src->gen(int(x)).name}, {"coef", f.src->left()->name(a)}, {"to", f.tgt->gen(y).name}});
        j["terms"] = terms;
        out << j.dump(2) << "\n";
    } else {
        out << f.str() << "\n";
    }
    return 0;
}

int cmd_pair(const std::string& a, const std::string& d, const std::string& format, std::ostream& out) {
    const ModPtr am = type_a_ref(a), dm = module_ref(d);
    const ModPtr p = box(am, dm);
    const auto r = sfh_pair(am, dm);
    if (format == "json") {
        out << ojson{{"pair", p->name()}, {"generators", p->size()}, {"graded", p->graded()}, {"homology", ranks_json(r)}}.dump(2)
            << "\n";
    } else {
        out << p->name() << ": " << p->size() << " generators\n";
        print_ranks(out, r, p->graded());
    }
    return 0;
}

int cmd_homology(const std::string& file, const std::string& format, std::ostream& out) {
    const ModPtr m = module_ref(file);
    if (m->kind() != Kind::Complex)
        throw Error(Errc::Usage, m->name() + " is a " + kind_name(m->kind()) + "; homology takes a complex (use pair for pairings)");
    const auto r = f2_homology(to_complex(*m));
    if (format == "json") out << ojson{{"complex", m->name()}, {"homology", ranks_json(r)}}.dump(2) << "\n";
    else {
        out << m->name() << "\n";
        print_ranks(out, r, m->graded());
    }
    return 0;
}

int cmd_limit(const std::string& tower, int bound, const std::string& fix, const std::string& grading, std::ostream& out) {
    Tower t;
    if (tower == "direct") t = catalog_direct_tower();
    else if (tower == "inverse") t = catalog_inverse_tower();
    else throw Error(Errc::Usage, "tower must be direct or inverse");
    const bool direct = tower == "direct";
    const LimitPresentation p = limit(t, bound);
    out << "tower " << t.name << " (" << tower << "), bound " << bound << "\n";
    out << p.module->dump();
    out << "U:";
    for (std::size_t j = 0; j < p.u.size(); ++j)
        out << " " << p.module->gen(int(j)).name << "->" << (p.u[j] < 0 ? "0" : p.module->gen(p.u[j]).name);
    out << "\n";
    const ModPtr target = direct ? k_minus_truncated(bound - 1) : k_plus_truncated(bound - 1);
    Report cmp = compare_presentation(p, target, direct ? k_minus_u(bound - 1) : k_plus_u(bound - 1));
    bool ok = line(out, "presentation = " + target->name(), cmp.ok, cmp.failure);
    Report com = check_commutation(t, bound);
    ok &= line(out, "U-family commutes", com.ok, com.ok ? com.note : com.failure);
    if (!fix.empty()) {
        if (grading.empty()) throw Error(Errc::Usage, "--fixture needs --grading");
        const KnotFixture k = fixture(fix);
        const int a2 = parse_alexander(grading);
        if (!direct) throw Error(Errc::Usage, "stabilized pairing homology uses the direct tower");
        StableHomology s = stabilized_pair_homology(k.module, t, a2, bound);
        out << "stage dims at A = " << half_str(a2) << ":";
        for (int d : s.dims) out << " " << d;
        out << "\nstable value " << s.value << " from stage " << s.first_stable << "\n";
    }
    return ok ? 0 : 1;
}

int cmd_triangle(const std::vector<std::string>& fixtures, std::ostream& out) {
    bool ok = true;
    Report c = cone_identification();
    ok &= line(out, "Cone(phi_B) = M_A, phi_C inclusion, phi_A projection", c.ok, c.ok ? c.note : c.failure);
    std::vector<std::string> names = fixtures.empty() ? bundled_fixture_names() : fixtures;
    out << "  " << std::left << std::setw(14) << "fixture" << std::right << std::setw(6) << "H_A" << std::setw(6) << "H_B"
        << std::setw(6) << "H_C" << std::setw(7) << "rk fA" << std::setw(7) << "rk fB" << std::setw(7) << "rk fC"
        << "  exact\n";
    for (const auto& n : names) {
        const KnotFixture k = fixture(n);
        TriangleReport t = exact_triangle(k);
        out << "  " << std::left << std::setw(14) << k.name << std::right;
        for (int i = 0; i < 3; ++i) out << std::setw(6) << t.rank[i];
        for (int i = 0; i < 3; ++i) out << std::setw(7) << t.map_rank[i];
        out << "  " << (t.report.ok ? "yes" : "NO") << "\n";
        if (!t.report.ok) out << "    " << t.report.failure << "\n";
        ok &= t.report.ok;
    }
    return ok ? 0 : 1;
}

int cmd_hfk(const std::string& variant, const std::string& fix, int bound, const std::string& format, std::ostream& out) {
    const Variant v = parse_variant(variant);
    const KnotFixture k = fixture(fix);
    const HfkResult r = hfk(v, k, bound);
    if (format == "json") {
        ojson j{{"fixture", k.name}, {"variant", variant_name(v)}, {"ranks", ranks_json(r.ranks)}};
        if (v != Variant::Plus) j["module"] = r.module.str();
        j["window"] = {half_str(r.window.lo), half_str(r.window.hi)};
        j["certificate"] = r.certificate;
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "HFK-" << variant_name(v) << "(" << k.name << ")";
    if (v != Variant::Plus) out << " = " << r.module.str();
    out << "\n";
    print_ranks(out, r.ranks, true);
    out << "certificate: " << r.certificate << "\n";
    return 0;
}

int cmd_maps(const std::string& fix, int bound, const std::string& format, std::ostream& out) {
    const KnotFixture k = fixture(fix);
    const NaturalMaps m = natural_maps(k, bound);
    if (format == "json") {
        auto arr = ojson::array();
        for (const auto& c : m.checks)
            arr.push_back({{"map", c.name},
                           {"alexander", half_str(c.a2)},
                           {"chain_equal", c.equal},
                           {"pieces_match", c.pieces_match},
                           {"homology", matrix_str(c.on_homology)},
                           {"homology_rank", c.on_homology.rank()}});
        out << ojson{{"fixture", k.name}, {"ok", m.report.ok}, {"checks", arr}}.dump(2) << "\n";
        return m.report.ok ? 0 : 1;
    }
    out << "natural maps for " << k.name << " (bound " << bound << ")\n";
    out << "  " << std::left << std::setw(7) << "map" << std::right << std::setw(6) << "A" << std::setw(7) << "rank"
        << "  limit = natural  on homology\n";
    for (const auto& c : m.checks)
        out << "  " << std::left << std::setw(7) << c.name << std::right << std::setw(6) << half_str(c.a2) << std::setw(7)
            << c.on_homology.rank() << "  " << std::left << std::setw(16) << (c.equal && c.pieces_match ? "yes" : "NO")
            << std::right << matrix_str(c.on_homology) << "\n";
    line(out, "p* = Phi_SV, pi* = Phi_2h, iota* = Phi_dSV", m.report.ok, m.report.failure);
    return m.report.ok ? 0 : 1;
}

int cmd_diagram(const std::string& file, const std::string& compare, const std::string& format, std::ostream& out) {
    const NiceDiagram d = parse_diagram(file);
    const auto gens = enumerate_generators(d);
    const ModPtr m = type_d_from_nice_diagram(d);
    const ModPtr r = type_d_from_nice_diagram(reversed(d));
    bool ok = true;
    if (format == "json") out << dump_module_json(*m);
    else {
        out << "diagram " << d.name << ": " << gens.size() << " generators, " << d.regions.size() << " regions\n";
        for (const auto& g : gens) {
            out << "  " << g.name << "  occupies {";
            for (std::size_t i = 0; i < g.occupied.size(); ++i) out << (i ? "," : "") << g.occupied[i];
            out << "}  idempotent " << d.base->idem_name(d.base->idem_index(g.idempotent)) << "\n";
        }
        out << m->dump();
    }
    std::ostream& log = format == "json" ? std::cerr : out;
    Report v = verify_type_d(*m);
    ok &= line(log, "structure equation", v.ok, v.failure);
    ok &= line(log, "reversed orientation gives the same delta", m->dump() == r->dump(), "");
    if (!compare.empty()) {
        const ModPtr c = module_ref(compare);
        std::vector<int> bij;
        bool same = c->size() == m->size();
        for (std::size_t i = 0; same && i < m->size(); ++i) {
            auto j = c->find(m->gen(int(i)).name);
            if (!j) same = false;
            else bij.push_back(*j);
        }
        same = same && same_under(*m, *c, bij);
        ok &= line(log, "equals " + c->name(), same, "");
    }
    return ok ? 0 : 1;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"bordered sutured Floer algebra toolkit", "borsut"};
    app.require_subcommand(1);
    std::string format = "text";
    int bound = truncation_bound();

    auto* verify = app.add_subcommand("verify", "Verify a module file, catalog:NAME, or the whole catalog");
    std::string vtarget;
    int max_n = 4;
    verify->add_option("target", vtarget, "file, catalog:NAME or catalog")->required();
    verify->add_option("--max-n", max_n, "tower stages to check")->check(CLI::Range(0, 12));

    auto* catalog = app.add_subcommand("catalog", "List or dump catalog entries");
    std::string caction, cname;
    catalog->add_option("action", caction, "list or dump")->required()->check(CLI::IsMember({"list", "dump"}));
    catalog->add_option("name", cname, "entry to dump");
    catalog->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* pair = app.add_subcommand("pair", "Homology of a Type-A module boxed with a Type-D structure");
    std::string pa, pd;
    pair->add_option("a", pa, "fixture name, Type-A file or catalog:NAME")->required();
    pair->add_option("d", pd, "Type-D file or catalog:NAME")->required();
    pair->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* homology = app.add_subcommand("homology", "Homology of a complex file");
    std::string hfile;
    homology->add_option("file", hfile)->required();
    homology->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* lim = app.add_subcommand("limit", "Limit presentation of a catalog tower");
    std::string tower = "direct", lfix, lgrading;
    lim->add_option("--tower", tower, "direct or inverse")->check(CLI::IsMember({"direct", "inverse"}));
    lim->add_option("--bound", bound, "truncation bound")->check(CLI::Range(1, 64));
    lim->add_option("--fixture", lfix, "pair the stages with a fixture");
    lim->add_option("--grading", lgrading, "Alexander grading for --fixture");

    auto* tri = app.add_subcommand("triangle", "Bypass exact triangle suite");
    std::vector<std::string> tfix;
    tri->add_option("--fixture", tfix, "fixtures (default: all bundled)");

    auto* hf = app.add_subcommand("hfk", "Knot Floer homology of a fixture");
    std::string variant = "minus", hfix;
    hf->add_option("--variant", variant)->check(CLI::IsMember({"minus", "hat", "plus"}));
    hf->add_option("--fixture", hfix)->required();
    hf->add_option("--bound", bound)->check(CLI::Range(1, 64));
    hf->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* maps = app.add_subcommand("maps", "Natural maps p*, pi*, iota* against the limit maps");
    std::string mfix;
    maps->add_option("--fixture", mfix)->required();
    maps->add_option("--bound", bound)->check(CLI::Range(1, 64));
    maps->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* diag = app.add_subcommand("diagram", "Type-D structure of a nice diagram file");
    std::string dfile, dcompare;
    diag->add_option("file", dfile)->required();
    diag->add_option("--compare", dcompare, "catalog:NAME or file to compare with");
    diag->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    try {
        if (*verify) return cmd_verify(vtarget, max_n, out);
        if (*catalog) return cmd_catalog(caction, cname, format, out);
        if (*pair) return cmd_pair(pa, pd, format, out);
        if (*homology) return cmd_homology(hfile, format, out);
        if (*lim) return cmd_limit(tower, bound, lfix, lgrading, out);
        if (*tri) return cmd_triangle(tfix, out);
        if (*hf) return cmd_hfk(variant, hfix, bound, format, out);
        if (*maps) return cmd_maps(mfix, bound, format, out);
        if (*diag) return cmd_diagram(dfile, dcompare, format, out);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return e.code() == Errc::Usage || e.code() == Errc::ParseError ? 2 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace borsut
