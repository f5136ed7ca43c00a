#include "borsut/diagrams.hpp"

#include "borsut/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace borsut {

using json = nlohmann::json;
using EdgeType = DiagramEdge::Type;

bool DiagramRegion::touches_suture() const {
    return std::any_of(edges.begin(), edges.end(), [](const DiagramEdge& e) { return e.type == EdgeType::Suture; });
}

std::string NiceDiagram::alpha_name(int a) const {
    return alpha_is_arc(a) ? alpha_arcs[a].name : alpha_circles[a - alpha_arcs.size()];
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::ParseError, what); }

ArcDiagram arc_diagram_for(const std::string& id) {
    if (id == "WD") return wd_diagram();
    if (id == "WA") return wa_diagram();
    if (id == "WT") return wt_diagram();
    if (id == "F2") return make_arc_diagram("F2", {}, {});
    bad("unknown arc diagram '" + id + "'");
}

DiagramEdge parse_edge(const std::string& tok, const std::string& where) {
    DiagramEdge e;
    if (tok == "suture") return e;
    auto colon = tok.find(':');
    if (colon == std::string::npos) bad(where + ": bad edge '" + tok + "'");
    const std::string kind = tok.substr(0, colon), rest = tok.substr(colon + 1);
    if (kind == "alpha" || kind == "beta") {
        e.type = kind == "alpha" ? EdgeType::Alpha : EdgeType::Beta;
        auto slash = rest.find('/');
        e.curve = rest.substr(0, slash);
        if (slash != std::string::npos) e.segment = rest.substr(slash + 1);
        if (e.curve.empty()) bad(where + ": edge '" + tok + "' names no curve");
        return e;
    }
    if (kind == "reeb") {
        e.type = EdgeType::Reeb;
        auto gt = rest.find('>');
        if (gt == std::string::npos) bad(where + ": Reeb edge '" + tok + "' needs P>Q");
        try {
            e.from = std::stoi(rest.substr(0, gt));
            e.to = std::stoi(rest.substr(gt + 1));
        } catch (const std::exception&) {
            bad(where + ": Reeb edge '" + tok + "' needs integer points");
        }
        return e;
    }
    bad(where + ": bad edge '" + tok + "'");
}

// The word of a region listed the other way round: edges reversed, corners
// kept between the same two edges, Reeb edges traversed backwards.
DiagramRegion flip(const DiagramRegion& r) {
    DiagramRegion out = r;
    const std::size_t n = r.edges.size();
    out.edges.assign(r.edges.rbegin(), r.edges.rend());
    for (auto& e : out.edges)
        if (e.type == EdgeType::Reeb) std::swap(e.from, e.to);
    // corner between reversed edges i and i+1 was between r.edges[n-2-i] and r.edges[n-1-i].
    for (std::size_t i = 0; i < n; ++i) out.corner[i] = r.corner[(2 * n - 2 - i) % n];
    out.clockwise = !r.clockwise;
    return out;
}

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void join(int a, int b) { p[find(a)] = find(b); }
};

// Regions of the complement of one family of curves, glued across the other
// family; every such component must reach the sutures.
void check_connected(const NiceDiagram& d, EdgeType across, const std::string& removed) {
    const int n = int(d.regions.size());
    UnionFind uf(n);
    std::map<std::string, int> seen;
    for (int r = 0; r < n; ++r)
        for (const auto& e : d.regions[r].edges) {
            if (e.type != across) continue;
            const std::string key = e.curve + "/" + e.segment;
            auto [it, fresh] = seen.emplace(key, r);
            if (!fresh) uf.join(r, it->second);
        }
    std::set<int> ok;
    for (int r = 0; r < n; ++r)
        if (d.regions[r].touches_suture()) ok.insert(uf.find(r));
    for (int r = 0; r < n; ++r)
        if (!ok.count(uf.find(r)))
            throw Error(Errc::Disconnected, "region " + d.regions[r].name + " lies in a component of the complement of the " +
                                                removed + " curves that misses the sutures");
}

void validate_region(const NiceDiagram& d, const DiagramRegion& r, const ArcDiagram& z,
                     const std::map<std::string, int>& alpha_idx, const std::set<std::string>& betas) {
    const std::string where = "region " + r.name;
    const std::size_t n = r.edges.size();
    if (n == 0) bad(where + ": no edges");
    std::set<int> corners;
    std::string repeated;
    int reeb = 0, vertices = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& e = r.edges[i];
        const auto& f = r.edges[(i + 1) % n];
        if (e.type == EdgeType::Alpha && !alpha_idx.count(e.curve)) bad(where + ": unknown alpha curve " + e.curve);
        if (e.type == EdgeType::Beta && !betas.count(e.curve)) bad(where + ": unknown beta curve " + e.curve);
        if (e.type == EdgeType::Reeb) {
            ++reeb;
            if (e.from < 0 || e.to < 0 || e.from >= z.points() || e.to >= z.points() || e.from == e.to ||
                z.arc_of(e.from) != z.arc_of(e.to))
                bad(where + ": Reeb edge " + std::to_string(e.from) + ">" + std::to_string(e.to) + " is not a chord of Z");
            const bool down = e.from > e.to;
            if (down == r.clockwise) bad(where + ": Reeb edge runs along the orientation of Z");
        }
        if (n == 1) {
            // a disk bounded by one closed curve, or by the suture alone
            if (e.type == EdgeType::Reeb || (e.type == EdgeType::Alpha && d.alpha_is_arc(alpha_idx.at(e.curve))) ||
                r.corner[0] >= 0)
                bad(where + ": a one-edge region must be bounded by a circle or by the suture");
            continue;
        }
        const int c = r.corner[i];
        const bool ab = (e.type == EdgeType::Alpha && f.type == EdgeType::Beta) ||
                        (e.type == EdgeType::Beta && f.type == EdgeType::Alpha);
        if (ab != (c >= 0)) bad(where + ": a corner must sit exactly between an alpha and a beta edge");
        if (c >= 0) {
            const auto& p = d.intersections[c];
            const auto& ea = e.type == EdgeType::Alpha ? e : f;
            const auto& eb = e.type == EdgeType::Beta ? e : f;
            if (d.alpha_name(p.alpha) != ea.curve || d.beta_circles[p.beta] != eb.curve)
                bad(where + ": corner " + p.name + " is not on " + ea.curve + " and " + eb.curve);
            if (!corners.insert(c).second) repeated = p.name;
            ++vertices;
            continue;
        }
        if (e.type == f.type && e.type != EdgeType::Suture) bad(where + ": two consecutive edges of the same kind");
        if (e.type == EdgeType::Beta || f.type == EdgeType::Beta) bad(where + ": beta edge meets the boundary");
        // alpha -> Reeb and Reeb -> alpha meet at an endpoint of the arc on Z.
        auto endpoint = [&](const DiagramEdge& a, int pt) {
            int i = alpha_idx.at(a.curve);
            if (!d.alpha_is_arc(i)) bad(where + ": alpha circle " + a.curve + " meets Z");
            const auto& arc = d.alpha_arcs[i];
            if (arc.end0 != pt && arc.end1 != pt)
                bad(where + ": " + a.curve + " does not end at point " + std::to_string(pt));
            ++vertices;
        };
        if (e.type == EdgeType::Alpha && f.type == EdgeType::Reeb) endpoint(e, f.from);
        if (e.type == EdgeType::Reeb && f.type == EdgeType::Alpha) endpoint(f, e.to);
    }
    if (r.touches_suture()) return;
    // Suture-adjacent regions may revisit a corner; a counted one may not.
    if (!repeated.empty()) throw Error(Errc::NotNice, where + " passes corner " + repeated + " twice (immersed)");
    if (r.extended) {
        if (corners.size() != 2 || reeb < 1 || reeb > 2)
            throw Error(Errc::NotNice, where + ": an extended region needs two generator corners and one or two Reeb edges");
        return;
    }
    if (vertices > 4) throw Error(Errc::NotNice, where + " has " + std::to_string(vertices) + " vertices and avoids the sutures");
}

} // namespace

NiceDiagram parse_diagram_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        bad(std::string("diagram is not valid JSON: ") + e.what());
    }
    NiceDiagram d;
    try {
        d.name = j.value("name", std::string("diagram"));
        const std::string zid = j.at("arc_diagram").get<std::string>();
        const ArcDiagram z = arc_diagram_for(zid);
        d.points = j.at("points").get<std::vector<int>>();
        if (d.points != z.matching) bad("points do not match the matching of " + zid);

        std::map<std::string, int> alpha_idx;
        std::set<int> pairs;
        for (const auto& a : j.value("alpha_arcs", json::array())) {
            AlphaArc arc;
            arc.name = a.at("name").get<std::string>();
            auto ends = a.at("ends").get<std::vector<int>>();
            if (ends.size() != 2) bad("alpha arc " + arc.name + " needs two ends");
            arc.end0 = ends[0];
            arc.end1 = ends[1];
            for (int p : ends)
                if (p < 0 || p >= z.points()) bad("alpha arc " + arc.name + " ends off Z");
            if (arc.end0 == arc.end1 || z.matching[arc.end0] != z.matching[arc.end1])
                bad("alpha arc " + arc.name + " does not join a matched pair");
            arc.pair = z.matching[arc.end0];
            if (!pairs.insert(arc.pair).second) bad("two alpha arcs on matched pair " + std::to_string(arc.pair));
            if (!alpha_idx.emplace(arc.name, int(d.alpha_arcs.size())).second) bad("duplicate alpha name " + arc.name);
            d.alpha_arcs.push_back(arc);
        }
        if (int(pairs.size()) != z.k()) bad("every matched pair needs an alpha arc");
        for (const auto& c : j.value("alpha_circles", json::array())) {
            auto nm = c.get<std::string>();
            if (!alpha_idx.emplace(nm, int(d.alpha_arcs.size() + d.alpha_circles.size())).second)
                bad("duplicate alpha name " + nm);
            d.alpha_circles.push_back(nm);
        }
        std::map<std::string, int> beta_idx;
        for (const auto& c : j.value("beta_circles", json::array())) {
            auto nm = c.get<std::string>();
            if (!beta_idx.emplace(nm, int(d.beta_circles.size())).second) bad("duplicate beta name " + nm);
            d.beta_circles.push_back(nm);
        }
        std::set<std::string> betas(d.beta_circles.begin(), d.beta_circles.end());

        std::map<std::string, int> point_idx;
        for (const auto& p : j.value("intersections", json::array())) {
            Intersection x;
            x.name = p.at("name").get<std::string>();
            auto a = p.at("alpha").get<std::string>(), b = p.at("beta").get<std::string>();
            if (!alpha_idx.count(a)) bad("intersection " + x.name + " on unknown alpha " + a);
            if (!beta_idx.count(b)) bad("intersection " + x.name + " on unknown beta " + b);
            x.alpha = alpha_idx[a];
            x.beta = beta_idx[b];
            if (!point_idx.emplace(x.name, int(d.intersections.size())).second) bad("duplicate intersection " + x.name);
            d.intersections.push_back(x);
        }

        const int k = z.k();
        const int occupied = int(d.beta_circles.size()) - int(d.alpha_circles.size());
        if (occupied < 0 || occupied > k) bad("no generator can exist: beta count minus alpha-circle count is out of range");
        d.base = named_algebra(zid, k - occupied);

        if (!j.contains("regions") || j.at("regions").empty()) bad("diagram lists no regions");
        for (const auto& r : j.at("regions")) {
            DiagramRegion reg;
            reg.name = r.at("name").get<std::string>();
            reg.extended = r.value("extended", false);
            const std::string orient = r.value("orientation", std::string("ccw"));
            if (orient != "ccw" && orient != "cw") bad("region " + reg.name + ": orientation must be ccw or cw");
            reg.clockwise = orient == "cw";
            if (r.value("immersed", false)) throw Error(Errc::NotNice, "region " + reg.name + " is immersed");
            // Corner tokens attach to the edge before them; a leading corner wraps around.
            int pending = -1;
            for (const auto& t : r.at("boundary")) {
                auto tok = t.get<std::string>();
                if (!tok.empty() && tok[0] == '@') {
                    auto it = point_idx.find(tok.substr(1));
                    if (it == point_idx.end()) bad("region " + reg.name + ": unknown corner " + tok);
                    if (reg.edges.empty()) {
                        if (pending >= 0) bad("region " + reg.name + ": two corners in a row");
                        pending = it->second;
                    } else {
                        if (reg.corner.back() >= 0) bad("region " + reg.name + ": two corners in a row");
                        reg.corner.back() = it->second;
                    }
                    continue;
                }
                reg.edges.push_back(parse_edge(tok, "region " + reg.name));
                reg.corner.push_back(-1);
            }
            if (pending >= 0) {
                if (reg.edges.empty() || reg.corner.back() >= 0) bad("region " + reg.name + ": two corners in a row");
                reg.corner.back() = pending;
            }
            validate_region(d, reg, z, alpha_idx, betas);
            d.regions.push_back(std::move(reg));
        }
    } catch (const json::exception& e) {
        bad(std::string("diagram field error: ") + e.what());
    }
    check_connected(d, EdgeType::Beta, "alpha");
    check_connected(d, EdgeType::Alpha, "beta");
    return d;
}

NiceDiagram parse_diagram(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_diagram_text(ss.str());
}

std::vector<DiagramGenerator> enumerate_generators(const NiceDiagram& d) {
    std::vector<DiagramGenerator> out;
    const int nb = int(d.beta_circles.size());
    const int k = d.base->diagram().k();
    std::vector<int> pick;
    std::vector<bool> alpha_used(d.alpha_arcs.size() + d.alpha_circles.size(), false);
    auto rec = [&](auto&& self, int b) -> void {
        if (b == nb) {
            for (std::size_t c = 0; c < d.alpha_circles.size(); ++c)
                if (!alpha_used[d.alpha_arcs.size() + c]) return;
            DiagramGenerator g;
            g.points = pick;
            std::sort(g.points.begin(), g.points.end());
            std::set<int> occ;
            for (int p : g.points)
                if (d.alpha_is_arc(d.intersections[p].alpha)) occ.insert(d.alpha_arcs[d.intersections[p].alpha].pair);
            g.occupied.assign(occ.begin(), occ.end());
            for (int s = 1; s <= k; ++s)
                if (!occ.count(s)) g.idempotent.push_back(s);
            if (g.points.empty()) g.name = "empty";
            for (std::size_t i = 0; i < g.points.size(); ++i)
                g.name += (i ? "," : "") + d.intersections[g.points[i]].name;
            out.push_back(std::move(g));
            return;
        }
        for (int p = 0; p < int(d.intersections.size()); ++p) {
            const auto& x = d.intersections[p];
            if (x.beta != b || alpha_used[x.alpha]) continue;
            alpha_used[x.alpha] = true;
            pick.push_back(p);
            self(self, b + 1);
            pick.pop_back();
            alpha_used[x.alpha] = false;
        }
    };
    rec(rec, 0);
    return out;
}

ModPtr type_d_from_nice_diagram(const NiceDiagram& d) {
    const auto gens = enumerate_generators(d);
    const Algebra& A = *d.base;
    Bimodule m = Bimodule::type_d(d.name, d.base);
    std::map<std::vector<int>, int> by_points;
    for (const auto& g : gens) {
        by_points[g.points] = m.add_gen(g.name, A.idem_index(g.idempotent), 0);
    }
    for (const auto& raw : d.regions) {
        if (raw.touches_suture()) continue;
        const DiagramRegion r = raw.clockwise ? flip(raw) : raw;
        const std::size_t n = r.edges.size();
        // Walking counterclockwise, an x-corner turns from beta onto alpha.
        std::vector<int> xs, ys;
        std::size_t start = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (r.corner[i] < 0) continue;
            if (r.edges[i].type == EdgeType::Beta) {
                xs.push_back(r.corner[i]);
                start = (i + 1) % n;
            } else {
                ys.push_back(r.corner[i]);
            }
        }
        std::vector<Chord> chords;
        for (std::size_t s = 0; s < n; ++s) {
            const auto& e = r.edges[(start + s) % n];
            if (e.type == EdgeType::Reeb) chords.push_back({e.to, e.from});
        }
        if (xs.size() != ys.size() || xs.empty() || xs.size() > 2 || (!chords.empty() && xs.size() != 1))
            throw Error(Errc::NotNice, "region " + r.name + " is not a bigon, rectangle or boundary polygon");
        if (chords.empty() && n != 2 * xs.size())
            throw Error(Errc::NotNice, "region " + r.name + " has extra edges");
        BitVec label = A.unit();
        for (const auto& c : chords) label = A.mul(label, A.chord_element({c}));
        for (const auto& g : gens) {
            std::set<int> pts(g.points.begin(), g.points.end());
            if (!std::all_of(xs.begin(), xs.end(), [&](int p) { return pts.count(p); })) continue;
            for (int p : xs) pts.erase(p);
            bool clash = false;
            for (int p : ys) clash |= !pts.insert(p).second;
            if (clash) continue;
            auto it = by_points.find(std::vector<int>(pts.begin(), pts.end()));
            if (it == by_points.end()) continue;
            const int x = by_points.at(g.points), y = it->second;
            BitVec coef = A.mul(A.mul(A.basis_vec(A.idem_basis(m.gen(x).left)), label),
                                A.basis_vec(A.idem_basis(m.gen(y).left)));
            if (coef.any()) m.add_op(x, {}, coef, y);
        }
    }
    return std::make_shared<const Bimodule>(std::move(m));
}

NiceDiagram reversed(const NiceDiagram& d) {
    NiceDiagram out = d;
    for (auto& r : out.regions) r = flip(r);
    return out;
}

} // namespace borsut
