#include "oracles.hpp"

#include "borsut/catalog.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace oracle {

int rank(std::vector<std::vector<int>> rows) {
    int r = 0;
    const int cols = rows.empty() ? 0 : int(rows[0].size());
    for (int c = 0; c < cols && r < int(rows.size()); ++c) {
        int p = r;
        while (p < int(rows.size()) && !rows[p][c]) ++p;
        if (p == int(rows.size())) continue;
        std::swap(rows[p], rows[r]);
        for (int i = 0; i < int(rows.size()); ++i)
            if (i != r && rows[i][c])
                for (int k = 0; k < cols; ++k) rows[i][k] ^= rows[r][k];
        ++r;
    }
    return r;
}

namespace {

std::vector<std::vector<int>> matrix(const Complex& c) {
    const int n = int(c.gr.size());
    std::vector<std::vector<int>> d(n, std::vector<int>(n, 0));
    for (auto [i, j] : c.edges) d[i][j] ^= 1;
    return d;
}

int rank_from(const std::vector<std::vector<int>>& d, const std::vector<int>& src) {
    std::vector<std::vector<int>> rows;
    for (int i : src) rows.push_back(d[i]);
    return rank(rows);
}

} // namespace

std::map<std::pair<int, int>, int> homology(const Complex& c) {
    const auto d = matrix(c);
    std::map<std::pair<int, int>, std::vector<int>> by;
    for (int i = 0; i < int(c.gr.size()); ++i) by[c.gr[i]].push_back(i);
    std::set<int> alex;
    for (const auto& [g, v] : by) alex.insert(g.first);
    std::map<std::pair<int, int>, int> out;
    for (int a : alex)
        for (int m : {0, 1}) {
            const auto here = by[{a, m}], other = by[{a, 1 - m}];
            const int h = int(here.size()) - rank_from(d, here) - rank_from(d, other);
            if (h) out[{a, m}] = h;
        }
    return out;
}

int total_homology(const Complex& c) {
    const auto d = matrix(c);
    return int(c.gr.size()) - 2 * rank(d);
}

int strands_basis_count(const borsut::ArcDiagram& z, int i) {
    const int n = z.points();
    int count = 0;
    // Each point is unused, a source, a target, or both (horizontal or a
    // relay between moving strands). Enumerate moving strands as a partial
    // injection s -> t with t > s on the same arc, then horizontal pairs.
    std::vector<int> target(n, -1);
    std::vector<bool> hit(n, false);
    std::function<void(int, int)> moving = [&](int s, int used) {
        if (s == n) {
            std::set<int> src_pairs, tgt_pairs;
            for (int p = 0; p < n; ++p)
                if (target[p] >= 0) {
                    if (!src_pairs.insert(z.matching[p]).second) return;
                    if (!tgt_pairs.insert(z.matching[target[p]]).second) return;
                }
            std::vector<int> free_pairs;
            for (int q = 1; q <= z.k(); ++q)
                if (!src_pairs.count(q) && !tgt_pairs.count(q)) free_pairs.push_back(q);
            const int need = i - used;
            if (need < 0 || need > int(free_pairs.size())) return;
            // choose `need` horizontal pairs
            long c = 1;
            for (int k = 0; k < need; ++k) c = c * long(free_pairs.size() - k) / (k + 1);
            count += int(c);
            return;
        }
        moving(s + 1, used);
        for (int t = s + 1; t < n; ++t) {
            if (hit[t] || z.arc_of(t) != z.arc_of(s)) continue;
            hit[t] = true;
            target[s] = t;
            moving(s + 1, used + 1);
            target[s] = -1;
            hit[t] = false;
        }
    };
    moving(0, 0);
    return count;
}

namespace {

int gen_a2(const borsut::Bimodule& m, int g) { return m.graded() ? m.gradings()[g].a2 : 0; }
int gen_m(const borsut::Bimodule& m, int g) { return m.graded() ? m.gradings()[g].m : 0; }

} // namespace

Complex flat_pairing(const borsut::Bimodule& f, const borsut::Bimodule& d) {
    Complex c;
    std::map<std::pair<int, int>, int> at;
    for (int g = 0; g < int(f.size()); ++g)
        for (int y = 0; y < int(d.size()); ++y)
            if (f.gen(g).right == d.gen(y).left) {
                at[{g, y}] = int(c.gr.size());
                c.gr.push_back({gen_a2(f, g) + gen_a2(d, y), gen_m(f, g) ^ gen_m(d, y)});
            }
    for (auto [gy, i] : at) {
        auto it = f.table(gy.first).find({});
        if (it == f.table(gy.first).end()) continue;
        for (const auto& [a, h] : it->second) c.edges.push_back({i, at.at({h, gy.second})});
    }
    return c;
}

Complex hat_pairing(const borsut::Bimodule& f) { return flat_pairing(f, *borsut::k_infinity()); }

Complex minus_pairing(const borsut::Bimodule& f, int n) {
    const auto km = borsut::k_minus();
    const int idem = km.gens[0].left;
    const auto kg = km.gr[0];
    int rho23 = -1;
    for (int b = 0; b < int(km.alg->size()); ++b)
        if (km.alg->name(b) == "rho_23") rho23 = b;
    Complex c;
    std::map<std::pair<int, int>, int> at; // (g, j) -> index of U^j g
    for (int g = 0; g < int(f.size()); ++g)
        if (f.gen(g).right == idem)
            for (int j = 0; j <= n; ++j) {
                at[{g, j}] = int(c.gr.size());
                c.gr.push_back({gen_a2(f, g) + kg.a2 - 2 * j, gen_m(f, g) ^ kg.m});
            }
    for (auto [gj, i] : at) {
        const auto [g, j] = gj;
        for (const auto& [inputs, terms] : f.table(g)) {
            if (!std::all_of(inputs.begin(), inputs.end(), [&](int b) { return b == rho23; })) continue;
            const int k = int(inputs.size());
            if (j + k > n) continue;
            for (const auto& [a, h] : terms) c.edges.push_back({i, at.at({h, j + k})});
        }
    }
    return c;
}

} // namespace oracle
