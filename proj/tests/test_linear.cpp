#include "oracles.hpp"

#include "borsut/error.hpp"
#include "borsut/linear.hpp"

#include <doctest.h>

#include <random>

using namespace borsut;

namespace {

GradedChainComplex ungraded(std::size_t n) {
    GradedChainComplex c;
    c.graded = false;
    for (std::size_t i = 0; i < n; ++i) c.names.push_back("g" + std::to_string(i));
    c.gr.assign(n, Grading{});
    c.d = F2Matrix(n, n);
    return c;
}

F2Poly poly(std::initializer_list<int> degrees) {
    F2Poly p;
    for (int k : degrees) p += F2Poly::monomial(k);
    return p;
}

F2Poly gcd(F2Poly a, F2Poly b) {
    while (!b.is_zero()) {
        F2Poly r = a.divmod(b).second;
        a = b;
        b = r;
    }
    return a;
}

// d = B N B^-1 with N a disjoint set of arrows, so d^2 = 0 and H has rank n - 2 * arrows.
GradedChainComplex random_complex(std::mt19937& rng, std::size_t n, int& arrows) {
    F2Matrix N(n, n);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    arrows = int(rng() % (n / 2 + 1));
    for (int k = 0; k < arrows; ++k) N.set(perm[2 * k], perm[2 * k + 1]);
    F2Matrix B(n, n), Binv(n, n);
    for (std::size_t i = 0; i < n; ++i) B.set(i, i), Binv.set(i, i);
    for (int step = 0; step < 40; ++step) {
        std::size_t i = rng() % n, j = rng() % n;
        if (i == j) continue;
        B.row(i) ^= B.row(j); // row op on B
        // the inverse receives the matching column op
        for (std::size_t r = 0; r < n; ++r)
            if (Binv.get(r, i)) Binv.flip(r, j);
    }
    GradedChainComplex c = ungraded(n);
    c.d = B.then(N).then(Binv);
    return c;
}

oracle::Complex to_oracle(const GradedChainComplex& c) {
    oracle::Complex o;
    for (const auto& g : c.gr) o.gr.push_back({g.a2, g.m});
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j)
            if (c.d.get(i, j)) o.edges.push_back({int(i), int(j)});
    return o;
}

} // namespace

TEST_CASE("bit vectors and the reducer") {
    BitVec v(130);
    v.set(3);
    v.set(129);
    CHECK(v.count() == 2);
    CHECK(v.first() == 3);
    CHECK(v.ones() == std::vector<std::size_t>{3, 129});
    BitVec w = v ^ v;
    CHECK(w.none());

    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t rows = 1 + rng() % 8, cols = 1 + rng() % 8;
        std::vector<std::vector<int>> m(rows, std::vector<int>(cols));
        Reducer red(cols, rows);
        for (std::size_t i = 0; i < rows; ++i) {
            BitVec r(cols);
            for (std::size_t j = 0; j < cols; ++j)
                if (rng() % 2) r.set(j), m[i][j] = 1;
            red.insert(r, i);
        }
        CHECK(int(red.rank()) == oracle::rank(m));
    }
}

TEST_CASE("matrix kernel and image dimensions add up") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
        F2Matrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (rng() % 3 == 0) m.set(i, j);
        CHECK(m.rank() + m.kernel().size() == r);
        CHECK(m.image().size() == m.rank());
        CHECK(m.transpose().rank() == m.rank());
        for (const auto& k : m.kernel()) CHECK(m.apply(k).none());
    }
}

TEST_CASE("f2 homology of small complexes") {
    SUBCASE("zero differential on three generators") {
        auto h = f2_homology(ungraded(3));
        CHECK(h.at(Grading{}) == 3);
    }
    SUBCASE("an acyclic pair") {
        GradedChainComplex c = ungraded(2);
        c.d.set(0, 1);
        auto h = f2_homology(c);
        int total = 0;
        for (auto& [g, n] : h) total += n;
        CHECK(total == 0);
    }
    SUBCASE("d^2 != 0 is rejected") {
        GradedChainComplex c = ungraded(3);
        c.d.set(0, 1);
        c.d.set(1, 2);
        CHECK_THROWS_AS(f2_homology(c), Error);
        try {
            c.check();
        } catch (const Error& e) {
            CHECK(e.code() == Errc::NotAComplex);
        }
    }
    SUBCASE("graded: Alexander pieces are separate") {
        GradedChainComplex c;
        c.names = {"a", "b", "c"};
        c.gr = {{0, 1}, {0, 0}, {2, 0}};
        c.d = F2Matrix(3, 3);
        c.d.set(0, 1);
        auto h = f2_homology(c);
        CHECK(h.size() == 1);
        CHECK(h.at(Grading{2, 0}) == 1);
    }
}

TEST_CASE("f2 homology agrees with row reduction on random complexes") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        int arrows = 0;
        const std::size_t n = 2 + rng() % 9;
        GradedChainComplex c = random_complex(rng, n, arrows);
        c.check();
        auto h = f2_homology(c);
        int total = 0;
        for (auto& [g, k] : h) total += k;
        CHECK(total == int(n) - 2 * arrows);
        CHECK(total == oracle::total_homology(to_oracle(c)));
    }
}

TEST_CASE("induced map of the identity is the identity") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        int arrows = 0;
        GradedChainComplex c = random_complex(rng, 2 + rng() % 7, arrows);
        F2Matrix id(c.size(), c.size());
        for (std::size_t i = 0; i < c.size(); ++i) id.set(i, i);
        HomologyModel h(c);
        CHECK(is_chain_map(c, c, id));
        F2Matrix m = induced_map(c, c, id, h, h);
        CHECK(m.rank() == h.rank());
        for (std::size_t i = 0; i < h.rank(); ++i) CHECK(m.get(i, i));
    }
}

TEST_CASE("polynomials over F2") {
    const F2Poly a = poly({0, 1, 3}), b = poly({1, 2});
    CHECK((a * b).degree() == 5);
    auto [q, r] = (a * b + poly({0})).divmod(b);
    CHECK(q == a);
    CHECK(r == poly({0}));
    CHECK(poly({2}).is_monomial());
    CHECK(!a.is_monomial());
    CHECK(a + a == F2Poly());
    CHECK(poly({1}).divides(poly({1, 3})));
}

TEST_CASE("smith normal form over F2[U]") {
    SUBCASE("identity") {
        SmithForm s = snf_over_f2u(F2UMatrix::identity(3));
        REQUIRE(s.factors.size() == 3);
        for (auto& f : s.factors) CHECK(f.is_one());
    }
    SUBCASE("a single U^2") {
        F2UMatrix m(1, 1);
        m.at(0, 0) = poly({2});
        SmithForm s = snf_over_f2u(m);
        REQUIRE(s.factors.size() == 1);
        CHECK(s.factors[0] == poly({2}));
    }
    SUBCASE("[[U, 1], [0, U]] has factors 1, U^2") {
        F2UMatrix m(2, 2);
        m.at(0, 0) = poly({1});
        m.at(0, 1) = poly({0});
        m.at(1, 1) = poly({1});
        SmithForm s = snf_over_f2u(m);
        REQUIRE(s.factors.size() == 2);
        CHECK(s.factors[0].is_one());
        CHECK(s.factors[1] == poly({2}));
        CHECK(s.P * m * s.Q == s.D);
    }
    SUBCASE("random matrices: P A Q = D, P invertible, divisibility, first factor is the gcd") {
        std::mt19937 rng(99);
        for (int trial = 0; trial < 60; ++trial) {
            const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
            F2UMatrix m(r, c);
            F2Poly g;
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j) {
                    if (rng() % 2) continue;
                    F2Poly p;
                    for (int k = 0; k < 3; ++k)
                        if (rng() % 2) p += F2Poly::monomial(k);
                    m.at(i, j) = p;
                    g = gcd(p, g);
                }
            SmithForm s = snf_over_f2u(m);
            CHECK(s.P * m * s.Q == s.D);
            CHECK(s.P * s.Pinv == F2UMatrix::identity(r));
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j) {
                    if (i == j && i < s.factors.size()) CHECK(s.D.at(i, j) == s.factors[i]);
                    else CHECK(s.D.at(i, j).is_zero());
                }
            for (std::size_t i = 1; i < s.factors.size(); ++i) CHECK(s.factors[i - 1].divides(s.factors[i]));
            if (!g.is_zero()) {
                REQUIRE(!s.factors.empty());
                CHECK(s.factors[0] == g);
            } else {
                CHECK(s.factors.empty());
            }
        }
    }
}

TEST_CASE("F2[U] module homology") {
    SUBCASE("one generator, zero differential") {
        GradedChainComplex c;
        c.ring = GradedChainComplex::Ring::F2U;
        c.names = {"x"};
        c.gr = {{0, 0}};
        c.du = F2UMatrix(1, 1);
        GradedFUModule h = f2u_module_homology(c);
        CHECK(h.total_free() == 1);
        int top = 99;
        CHECK(h.top_free(top));
        CHECK(top == 0);
    }
    SUBCASE("dx = U y is one U-torsion summand of order one") {
        GradedChainComplex c;
        c.ring = GradedChainComplex::Ring::F2U;
        c.names = {"x", "y"};
        c.gr = {{0, 1}, {2, 0}};
        c.du = F2UMatrix(2, 2);
        c.du.at(1, 0) = poly({1});
        GradedFUModule h = f2u_module_homology(c);
        CHECK(h.total_free() == 0);
        REQUIRE(h.parts.size() == 1);
        CHECK(h.parts.begin()->first == Grading{2, 0});
        CHECK(h.parts.begin()->second.torsion == std::vector<int>{1});
        // setting U = 0 doubles each torsion summand
        auto h0 = f2_homology(specialize_u0(c));
        int total = 0;
        for (auto& [g, n] : h0) total += n;
        CHECK(total == 2);
    }
    SUBCASE("empty complex") {
        GradedChainComplex c;
        c.ring = GradedChainComplex::Ring::F2U;
        CHECK(f2u_module_homology(c).empty());
    }
    SUBCASE("inhomogeneous differential is rejected") {
        GradedChainComplex c;
        c.ring = GradedChainComplex::Ring::F2U;
        c.names = {"x", "y"};
        c.gr = {{0, 1}, {0, 0}};
        c.du = F2UMatrix(2, 2);
        c.du.at(1, 0) = poly({1});
        CHECK_THROWS_AS(f2u_module_homology(c), Error);
    }
}

TEST_CASE("half-integer printing") {
    CHECK(half_str(0) == "0");
    CHECK(half_str(-2) == "-1");
    CHECK(half_str(1) == "1/2");
    CHECK(half_str(-3) == "-3/2");
}
