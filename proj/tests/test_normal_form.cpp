#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "petal/normal_form.hpp"

using namespace petal;

namespace {

GermMap germ_from(std::initializer_list<std::tuple<int, int, int, double, double>> terms,
                  int trunc = 8) {
    TruncPoly2<cx> c1(trunc), c2(trunc);
    c1.set(1, 0, cx(1));
    c2.set(0, 1, cx(1));
    for (auto& [comp, i, j, re, im] : terms)
        (comp == 1 ? c1 : c2).add_term(i, j, cx(re, im));
    return GermMap::from_components(c1, c2, trunc);
}

GermMap abate111() {
    return germ_from({{1, 1, 1, 1, 0}, {2, 0, 2, 1, 0}, {2, 2, 0, 1, 0}}, 6);
}

// k = 3 pure normal form (invariant under every root-choice ambiguity)
GermMap template_k3() {
    return germ_from({{1, 1, 2, 1, 0}, {2, 0, 3, 1, 0}, {2, 3, 0, 1, 0}}, 8);
}

double diff_through(const GermMap& a, const GermMap& b, int deg) {
    double m = 0;
    auto acc = [&](const TruncPoly2<cx>& p, const TruncPoly2<cx>& q) {
        for (int d = 0; d <= deg; ++d)
            for (int i = 0; i <= d; ++i)
                m = std::max(m, std::abs(p.get(i, d - i) - q.get(i, d - i)));
    };
    acc(a.comp1, b.comp1);
    acc(a.comp2, b.comp2);
    return m;
}

std::mt19937_64 rng(13577531);

Mat2 random_invertible() {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    while (true) {
        Mat2 m{cx(u(rng), u(rng)), cx(u(rng), u(rng)), cx(u(rng), u(rng)), cx(u(rng), u(rng))};
        if (std::abs(m.det()) > 0.3) return m;
    }
}

} // namespace

TEST_CASE("move_direction_to_vertical special cases") {
    auto g = abate111();
    auto dirs = characteristic_directions(g);
    auto [moved, A] = move_direction_to_vertical(g, dirs.dirs.front());
    CHECK(A.m00 == cx(1));
    CHECK(A.m01 == cx(0));
    CHECK(diff_through(moved, g, 6) == 0.0);

    // swap: a germ with unique direction [1:0]
    auto swapped = germ_from({{2, 1, 1, 1, 0}, {1, 2, 0, 1, 0}, {1, 0, 2, 1, 0}}, 6);
    auto sd = characteristic_directions(swapped);
    REQUIRE(sd.dirs.size() == 1);
    CHECK(std::abs(sd.dirs.front().v0 - cx(1)) < 1e-12);
    auto [m2, A2] = move_direction_to_vertical(swapped, sd.dirs.front());
    CHECK(A2.m01 == cx(1));
    CHECK(A2.m10 == cx(1));
    auto md = characteristic_directions(m2);
    REQUIRE(md.dirs.size() == 1);
    CHECK(std::abs(md.dirs.front().v0) < 1e-12);
}

TEST_CASE("extract_Pk_structure") {
    auto s = extract_Pk_structure(abate111());
    REQUIRE(s.a.size() == 2);
    CHECK(std::abs(s.a[0]) < 1e-14);
    CHECK(std::abs(s.a[1] - cx(1)) < 1e-14);
    CHECK(std::abs(s.b0 - cx(1)) < 1e-14);

    // P2 = (x^2, y^2) violates the structural identities
    auto bad = germ_from({{1, 2, 0, 1, 0}, {2, 0, 2, 1, 0}}, 6);
    CHECK_THROWS_AS(extract_Pk_structure(bad), Error);

    // junk above degree k does not change the extraction
    auto junk = germ_from({{1, 1, 1, 1, 0}, {2, 0, 2, 1, 0}, {2, 2, 0, 1, 0}, {1, 3, 0, 4, 1}},
                          6);
    auto s2 = extract_Pk_structure(junk);
    CHECK(std::abs(s2.a[1] - cx(1)) < 1e-14);
    CHECK(std::abs(s2.b0 - cx(1)) < 1e-14);
}

TEST_CASE("solve_linear_params worked examples") {
    {
        auto r = solve_linear_params({cx(0), cx(1)}, cx(1), 2);
        CHECK(std::abs(r.d - cx(1)) < 1e-14);
        CHECK(std::abs(r.a - cx(1)) < 1e-14);
        CHECK(std::abs(r.c) < 1e-14);
    }
    {
        auto r = solve_linear_params({cx(0), cx(4)}, cx(1), 2);
        CHECK(std::abs(r.d - cx(0.25)) < 1e-14);
        CHECK(std::abs(r.a - cx(0.5)) < 1e-14);
        CHECK(std::abs(r.c) < 1e-14);
    }
    {
        auto r = solve_linear_params({cx(2), cx(1)}, cx(1), 2);
        CHECK(std::abs(r.d - cx(1)) < 1e-14);
        CHECK(std::abs(r.a - cx(1)) < 1e-14);
        CHECK(std::abs(r.c - cx(-2)) < 1e-12);
    }
}

TEST_CASE("normalize (1_11) is the identity pipeline") {
    auto n = normalize(abate111());
    CHECK(n.k == 2);
    CHECK(n.Rpoly.is_zero());
    CHECK(n.Ppart.is_zero());
    CHECK(n.Qpart.is_zero());
    CHECK(n.form_residual <= 1e-12);
    CHECK(diff_through(n.base, abate111(), 4) <= 1e-12);
    Mat2 T = n.conj.total();
    CHECK(std::abs(T.m00 - cx(1)) < 1e-12);
    CHECK(std::abs(T.m11 - cx(1)) < 1e-12);
    CHECK(std::abs(T.m01) + std::abs(T.m10) < 1e-12);
}

TEST_CASE("normalize recovers templates from random linear conjugates") {
    for (int trial = 0; trial < 12; ++trial) {
        GermMap T = (trial % 2) ? template_k3() : abate111();
        int k = (trial % 2) ? 3 : 2;
        Mat2 L = random_invertible();
        GermMap g = conjugate_linear(T, L);
        auto n = normalize(g);
        CHECK(n.k == k);
        CHECK(diff_through(n.base, T, 2 * k) <= 1e-9);
    }
}

TEST_CASE("conjugation recomposition reproduces the input germ") {
    for (int trial = 0; trial < 6; ++trial) {
        Mat2 L = random_invertible();
        GermMap g = conjugate_linear(abate111(), L);
        auto n = normalize(g);
        GermMap back = conjugate_linear(n.base, n.conj.total().inverse());
        CHECK(diff_through(back, g.widened(n.base.trunc_order), 4) <= 1e-9);
    }
}

TEST_CASE("normalize is idempotent up to unit choices") {
    Mat2 L = random_invertible();
    GermMap g = conjugate_linear(abate111(), L);
    auto n1 = normalize(g);
    auto n2 = normalize(n1.base);
    CHECK(diff_through(n2.base, n1.base, 4) <= 1e-9);

    auto m1 = normalize(conjugate_linear(template_k3(), random_invertible()));
    auto m2 = normalize(m1.base);
    CHECK(diff_through(m2.base, m1.base, 6) <= 1e-9);
}

TEST_CASE("k=3 germ already in canonical shape is a pipeline fixed point") {
    // (x + x y^2 + x^4, y + y^3 + x^3): P = x^4, Q = 0
    auto g = germ_from({{1, 1, 2, 1, 0}, {1, 4, 0, 1, 0}, {2, 0, 3, 1, 0}, {2, 3, 0, 1, 0}}, 8);
    auto n = normalize(g);
    CHECK(n.k == 3);
    CHECK(n.form_residual <= 1e-12);
    CHECK(diff_through(n.base, g, 8) <= 1e-12);
    CHECK(n.Qpart.is_zero());
    CHECK(std::abs(n.Ppart.get(4, 0) - cx(1)) <= 1e-12);

    // with R != 0: T = 0.3 x y + y^2
    auto gr = germ_from({{1, 2, 1, 0.3, 0}, {1, 1, 2, 1, 0},
                         {2, 1, 2, 0.3, 0}, {2, 0, 3, 1, 0}, {2, 3, 0, 1, 0}},
                        8);
    auto nr = normalize(gr);
    CHECK(nr.k == 3);
    CHECK(std::abs(nr.Rpoly.get(0, 0) - cx(0.3)) <= 1e-12);
    CHECK(diff_through(nr.base, gr, 8) <= 1e-12);
}

TEST_CASE("degree-k part of the normalized germ matches the exact template") {
    Mat2 L = random_invertible();
    auto n = normalize(conjugate_linear(template_k3(), L));
    int k = n.k;
    // coefficient of y^k in comp1 is 0, x^k in comp2 is 1, y^{k-1} pattern 1
    CHECK(n.base.comp1.get(0, k) == cx(0));
    CHECK(n.base.comp2.get(k, 0) == cx(1));
    CHECK(n.base.comp1.get(1, k - 1) == cx(1));
    CHECK(n.base.comp2.get(0, k) == cx(1));
}

TEST_CASE("quad precision mode agrees with double") {
    Mat2 L = random_invertible();
    GermMap g = conjugate_linear(template_k3(), L);
    auto nd = normalize(g, Precision::dbl);
    auto nq = normalize(g, Precision::quad);
    CHECK(diff_through(nd.base, nq.base, 6) <= 1e-11);
}

TEST_CASE("normalize rejects hypothesis failures") {
    auto bad = germ_from({{1, 2, 0, 1, 0}, {2, 0, 2, 1, 0}}, 6);
    try {
        normalize(bad);
        FAIL("expected hypothesis failure");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::hypothesis_failed);
    }
}
