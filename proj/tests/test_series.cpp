#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "petal/series.hpp"

using namespace petal;
using P2 = TruncPoly2<cx>;
using F1 = FracSeries1<cx>;
using F2 = FracSeries2<cx>;

namespace {

P2 parse_terms(std::initializer_list<std::tuple<int, int, double>> ts, int trunc) {
    P2 p(trunc);
    for (auto& [i, j, c] : ts) p.add_term(i, j, cx(c));
    return p;
}

// Independent dense-array oracle for polynomial products/composition.
std::vector<std::vector<cx>> dense(const P2& p, int n) {
    std::vector<std::vector<cx>> d(n + 1, std::vector<cx>(n + 1, cx(0)));
    for (auto& [k, c] : p.coeffs)
        if (k.first <= n && k.second <= n) d[k.first][k.second] = c;
    return d;
}

P2 dense_mul_oracle(const P2& a, const P2& b, int order) {
    auto da = dense(a, order), db = dense(b, order);
    P2 r(order);
    for (int i1 = 0; i1 <= order; ++i1)
        for (int j1 = 0; j1 <= order - i1; ++j1)
            for (int i2 = 0; i2 + i1 <= order; ++i2)
                for (int j2 = 0; j1 + j2 + i1 + i2 <= order; ++j2)
                    r.add_term(i1 + i2, j1 + j2, da[i1][j1] * db[i2][j2]);
    return r;
}

bool coeff_equal(const P2& a, const P2& b, double tol) {
    P2 d = a - b;
    return d.max_abs() <= tol;
}

std::mt19937_64 rng(20240611);

F1 random_int_series(int root, int trunc, int nterms) {
    std::uniform_int_distribution<int> mgen(0, trunc), cgen(-3, 3);
    F1 s(root, trunc);
    for (int t = 0; t < nterms; ++t) s.add_term(mgen(rng), cx(cgen(rng), cgen(rng)));
    return s;
}

} // namespace

TEST_CASE("poly_compose identity cases") {
    P2 f1 = parse_terms({{1, 0, 1}, {1, 1, 1}}, 6);
    P2 f2 = parse_terms({{0, 1, 1}, {0, 2, 1}, {2, 0, 1}}, 6);
    P2 id1 = parse_terms({{1, 0, 1}}, 6);
    P2 id2 = parse_terms({{0, 1, 1}}, 6);

    std::pair<P2, P2> F{f1, f2}, I{id1, id2};
    auto r = compose(F, I, 6);
    CHECK(coeff_equal(r.first, f1, 0.0));
    CHECK(coeff_equal(r.second, f2, 0.0));

    auto r2 = compose(I, F, 6);
    CHECK(coeff_equal(r2.first, f1, 0.0));
    CHECK(coeff_equal(r2.second, f2, 0.0));
}

TEST_CASE("poly_compose order-2 example against expansion oracle") {
    P2 f1 = parse_terms({{1, 0, 1}, {1, 1, 1}}, 6);
    P2 f2 = parse_terms({{0, 1, 1}, {0, 2, 1}, {2, 0, 1}}, 6);
    P2 g1 = parse_terms({{1, 0, 1}}, 6);
    P2 g2 = parse_terms({{1, 0, 1}, {0, 1, 1}}, 6);

    std::pair<P2, P2> F{f1, f2}, G{g1, g2};
    auto r = compose(F, G, 2);
    // first component: x + x(x+y) = x + x^2 + xy
    P2 want = parse_terms({{1, 0, 1}, {2, 0, 1}, {1, 1, 1}}, 2);
    CHECK(coeff_equal(r.first, want, 0.0));
}

TEST_CASE("poly_compose rejects order beyond available truncation") {
    std::pair<P2, P2> f{parse_terms({{1, 0, 1}}, 3), parse_terms({{0, 1, 1}}, 3)};
    CHECK_THROWS_AS(compose(f, f, 4), Error);
}

TEST_CASE("poly mul matches dense oracle on random inputs") {
    std::uniform_int_distribution<int> deg(0, 5), coef(-4, 4);
    for (int trial = 0; trial < 25; ++trial) {
        P2 a(8), b(8);
        for (int t = 0; t < 6; ++t) {
            a.add_term(deg(rng), deg(rng), cx(coef(rng), coef(rng)));
            b.add_term(deg(rng), deg(rng), cx(coef(rng), coef(rng)));
        }
        CHECK(coeff_equal(mul(a, b, 7), dense_mul_oracle(a, b, 7), 0.0));
    }
}

TEST_CASE("FracSeries1 ring axioms are exact on integer coefficients") {
    for (int trial = 0; trial < 40; ++trial) {
        F1 a = random_int_series(2, 9, 5);
        F1 b = random_int_series(2, 9, 5);
        F1 c = random_int_series(2, 9, 5);

        F1 lhs = mul(mul(a, b), c);
        F1 rhs = mul(a, mul(b, c));
        CHECK(lhs.coeffs == rhs.coeffs);
        CHECK(lhs.trunc_m == rhs.trunc_m);

        F1 d1 = mul(a, b + c);
        F1 d2 = mul(a, b) + mul(a, c);
        // distributivity holds on the common validity range
        int t = std::min(d1.trunc_m, d2.trunc_m);
        CHECK(d1.truncated(t).coeffs == d2.truncated(t).coeffs);
    }
}

TEST_CASE("reciprocal geometric-series example and inverse property") {
    F1 a(1, 3);
    a.set(0, cx(1));
    a.set(1, cx(1));
    F1 r = reciprocal(a);
    CHECK(r.get(0) == cx(1));
    CHECK(r.get(1) == cx(-1));
    CHECK(r.get(2) == cx(1));
    CHECK(r.get(3) == cx(-1));

    F1 prod = mul(r, a);
    CHECK(prod.get(0) == cx(1));
    for (int m = 1; m <= prod.trunc_m; ++m) CHECK(prod.get(m) == cx(0));

    for (int trial = 0; trial < 20; ++trial) {
        F1 s = random_int_series(3, 8, 4);
        s.set(0, cx(1));
        F1 p = mul(reciprocal(s), s);
        CHECK(abs(p.get(0) - cx(1)) == 0.0);
        double resid = 0;
        for (auto& [m, c] : p.coeffs)
            if (m > 0) resid = std::max(resid, abs(c));
        CHECK(resid <= 1e-12);
    }
}

TEST_CASE("fracpow binomial example (1+1/z)^(1/2)") {
    F1 a(1, 2);
    a.set(0, cx(1));
    a.set(1, cx(1));
    F1 r = fracpow(a, 1, 2);
    CHECK(r.get(0) == cx(1));
    CHECK(r.get(1) == cx(0.5));
    CHECK(r.get(2) == cx(-0.125));
}

TEST_CASE("fracpow(a,p/q)^q equals a^p through truncation") {
    for (int trial = 0; trial < 10; ++trial) {
        F1 a = random_int_series(2, 7, 4);
        a.set(0, cx(1));
        long p = 1 + (trial % 3), q = 2 + (trial % 2);
        F1 r = fracpow(a, p, q);
        F1 rq = F1::constant(cx(1), 2, 7);
        for (long i = 0; i < q; ++i) rq = mul(rq, r);
        F1 ap = F1::constant(cx(1), 2, 7);
        for (long i = 0; i < p; ++i) ap = mul(ap, a);
        F1 diff = rq - ap;
        CHECK(diff.max_abs() <= 1e-11);
    }
}

TEST_CASE("series_mul fractional-exponent example") {
    F1 a(2, 4), b(2, 4);
    a.set(0, cx(1));
    a.set(1, cx(2)); // 1 + 2 z^(-1/2)
    b.set(0, cx(1));
    b.set(1, cx(-1)); // 1 - z^(-1/2)
    F1 p = mul(a, b);
    CHECK(p.get(0) == cx(1));
    CHECK(p.get(1) == cx(1));
    CHECK(p.get(2) == cx(-2));
}

TEST_CASE("rebase to lcm is exponent-exact") {
    F1 a(2, 4);
    a.set(1, cx(3)); // 3 z^(-1/2)
    F1 b(3, 6);
    b.set(1, cx(5)); // 5 z^(-1/3)
    F1 s = a + b;
    CHECK(s.base_root == 6);
    CHECK(s.get(3) == cx(3));
    CHECK(s.get(2) == cx(5));
}

TEST_CASE("numeric consistency of eval against closed form at z = 1e6") {
    // (1 + 1/z)^(1/2), truncated: relative error bounded by 10x the first
    // dropped term.
    F1 a(1, 6);
    a.set(0, cx(1));
    a.set(1, cx(1));
    F1 r = fracpow(a, 1, 2);
    cx z(1e6, 0.0);
    cx approx = r.eval(z);
    cx exact = sqrt(cx(1) + cx(1) / z);
    // first truncated term: C(1/2,7) z^-7
    double c7 = std::abs(0.5 * (0.5 - 1) * (0.5 - 2) * (0.5 - 3) * (0.5 - 4) * (0.5 - 5) * (0.5 - 6) /
                         5040.0);
    double bound = 10.0 * c7 * std::pow(1e6, -7.0);
    CHECK(abs(approx - exact) / abs(exact) <= bound + 1e-18);

    // base_root 2 variant: (1 + z^(-1/2))^(-1) against 1/(1 + z^(-1/2));
    // the truncation is kept short so its error dominates roundoff
    F1 g(2, 3);
    g.set(0, cx(1));
    g.set(1, cx(1));
    F1 rg = reciprocal(g);
    cx t = exp(-log(z) / 2.0);
    cx exact2 = cx(1) / (cx(1) + t);
    double first_dropped = std::pow(std::abs(t), 4.0);
    CHECK(abs(rg.eval(z) - exact2) / abs(exact2) <= 10.0 * first_dropped);
}

TEST_CASE("integrate matches closed forms including the log term") {
    F1 s(1, 5);
    s.set(0, cx(2));  // 2
    s.set(1, cx(3));  // 3/z
    s.set(2, cx(-1)); // -1/z^2
    cx z1(2, 0), z2(5, 0);
    cx got = s.integrate(z1, z2);
    cx want = cx(2) * (z2 - z1) + cx(3) * (log(z2) - log(z1)) + (cx(1) / z2 - cx(1) / z1);
    CHECK(abs(got - want) <= 1e-14);
}

TEST_CASE("FracSeries2 arithmetic is consistent with pointwise evaluation") {
    F2 a(2, 1, 8, 4);
    a.add_term(0, 0, cx(1));
    a.add_term(1, 0, cx(0.25));
    a.add_term(2, 1, cx(-0.5));
    a.add_term(0, 2, cx(0.125, 0.25));

    cx u(40, 3), v(2e4, 1e3);
    cx av = a.eval(u, v);

    F2 sq = mul(a, a);
    CHECK(abs(sq.eval(u, v) - av * av) <= 1e-12 * abs(av * av));

    F2 inv = reciprocal(a);
    CHECK(abs(inv.eval(u, v) - cx(1) / av) <= 1e-9 * abs(cx(1) / av));

    F2 pw = fracpow(a, -3, 2);
    cx want = exp(cx(-1.5) * log(av));
    CHECK(abs(pw.eval(u, v) - want) <= 1e-8 * abs(want));
}

TEST_CASE("FracSeries2 v-shift bookkeeping") {
    F2 a(2, 2, 6, 6);
    a.add_term(0, 3, cx(4));
    F2 up = a.shifted_v(-2);
    CHECK(up.get(0, 1) == cx(4));
    CHECK(up.trunc_n == 4);
    CHECK_THROWS_AS(a.shifted_v(-4), Error);
}

TEST_CASE("canonical sparse form stores no exact zeros") {
    F1 a(1, 5);
    a.set(2, cx(3));
    a.add_term(2, cx(-3));
    CHECK(a.coeffs.empty());

    P2 p(5);
    p.add_term(1, 1, cx(2));
    p.add_term(1, 1, cx(-2));
    CHECK(p.coeffs.empty());
}
