#include "petal/germ.hpp"

#include <algorithm>
#include <cmath>

#include "petal/polyroots.hpp"

namespace petal {

namespace {

// one-variable helpers on dense coefficient vectors (index = power)
std::vector<cx> restrict_poly(const TruncPoly2<cx>& p, bool set_y_to_one) {
    std::vector<cx> c;
    for (auto& [k, v] : p.coeffs) {
        int pw = set_y_to_one ? k.first : k.second;
        if (static_cast<int>(c.size()) <= pw) c.resize(pw + 1, cx(0));
        c[pw] += v;
    }
    return c;
}

std::vector<cx> poly1_derivative(const std::vector<cx>& c) {
    if (c.size() <= 1) return {cx(0)};
    std::vector<cx> d(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) d[i - 1] = double(i) * c[i];
    return d;
}

cx poly1_eval(const std::vector<cx>& c, cx x) {
    cx s(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
    return s;
}

int poly1_degree(const std::vector<cx>& c, double tol) {
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
        if (std::abs(c[i]) > tol) return i;
    return -1;
}

} // namespace

GermMap GermMap::from_components(TruncPoly2<cx> c1, TruncPoly2<cx> c2, int trunc) {
    if (c1.get(0, 0) != cx(0) || c2.get(0, 0) != cx(0))
        throw Error(Errc::parse, "germ must fix the origin");
    if (c1.get(1, 0) != cx(1) || c1.get(0, 1) != cx(0) || c2.get(1, 0) != cx(0) ||
        c2.get(0, 1) != cx(1))
        throw Error(Errc::parse, "germ must be tangent to the identity (linear part = Id)");
    GermMap g;
    g.comp1 = std::move(c1);
    g.comp2 = std::move(c2);
    g.trunc_order = trunc;
    g.comp1.trunc_order = trunc;
    g.comp2.trunc_order = trunc;
    return g;
}

GermMap GermMap::widened(int trunc) const {
    GermMap g = *this;
    g.trunc_order = std::max(trunc, trunc_order);
    g.comp1.trunc_order = g.trunc_order;
    g.comp2.trunc_order = g.trunc_order;
    return g;
}

int order_of(const GermMap& g) {
    for (int d = 2; d <= g.trunc_order; ++d) {
        auto [p1, p2] = g.homogeneous_part(d);
        if (!p1.is_zero() || !p2.is_zero()) return d;
    }
    throw Error(Errc::identity_germ, "no nonzero homogeneous part P_j, 2 <= j <= " +
                                         std::to_string(g.trunc_order));
}

cx normalize_slot(cx& v0, cx& v1) {
    // larger-magnitude slot becomes 1; ties toward the second slot
    cx s = (std::abs(v0) > std::abs(v1)) ? v0 : v1;
    v0 /= s;
    v1 /= s;
    return s;
}

DirectionsReport characteristic_directions(const GermMap& g) {
    int k = order_of(g);
    auto [pk1, pk2] = g.homogeneous_part(k);

    // resultant-style homogeneous polynomial C(x,y) = x*Pk2 - y*Pk1, degree k+1
    TruncPoly2<cx> C(k + 1);
    for (auto& [key, c] : pk2.coeffs) C.add_term(key.first + 1, key.second, c);
    for (auto& [key, c] : pk1.coeffs) C.add_term(key.first, key.second + 1, -c);

    double pk_scale = std::max(pk1.max_abs(), pk2.max_abs());
    if (C.max_abs() <= 1e-14 * pk_scale)
        throw Error(Errc::every_direction_characteristic,
                    "x*Pk_2 - y*Pk_1 vanishes identically: every direction is characteristic");

    // coefficients of C(x, 1) as a polynomial in x
    std::vector<cx> p = restrict_poly(C, true);
    int deg = poly1_degree(p, 0.0);
    p.resize(deg + 1);

    DirectionsReport rep;
    bool ambiguous = false;
    double tol_lambda = 1e-10 * pk_scale;

    if (deg >= 1) {
        auto roots = poly_roots(p);
        auto clusters = cluster_roots(p, roots, 1e-2, &ambiguous);
        for (auto& [x, mult] : clusters) {
            CharDirection d;
            d.v0 = x;
            d.v1 = cx(1);
            normalize_slot(d.v0, d.v1);
            d.multiplicity = mult;
            rep.dirs.push_back(d);
        }
    }

    // multiplicity of [1:0] equals the degree drop of C(x, 1)
    int inf_mult = (k + 1) - deg;
    if (inf_mult > 0) {
        CharDirection d;
        d.v0 = cx(1);
        d.v1 = cx(0);
        d.multiplicity = inf_mult;
        rep.dirs.push_back(d);
    }

    rep.ill_conditioned_warning = ambiguous;

    // eigenvalue from the unit slot; degeneracy by scale-relative tolerance
    for (auto& d : rep.dirs) {
        cx val = (std::abs(d.v1) >= std::abs(d.v0)) ? pk2.eval<cx>(d.v0, d.v1)
                                                    : pk1.eval<cx>(d.v0, d.v1);
        d.lambda = val;
        d.degenerate = std::abs(d.lambda) <= tol_lambda;
        if (!d.degenerate) {
            d.director = director_of(g, d);
            d.director_valid = true;
        }
    }
    return rep;
}

cx director_of(const GermMap& g, const CharDirection& d) {
    if (d.degenerate)
        throw Error(Errc::not_applicable, "director is defined for non-degenerate directions");
    int k = order_of(g);
    auto [pk1, pk2] = g.homogeneous_part(k);

    bool chart_y = std::abs(d.v1) >= std::abs(d.v0); // d interior to {y != 0}
    // induced map on P^1 in the chart coordinate, as N/D
    std::vector<cx> N = restrict_poly(chart_y ? pk1 : pk2, chart_y);
    std::vector<cx> D = restrict_poly(chart_y ? pk2 : pk1, chart_y);
    cx x0 = chart_y ? d.v0 / d.v1 : d.v1 / d.v0;

    std::vector<cx> Np = poly1_derivative(N), Dp = poly1_derivative(D);
    cx n = poly1_eval(N, x0), dn = poly1_eval(Np, x0);
    cx dd = poly1_eval(D, x0), ddp = poly1_eval(Dp, x0);
    // quotient rule: (N/D)' = (N'D - ND')/D^2
    return (dn * dd - n * ddp) / (dd * dd) - cx(1);
}

HypothesisReport check_theoremA_hypothesis(const GermMap& g) {
    HypothesisReport rep;
    try {
        rep.k = order_of(g);
    } catch (const Error& e) {
        rep.reasons.push_back(e.what());
        return rep;
    }
    DirectionsReport dirs;
    try {
        dirs = characteristic_directions(g);
    } catch (const Error& e) {
        rep.reasons.push_back(e.what());
        return rep;
    }
    rep.direction_count = static_cast<int>(dirs.dirs.size());
    if (dirs.dirs.size() != 1) {
        rep.reasons.push_back("characteristic direction count is " +
                              std::to_string(dirs.dirs.size()) + ", need exactly 1");
        return rep;
    }
    rep.dir = dirs.dirs.front();
    if (rep.dir.degenerate) {
        rep.reasons.push_back("the unique characteristic direction is degenerate (lambda = 0)");
        return rep;
    }
    if (dirs.ill_conditioned_warning)
        rep.reasons.push_back("warning: ill-conditioned root clustering");
    rep.pass = true;
    return rep;
}

} // namespace petal
