#include "petal/normal_form.hpp"

#include <boost/multiprecision/cpp_complex.hpp>
#include <cmath>
#include <sstream>

#include "petal/polyroots.hpp"

namespace petal {

namespace {

using quad = boost::multiprecision::cpp_complex_50;

template <class C>
C to_scalar(cx z) {
    return C(z.real(), z.imag());
}

template <class C>
cx to_cx(const C& z) {
    return cx(static_cast<double>(z.real()), static_cast<double>(z.imag()));
}

template <class C>
TruncPoly2<C> lift(const TruncPoly2<cx>& p) {
    TruncPoly2<C> r(p.trunc_order);
    for (auto& [k, c] : p.coeffs) r.coeffs[k] = to_scalar<C>(c);
    return r;
}

template <class C>
TruncPoly2<cx> lower(const TruncPoly2<C>& p) {
    TruncPoly2<cx> r(p.trunc_order);
    for (auto& [k, c] : p.coeffs) r.set(k.first, k.second, to_cx(c));
    return r;
}

template <class C>
struct Mat2T {
    C m00, m01, m10, m11;
    Mat2T inverse() const {
        C d = m00 * m11 - m01 * m10;
        return {m11 / d, -m01 / d, -m10 / d, m00 / d};
    }
};

// M^{-1} o g o M on component pairs, exact through `order`.
template <class C>
std::pair<TruncPoly2<C>, TruncPoly2<C>> conj_by_matrix(
    const std::pair<TruncPoly2<C>, TruncPoly2<C>>& g, const Mat2T<C>& M, int order) {
    std::pair<TruncPoly2<C>, TruncPoly2<C>> mpoly{TruncPoly2<C>(kTruncInf),
                                                  TruncPoly2<C>(kTruncInf)};
    mpoly.first.set(1, 0, M.m00);
    mpoly.first.set(0, 1, M.m01);
    mpoly.second.set(1, 0, M.m10);
    mpoly.second.set(0, 1, M.m11);
    auto inner = compose(g, mpoly, order);
    Mat2T<C> inv = M.inverse();
    std::pair<TruncPoly2<C>, TruncPoly2<C>> r{TruncPoly2<C>(order), TruncPoly2<C>(order)};
    r.first = scale(inner.first, inv.m00) + scale(inner.second, inv.m01);
    r.second = scale(inner.first, inv.m10) + scale(inner.second, inv.m11);
    return r;
}

template <class C>
C poly1_eval(const std::vector<C>& c, C x) {
    C s(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
    return s;
}

template <class C>
std::vector<C> poly1_derivative(const std::vector<C>& c) {
    std::vector<C> d(c.size() > 1 ? c.size() - 1 : 1, C(0));
    for (size_t i = 1; i < c.size(); ++i) d[i - 1] = C(double(i)) * c[i];
    return d;
}

// Newton on p^(mult-1): multiple roots are recovered to working precision.
template <class C>
C polish_root(std::vector<C> p, C x, int mult) {
    for (int d = 1; d < mult && p.size() > 1; ++d) p = poly1_derivative(p);
    std::vector<C> dp = poly1_derivative(p);
    for (int it = 0; it < 80; ++it) {
        C f = poly1_eval(p, x), df = poly1_eval(dp, x);
        if (df == C(0)) break;
        C step = f / df;
        x -= step;
        if (abs(step) <= 1e-40 * (1.0 + static_cast<double>(abs(x)))) break;
    }
    return x;
}

template <class C>
C principal_root(C z, int r) {
    return exp(log(z) / C(double(r)));
}

struct SolveResultCx {
    cx a, c, d;
    std::string log;
};

template <class C>
SolveResultCx solve_params_impl(const std::vector<cx>& aj_d, cx b0_d, int k) {
    std::vector<C> aj(aj_d.size());
    for (size_t i = 0; i < aj_d.size(); ++i) aj[i] = to_scalar<C>(aj_d[i]);
    C b0 = to_scalar<C>(b0_d);

    if (abs(aj.back()) == 0.0) throw Error(Errc::not_unique_direction, "a_{k-1} vanishes");
    if (abs(b0) == 0.0) throw Error(Errc::not_unique_direction, "b_0 vanishes");

    C d = principal_root(C(1) / aj.back(), k - 1);
    C a = principal_root(d / b0, k);

    // condition (3): polynomial in c with leading coefficient a_{k-1} != 0
    std::vector<C> q(k);
    for (int j = 0; j < k; ++j) {
        C apow(1);
        for (int t = 0; t < k - 1 - j; ++t) apow *= a;
        q[j] = aj[j] * apow;
    }
    C c(0);
    std::string c_note = "c = 0 (k = 1 degenerate case)";
    if (k >= 2) {
        std::vector<cx> qd(q.size());
        for (size_t i = 0; i < q.size(); ++i) qd[i] = to_cx(q[i]);
        auto roots = poly_roots(qd);
        auto clusters = cluster_roots(qd, roots, 1e-4, nullptr);
        // minimal magnitude, ties toward smallest principal argument
        auto best = clusters.front();
        for (auto& cl : clusters) {
            double mr = std::abs(cl.first), mb = std::abs(best.first);
            if (mr < mb * (1 - 1e-9))
                best = cl;
            else if (mr <= mb * (1 + 1e-9) && std::arg(cl.first) < std::arg(best.first) - 1e-15)
                best = cl;
        }
        c = polish_root(q, to_scalar<C>(best.first), best.second);
        std::ostringstream os;
        os << "c: min-|c| root of the degree-" << (k - 1) << " condition (multiplicity "
           << best.second << ")";
        c_note = os.str();
    }

    // re-verify all three conditions
    C apk(1);
    for (int t = 0; t < k; ++t) apk *= a;
    C dk(1);
    for (int t = 0; t < k - 1; ++t) dk *= d;
    double r1 = static_cast<double>(abs(b0 * apk / d - C(1)));
    double r2 = static_cast<double>(abs(aj.back() * dk - C(1)));
    double r3 = static_cast<double>(abs(poly1_eval(q, c)));
    double scale3 = 1.0;
    for (size_t j = 0; j < q.size(); ++j)
        scale3 += static_cast<double>(abs(q[j])) * std::pow(std::abs(to_cx(c)) + 1.0, double(j));
    if (r1 > 1e-12 || r2 > 1e-12 || r3 > 1e-12 * scale3)
        throw Error(Errc::not_unique_direction,
                    "linear-parameter conditions failed re-verification");

    SolveResultCx out;
    out.a = to_cx(a);
    out.c = to_cx(c);
    out.d = to_cx(d);
    std::ostringstream os;
    os << "d: principal " << (k - 1) << "-th root; a: principal " << k << "-th root; " << c_note;
    out.log = os.str();
    return out;
}

PkStructure extract_impl(const TruncPoly2<cx>& pk1, const TruncPoly2<cx>& pk2, int k) {
    double tol = 1e-10 * std::max({pk1.max_abs(), pk2.max_abs(), 1e-300});
    auto a_of = [&](int j) { return pk1.get(k - j, j); };
    auto b_of = [&](int j) { return pk2.get(k - j, j); };

    if (std::abs(a_of(k)) > tol)
        throw Error(Errc::not_unique_direction, "a_k != 0: [0:1] not characteristic");
    if (std::abs(b_of(k)) <= tol)
        throw Error(Errc::not_unique_direction, "b_k = 0: direction structure violated");
    if (std::abs(b_of(0)) <= tol)
        throw Error(Errc::not_unique_direction, "b_0 = 0: direction not unique");
    for (int j = 1; j <= k; ++j)
        if (std::abs(a_of(j - 1) - b_of(j)) > tol)
            throw Error(Errc::not_unique_direction,
                        "pairing a_{j-1} = b_j fails at j = " + std::to_string(j));

    PkStructure s;
    s.a.resize(k);
    for (int j = 0; j < k - 1; ++j) s.a[j] = a_of(j);
    s.a[k - 1] = b_of(k); // a_{k-1} = b_k, read from the slot checked nonzero
    s.b0 = b_of(0);
    return s;
}

template <class C>
NormalGerm normalize_impl(const GermMap& g_in) {
    HypothesisReport hyp = check_theoremA_hypothesis(g_in);
    if (!hyp.pass) {
        std::string why;
        for (auto& r : hyp.reasons) why += (why.empty() ? "" : "; ") + r;
        throw Error(Errc::hypothesis_failed, why);
    }
    int k = hyp.k;
    int work = std::max(g_in.trunc_order, 2 * k + 2);
    GermMap g = g_in.widened(work);

    auto [moved, A] = move_direction_to_vertical(g, hyp.dir);
    auto [mk1, mk2] = moved.homogeneous_part(k);
    PkStructure pks = extract_impl(mk1, mk2, k);
    SolveResultCx lp = solve_params_impl<C>(pks.a, pks.b0, k);

    // conjugate by l in the working precision
    Mat2T<C> L{to_scalar<C>(lp.a), C(0), to_scalar<C>(lp.c), to_scalar<C>(lp.d)};
    auto base_raw = conj_by_matrix<C>({lift<C>(moved.comp1), lift<C>(moved.comp2)}, L, work);
    TruncPoly2<cx> b1 = lower(base_raw.first), b2 = lower(base_raw.second);

    double scale_k = std::max(1.0, std::max(b1.homogeneous_part(k).max_abs(),
                                            b2.homogeneous_part(k).max_abs()));

    // ---- snap to the exact template, tracking every dropped/adjusted unit ----
    double res = 0;
    auto force = [&](TruncPoly2<cx>& p, int i, int j, cx want) {
        res = std::max(res, std::abs(p.get(i, j) - want));
        p.set(i, j, want);
    };

    force(b1, 0, 0, cx(0));
    force(b2, 0, 0, cx(0));
    force(b1, 1, 0, cx(1));
    force(b1, 0, 1, cx(0));
    force(b2, 1, 0, cx(0));
    force(b2, 0, 1, cx(1));
    for (int d = 2; d < k; ++d)
        for (int i = 0; i <= d; ++i) {
            force(b1, i, d - i, cx(0));
            force(b2, i, d - i, cx(0));
        }

    // Degree-k template: comp1 = x T, comp2 = y T + x^k with T = x y R + y^{k-1}.
    // R is read off comp1; comp2 must then agree with the same T.
    TruncPoly2<cx> R(std::max(k - 3, 0));
    if (k >= 3) {
        for (auto& [key, c] : b1.homogeneous_part(k).coeffs) {
            auto [i, j] = key;
            if (i >= 2 && j >= 1) R.set(i - 2, j - 1, c); // x * (x y R) slot
        }
    }
    TruncPoly2<cx> T(k - 1);
    T.set(0, k - 1, cx(1));
    for (auto& [key, c] : R.coeffs) T.set(key.first + 1, key.second + 1, c);

    for (int i = 0; i <= k; ++i) {
        int j = k - i;
        cx want1 = (i >= 1) ? T.get(i - 1, j) : cx(0);
        cx want2 = (j >= 1) ? T.get(i, j - 1) : cx(0);
        if (i == k) want2 += cx(1); // + x^k
        force(b1, i, j, want1);
        force(b2, i, j, want2);
    }

    if (res > 1e-9 * scale_k)
        throw Error(Errc::not_unique_direction,
                    "normal-form residual " + std::to_string(res) + " exceeds tolerance");

    NormalGerm out;
    out.k = k;
    out.base = GermMap::from_components(b1, b2, work);
    out.Rpoly = R;
    out.form_residual = res;
    out.conj.move_dir = A;
    out.conj.la = lp.a;
    out.conj.lc = lp.c;
    out.conj.ld = lp.d;
    out.conj.choice_log = lp.log;

    out.Ppart = TruncPoly2<cx>(work);
    out.Qpart = TruncPoly2<cx>(work);
    for (auto& [key, c] : out.base.comp1.coeffs)
        if (key.first + key.second >= k + 1) out.Ppart.set(key.first, key.second, c);
    for (auto& [key, c] : out.base.comp2.coeffs)
        if (key.first + key.second >= k + 1) out.Qpart.set(key.first, key.second, c);
    return out;
}

} // namespace

GermMap conjugate_linear(const GermMap& g, const Mat2& M) {
    Mat2T<cx> m{M.m00, M.m01, M.m10, M.m11};
    auto r = conj_by_matrix<cx>({g.comp1, g.comp2}, m, g.trunc_order);
    double slack = std::max({std::abs(r.first.get(1, 0) - cx(1)), std::abs(r.first.get(0, 1)),
                             std::abs(r.second.get(0, 1) - cx(1)), std::abs(r.second.get(1, 0)),
                             std::abs(r.first.get(0, 0)), std::abs(r.second.get(0, 0))});
    if (slack > 1e-9)
        throw Error(Errc::parse, "linear conjugation lost tangency to the identity");
    r.first.set(1, 0, cx(1));
    r.first.set(0, 1, cx(0));
    r.first.set(0, 0, cx(0));
    r.second.set(0, 1, cx(1));
    r.second.set(1, 0, cx(0));
    r.second.set(0, 0, cx(0));
    return GermMap::from_components(std::move(r.first), std::move(r.second), g.trunc_order);
}

std::pair<GermMap, Mat2> move_direction_to_vertical(const GermMap& g, const CharDirection& d) {
    Mat2 A;
    if (d.v0 == cx(0)) {
        A = Mat2{}; // already [0:1]
    } else if (d.v1 == cx(0)) {
        A = Mat2{cx(0), cx(1), cx(1), cx(0)}; // coordinate swap
    } else {
        A = Mat2{std::conj(d.v1), d.v0, -std::conj(d.v0), d.v1};
    }
    return {conjugate_linear(g, A), A};
}

PkStructure extract_Pk_structure(const GermMap& g) {
    int k = order_of(g);
    auto [pk1, pk2] = g.homogeneous_part(k);
    return extract_impl(pk1, pk2, k);
}

LinearParams solve_linear_params(const std::vector<cx>& aj, cx b0, int k) {
    auto r = solve_params_impl<cx>(aj, b0, k);
    return {r.a, r.c, r.d, r.log};
}

NormalGerm normalize(const GermMap& g, Precision prec) {
    if (prec == Precision::quad) return normalize_impl<quad>(g);
    return normalize_impl<cx>(g);
}

} // namespace petal
