#pragma once

// Exact-coefficient truncated series arithmetic:
//   TruncPoly2  - bivariate polynomials truncated by total degree
//   FracSeries1 - series in z^(-1/r) with nonnegative exponent numerators
//   FracSeries2 - series in v^(-1/rv) whose coefficients are FracSeries1 in u
//
// All types are immutable in spirit: operations return new values, stored
// coefficients are pruned at exactly zero (no epsilon pruning), and the
// trunc_* members track through which order the coefficients are exact.

#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "petal/common.hpp"

namespace petal {

// Sentinel for "exact at every order" (polynomials, exact zeros).
inline constexpr int kTruncInf = 1 << 28;

namespace detail {
inline int trunc_add(int a, int b) {
    long s = static_cast<long>(a) + static_cast<long>(b);
    return s >= kTruncInf ? kTruncInf : static_cast<int>(s);
}
} // namespace detail

// ---------------------------------------------------------------------------
// TruncPoly2

template <class C>
struct TruncPoly2 {
    using Key = std::pair<int, int>; // (i, j): coefficient of x^i y^j
    std::map<Key, C> coeffs;
    int trunc_order = kTruncInf;

    TruncPoly2() = default;
    explicit TruncPoly2(int trunc) : trunc_order(trunc) {}

    bool is_zero() const { return coeffs.empty(); }

    C get(int i, int j) const {
        auto it = coeffs.find({i, j});
        return it == coeffs.end() ? C(0) : it->second;
    }

    void set(int i, int j, C c) {
        if (i < 0 || j < 0)
            throw Error(Errc::parse, "negative exponent in TruncPoly2");
        if (i + j > trunc_order) return;
        if (c == C(0))
            coeffs.erase({i, j});
        else
            coeffs[{i, j}] = c;
    }

    void add_term(int i, int j, C c) { set(i, j, get(i, j) + c); }

    int max_degree() const {
        int d = 0;
        for (auto& [k, c] : coeffs) d = std::max(d, k.first + k.second);
        return d;
    }

    // Smallest total degree of a stored term; kTruncInf when zero.
    int min_degree() const {
        int d = kTruncInf;
        for (auto& [k, c] : coeffs) d = std::min(d, k.first + k.second);
        return d;
    }

    TruncPoly2 truncated(int order) const {
        TruncPoly2 r(std::min(order, trunc_order));
        for (auto& [k, c] : coeffs)
            if (k.first + k.second <= order) r.coeffs[k] = c;
        r.trunc_order = std::min(order, trunc_order);
        return r;
    }

    TruncPoly2 homogeneous_part(int d) const {
        TruncPoly2 r(trunc_order);
        for (auto& [k, c] : coeffs)
            if (k.first + k.second == d) r.coeffs[k] = c;
        return r;
    }

    template <class E>
    E eval(E x, E y) const {
        // Power tables keep germ evaluation cheap on orbit hot paths.
        int dx = 0, dy = 0;
        for (auto& [k, c] : coeffs) {
            dx = std::max(dx, k.first);
            dy = std::max(dy, k.second);
        }
        std::vector<E> xp(dx + 1), yp(dy + 1);
        xp[0] = E(1);
        yp[0] = E(1);
        for (int i = 1; i <= dx; ++i) xp[i] = xp[i - 1] * x;
        for (int j = 1; j <= dy; ++j) yp[j] = yp[j - 1] * y;
        E s(0);
        for (auto& [k, c] : coeffs)
            s += E(static_cast<typename E::value_type>(c.real()),
                   static_cast<typename E::value_type>(c.imag())) *
                 xp[k.first] * yp[k.second];
        return s;
    }

    double max_abs() const {
        double m = 0;
        for (auto& [k, c] : coeffs) m = std::max(m, static_cast<double>(abs(c)));
        return m;
    }
};

template <class C>
TruncPoly2<C> operator+(const TruncPoly2<C>& a, const TruncPoly2<C>& b) {
    TruncPoly2<C> r(std::min(a.trunc_order, b.trunc_order));
    for (auto& [k, c] : a.coeffs)
        if (k.first + k.second <= r.trunc_order) r.coeffs[k] = c;
    for (auto& [k, c] : b.coeffs) r.add_term(k.first, k.second, c);
    return r;
}

template <class C>
TruncPoly2<C> operator-(const TruncPoly2<C>& a, const TruncPoly2<C>& b) {
    TruncPoly2<C> r(std::min(a.trunc_order, b.trunc_order));
    for (auto& [k, c] : a.coeffs)
        if (k.first + k.second <= r.trunc_order) r.coeffs[k] = c;
    for (auto& [k, c] : b.coeffs) r.add_term(k.first, k.second, -c);
    return r;
}

template <class C>
TruncPoly2<C> scale(const TruncPoly2<C>& a, C s) {
    TruncPoly2<C> r(a.trunc_order);
    if (s == C(0)) return r;
    for (auto& [k, c] : a.coeffs) r.coeffs[k] = c * s;
    return r;
}

template <class C>
TruncPoly2<C> mul(const TruncPoly2<C>& a, const TruncPoly2<C>& b, int order) {
    TruncPoly2<C> r(order);
    for (auto& [ka, ca] : a.coeffs) {
        int da = ka.first + ka.second;
        if (da > order) continue;
        for (auto& [kb, cb] : b.coeffs) {
            if (da + kb.first + kb.second > order) continue;
            r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
        }
    }
    return r;
}

// f (pair) composed with g (pair), exact through total degree `order`.
// g must fix the origin (no constant terms), otherwise truncation by total
// degree would not commute with substitution.
template <class C>
std::pair<TruncPoly2<C>, TruncPoly2<C>> compose(const std::pair<TruncPoly2<C>, TruncPoly2<C>>& f,
                                                const std::pair<TruncPoly2<C>, TruncPoly2<C>>& g,
                                                int order) {
    int avail = std::min(std::min(f.first.trunc_order, f.second.trunc_order),
                         std::min(g.first.trunc_order, g.second.trunc_order));
    if (order > avail)
        throw Error(Errc::truncation_underflow,
                    "compose order " + std::to_string(order) + " exceeds available truncation " +
                        std::to_string(avail));
    if (g.first.get(0, 0) != C(0) || g.second.get(0, 0) != C(0))
        throw Error(Errc::parse, "compose: inner map must fix the origin");

    int di = 0, dj = 0;
    for (auto* fc : {&f.first, &f.second})
        for (auto& [k, c] : fc->coeffs) {
            di = std::max(di, k.first);
            dj = std::max(dj, k.second);
        }
    std::vector<TruncPoly2<C>> g1p(di + 1, TruncPoly2<C>(order)), g2p(dj + 1, TruncPoly2<C>(order));
    g1p[0].set(0, 0, C(1));
    g2p[0].set(0, 0, C(1));
    for (int i = 1; i <= di; ++i) g1p[i] = mul(g1p[i - 1], g.first, order);
    for (int j = 1; j <= dj; ++j) g2p[j] = mul(g2p[j - 1], g.second, order);

    std::pair<TruncPoly2<C>, TruncPoly2<C>> r{TruncPoly2<C>(order), TruncPoly2<C>(order)};
    auto accumulate = [&](const TruncPoly2<C>& fc, TruncPoly2<C>& out) {
        for (auto& [k, c] : fc.coeffs) {
            if (k.first + k.second > order) continue; // g has no constant term
            TruncPoly2<C> term = mul(g1p[k.first], g2p[k.second], order);
            for (auto& [kt, ct] : term.coeffs) out.add_term(kt.first, kt.second, c * ct);
        }
    };
    accumulate(f.first, r.first);
    accumulate(f.second, r.second);
    return r;
}

// ---------------------------------------------------------------------------
// FracSeries1: sum of c_m * z^(-m/r), m >= 0.

template <class C>
struct FracSeries1 {
    int base_root = 1; // r
    int trunc_m = kTruncInf;
    std::map<int, C> coeffs; // m -> c_m

    FracSeries1() = default;
    FracSeries1(int root, int trunc) : base_root(root), trunc_m(trunc) {
        if (root <= 0) throw Error(Errc::parse, "base_root must be positive");
    }

    static FracSeries1 constant(C c, int root, int trunc) {
        FracSeries1 s(root, trunc);
        s.set(0, c);
        return s;
    }

    bool is_zero() const { return coeffs.empty(); }

    C get(int m) const {
        auto it = coeffs.find(m);
        return it == coeffs.end() ? C(0) : it->second;
    }

    void set(int m, C c) {
        if (m < 0) throw Error(Errc::parse, "negative exponent numerator in FracSeries1");
        if (m > trunc_m) return;
        if (c == C(0))
            coeffs.erase(m);
        else
            coeffs[m] = c;
    }

    void add_term(int m, C c) { set(m, get(m) + c); }

    int min_m() const { return coeffs.empty() ? kTruncInf : coeffs.begin()->first; }

    FracSeries1 truncated(int m) const {
        FracSeries1 r(base_root, std::min(m, trunc_m));
        for (auto& [e, c] : coeffs)
            if (e <= r.trunc_m) r.coeffs[e] = c;
        return r;
    }

    // Exponent-exact rebase to a base root that is a multiple of base_root.
    FracSeries1 rebased(int new_root) const {
        if (new_root == base_root) return *this;
        if (new_root % base_root != 0)
            throw Error(Errc::parse, "rebase target must be a multiple of base_root");
        int f = new_root / base_root;
        FracSeries1 r(new_root, trunc_m >= kTruncInf / 2 ? kTruncInf
                                                         : (trunc_m + 1) * f - 1);
        for (auto& [m, c] : coeffs) r.coeffs[m * f] = c;
        return r;
    }

    // Multiply by z^(-s/r); s may be negative if all exponents stay >= 0.
    FracSeries1 shifted(int s) const {
        FracSeries1 r(base_root, detail::trunc_add(trunc_m, s));
        for (auto& [m, c] : coeffs) {
            if (m + s < 0) throw Error(Errc::parse, "shift would create a positive power");
            r.coeffs[m + s] = c;
        }
        return r;
    }

    // Principal-branch evaluation: z^(-1/r) := exp(-Log(z)/r).
    // Horner over the sparse exponent ladder, highest exponent first.
    C eval(C z) const {
        if (coeffs.empty()) return C(0);
        C t = exp(-log(z) / C(double(base_root)));
        C s(0);
        int prev = -1;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
            if (prev < 0)
                s = it->second;
            else
                s = s * pow_int(t, prev - it->first) + it->second;
            prev = it->first;
        }
        if (prev > 0) s = s * pow_int(t, prev);
        return s;
    }

    // term-wise antiderivative evaluated between endpoints, principal branches
    //   int z^(-m/r) dz = z^(1-m/r)/(1-m/r)   (m != r),   log z  (m == r).
    C integrate(C z_from, C z_to) const {
        C total(0);
        for (auto& [m, c] : coeffs) {
            if (m == base_root) {
                total += c * (log(z_to) - log(z_from));
            } else {
                C e = C(1) - C(double(m)) / C(double(base_root));
                total += c * (exp(e * log(z_to)) - exp(e * log(z_from))) / e;
            }
        }
        return total;
    }

    double max_abs() const {
        double r = 0;
        for (auto& [m, c] : coeffs) r = std::max(r, static_cast<double>(abs(c)));
        return r;
    }

private:
    static C pow_int(C b, int e) {
        C r(1);
        while (e > 0) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }
};

namespace detail {
template <class C>
void align(FracSeries1<C>& a, FracSeries1<C>& b) {
    int l = std::lcm(a.base_root, b.base_root);
    a = a.rebased(l);
    b = b.rebased(l);
}
} // namespace detail

template <class C>
FracSeries1<C> operator+(FracSeries1<C> a, FracSeries1<C> b) {
    detail::align(a, b);
    FracSeries1<C> r(a.base_root, std::min(a.trunc_m, b.trunc_m));
    for (auto& [m, c] : a.coeffs)
        if (m <= r.trunc_m) r.coeffs[m] = c;
    for (auto& [m, c] : b.coeffs) r.add_term(m, c);
    return r;
}

template <class C>
FracSeries1<C> operator-(FracSeries1<C> a, FracSeries1<C> b) {
    detail::align(a, b);
    FracSeries1<C> r(a.base_root, std::min(a.trunc_m, b.trunc_m));
    for (auto& [m, c] : a.coeffs)
        if (m <= r.trunc_m) r.coeffs[m] = c;
    for (auto& [m, c] : b.coeffs) r.add_term(m, -c);
    return r;
}

template <class C>
FracSeries1<C> scale(const FracSeries1<C>& a, C s) {
    FracSeries1<C> r(a.base_root, a.trunc_m);
    if (s == C(0)) return r;
    for (auto& [m, c] : a.coeffs) r.coeffs[m] = c * s;
    return r;
}

template <class C>
FracSeries1<C> mul(FracSeries1<C> a, FracSeries1<C> b) {
    detail::align(a, b);
    int amin = a.min_m(), bmin = b.min_m();
    int t = std::min(detail::trunc_add(a.trunc_m, bmin), detail::trunc_add(b.trunc_m, amin));
    FracSeries1<C> r(a.base_root, t);
    for (auto& [ma, ca] : a.coeffs)
        for (auto& [mb, cb] : b.coeffs) {
            if (ma + mb > t) break;
            r.add_term(ma + mb, ca * cb);
        }
    return r;
}

// (1 + w)^(p/q) with w = a - 1; requires constant term exactly 1.
template <class C>
FracSeries1<C> fracpow(const FracSeries1<C>& a, long p, long q) {
    if (a.get(0) != C(1))
        throw Error(Errc::non_unit_leading_term, "fracpow needs constant term exactly 1");
    if (a.trunc_m >= kTruncInf)
        throw Error(Errc::truncation_underflow, "fracpow needs a finite truncation");
    FracSeries1<C> w = a;
    w.coeffs.erase(0);
    C alpha = C(double(p)) / C(double(q));
    FracSeries1<C> result = FracSeries1<C>::constant(C(1), a.base_root, a.trunc_m);
    FracSeries1<C> wp = FracSeries1<C>::constant(C(1), a.base_root, a.trunc_m);
    C binom(1);
    for (int n = 1; n <= a.trunc_m + 1; ++n) {
        wp = mul(wp, w);
        if (wp.is_zero()) break;
        binom *= (alpha - C(double(n - 1))) / C(double(n));
        result = result + scale(wp, binom);
    }
    result.trunc_m = a.trunc_m;
    return result;
}

template <class C>
FracSeries1<C> reciprocal(const FracSeries1<C>& a) {
    return fracpow(a, -1, 1);
}

// ---------------------------------------------------------------------------
// FracSeries2: sum over n of c_n(u) * v^(-n/root_v), c_n a FracSeries1 in u.

template <class C>
struct FracSeries2 {
    int root_u = 1;
    int root_v = 1;
    int trunc_m = kTruncInf; // u-exponent numerators
    int trunc_n = kTruncInf; // v-exponent numerators
    std::map<int, FracSeries1<C>> terms;

    FracSeries2() = default;
    FracSeries2(int ru, int rv, int tm, int tn) : root_u(ru), root_v(rv), trunc_m(tm), trunc_n(tn) {}

    bool is_zero() const { return terms.empty(); }

    FracSeries1<C> coefficient_of_v(int n) const {
        auto it = terms.find(n);
        if (it != terms.end()) return it->second;
        return FracSeries1<C>(root_u, trunc_m);
    }

    C get(int m, int n) const { return coefficient_of_v(n).get(m); }

    void add_term(int m, int n, C c) {
        if (n < 0) throw Error(Errc::parse, "negative v-exponent numerator");
        if (n > trunc_n || m > trunc_m) return;
        auto it = terms.find(n);
        if (it == terms.end()) it = terms.emplace(n, FracSeries1<C>(root_u, trunc_m)).first;
        it->second.add_term(m, c);
        if (it->second.is_zero()) terms.erase(it);
    }

    void set_coefficient(int n, FracSeries1<C> s) {
        if (n > trunc_n) return;
        s = s.truncated(trunc_m);
        s.trunc_m = trunc_m;
        if (s.is_zero())
            terms.erase(n);
        else
            terms[n] = std::move(s);
    }

    int min_n() const { return terms.empty() ? kTruncInf : terms.begin()->first; }

    int min_m() const {
        int m = kTruncInf;
        for (auto& [n, s] : terms) m = std::min(m, s.min_m());
        return m;
    }

    // Multiply by v^(-s/root_v); s negative allowed when exponents stay >= 0.
    FracSeries2 shifted_v(int s) const {
        FracSeries2 r(root_u, root_v, trunc_m, detail::trunc_add(trunc_n, s));
        for (auto& [n, c] : terms) {
            if (n + s < 0) throw Error(Errc::parse, "shift_v would create a positive power of v");
            r.terms[n + s] = c;
        }
        return r;
    }

    // Multiply by u^(-s/root_u).
    FracSeries2 shifted_u(int s) const {
        FracSeries2 r(root_u, root_v, detail::trunc_add(trunc_m, s), trunc_n);
        for (auto& [n, c] : terms) {
            auto sh = c.shifted(s);
            sh.trunc_m = r.trunc_m;
            r.terms[n] = sh;
        }
        return r;
    }

    C eval(C u, C v) const {
        C tv = exp(-log(v) / C(double(root_v)));
        C s(0);
        for (auto& [n, c] : terms) {
            C t(1);
            for (int i = 0; i < n; ++i) t *= tv;
            s += c.eval(u) * t;
        }
        return s;
    }
};

template <class C>
FracSeries2<C> operator+(const FracSeries2<C>& a, const FracSeries2<C>& b) {
    if (a.root_u != b.root_u || a.root_v != b.root_v)
        throw Error(Errc::parse, "FracSeries2 root mismatch");
    FracSeries2<C> r(a.root_u, a.root_v, std::min(a.trunc_m, b.trunc_m), std::min(a.trunc_n, b.trunc_n));
    for (auto& [n, c] : a.terms)
        if (n <= r.trunc_n) r.set_coefficient(n, c);
    for (auto& [n, c] : b.terms) {
        if (n > r.trunc_n) continue;
        r.set_coefficient(n, r.coefficient_of_v(n) + c);
    }
    return r;
}

template <class C>
FracSeries2<C> operator-(const FracSeries2<C>& a, const FracSeries2<C>& b) {
    return a + scale(b, C(-1));
}

template <class C>
FracSeries2<C> scale(const FracSeries2<C>& a, C s) {
    FracSeries2<C> r(a.root_u, a.root_v, a.trunc_m, a.trunc_n);
    if (s == C(0)) return r;
    for (auto& [n, c] : a.terms) r.terms[n] = scale(c, s);
    return r;
}

template <class C>
FracSeries2<C> mul(const FracSeries2<C>& a, const FracSeries2<C>& b) {
    if (a.root_u != b.root_u || a.root_v != b.root_v)
        throw Error(Errc::parse, "FracSeries2 root mismatch");
    int tn = std::min(detail::trunc_add(a.trunc_n, b.min_n()), detail::trunc_add(b.trunc_n, a.min_n()));
    int tm = std::min(detail::trunc_add(a.trunc_m, b.min_m()), detail::trunc_add(b.trunc_m, a.min_m()));
    FracSeries2<C> r(a.root_u, a.root_v, tm, tn);
    for (auto& [na, ca] : a.terms)
        for (auto& [nb, cb] : b.terms) {
            if (na + nb > tn) break;
            r.set_coefficient(na + nb, r.coefficient_of_v(na + nb) + mul(ca, cb));
        }
    return r;
}

template <class C>
FracSeries2<C> fracpow(const FracSeries2<C>& a, long p, long q) {
    if (a.get(0, 0) != C(1))
        throw Error(Errc::non_unit_leading_term, "fracpow needs constant term exactly 1");
    if (a.trunc_m >= kTruncInf || a.trunc_n >= kTruncInf)
        throw Error(Errc::truncation_underflow, "fracpow needs finite truncations");
    FracSeries2<C> w = a;
    w.add_term(0, 0, C(-1));
    C alpha = C(double(p)) / C(double(q));
    FracSeries2<C> result(a.root_u, a.root_v, a.trunc_m, a.trunc_n);
    result.add_term(0, 0, C(1));
    FracSeries2<C> wp(a.root_u, a.root_v, a.trunc_m, a.trunc_n);
    wp.add_term(0, 0, C(1));
    C binom(1);
    for (int n = 1; n <= a.trunc_m + a.trunc_n + 1; ++n) {
        wp = mul(wp, w);
        if (wp.is_zero()) break;
        binom *= (alpha - C(double(n - 1))) / C(double(n));
        result = result + scale(wp, binom);
    }
    result.trunc_m = a.trunc_m;
    result.trunc_n = a.trunc_n;
    return result;
}

template <class C>
FracSeries2<C> reciprocal(const FracSeries2<C>& a) {
    return fracpow(a, -1, 1);
}

} // namespace petal
