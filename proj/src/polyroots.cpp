#include "petal/polyroots.hpp"

#include <algorithm>
#include <cmath>

namespace petal {

namespace {

// One Laguerre root of the degree-m polynomial a[0..m]; x is the start guess.
cx laguerre(const std::vector<cx>& a, cx x) {
    const int m = static_cast<int>(a.size()) - 1;
    // fractional steps break the rare limit cycle
    static const double frac[] = {0.0, 0.5, 0.25, 0.75, 0.13, 0.38, 0.62, 0.88, 1.0};
    const int max_iter = 200;
    for (int iter = 1; iter <= max_iter; ++iter) {
        cx b = a[m];
        double err = std::abs(b);
        cx d(0), f(0);
        double abx = std::abs(x);
        for (int j = m - 1; j >= 0; --j) {
            f = x * f + d;
            d = x * d + b;
            b = x * b + a[j];
            err = std::abs(b) + abx * err;
        }
        err *= 1e-15;
        if (std::abs(b) <= err) return x; // at a root within roundoff
        cx g = d / b;
        cx g2 = g * g;
        cx h = g2 - 2.0 * f / b;
        cx sq = sqrt(double(m - 1) * (double(m) * h - g2));
        cx gp = g + sq, gm = g - sq;
        double abp = std::abs(gp), abm = std::abs(gm);
        cx denom = (abp >= abm) ? gp : gm;
        cx dx = (std::max(abp, abm) > 0.0) ? cx(double(m)) / denom
                                           : std::polar(1.0 + abx, double(iter));
        cx x1 = x - dx;
        if (x == x1) return x;
        if (iter % 10)
            x = x1;
        else
            x = x - frac[(iter / 10) % 9] * dx;
    }
    return x; // callers re-check residuals
}

// Quotient of a by (x - root); drops the remainder.
std::vector<cx> deflate(const std::vector<cx>& a, cx root) {
    const int m = static_cast<int>(a.size()) - 1;
    std::vector<cx> q(m);
    cx carry = a[m];
    for (int j = m - 1; j >= 0; --j) {
        q[j] = carry;
        carry = a[j] + root * carry;
    }
    return q;
}

} // namespace

std::vector<cx> poly_roots(const std::vector<cx>& coeffs) {
    std::vector<cx> a = coeffs;
    while (a.size() > 1 && std::abs(a.back()) == 0.0) a.pop_back();
    if (a.size() <= 1) throw Error(Errc::parse, "poly_roots: zero or constant polynomial");

    std::vector<cx> roots;
    std::vector<cx> ad = a;
    while (ad.size() > 1) {
        cx x = laguerre(ad, cx(0, 0));
        x = laguerre(a, x); // polish on the original polynomial
        roots.push_back(x);
        ad = deflate(ad, x);
    }
    std::sort(roots.begin(), roots.end(), [](cx l, cx r) {
        if (l.real() != r.real()) return l.real() < r.real();
        return l.imag() < r.imag();
    });
    return roots;
}

namespace {

std::vector<cx> poly1_derivative(const std::vector<cx>& c) {
    std::vector<cx> d(c.size() > 1 ? c.size() - 1 : 1, cx(0));
    for (size_t i = 1; i < c.size(); ++i) d[i - 1] = double(i) * c[i];
    return d;
}

cx poly1_eval(const std::vector<cx>& c, cx z) {
    cx s(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * z + *it;
    return s;
}

double poly1_scale_at(const std::vector<cx>& c, double ax) {
    double s = 0, p = 1;
    for (auto& ci : c) {
        s += std::abs(ci) * p;
        p *= ax;
    }
    return std::max(s, 1e-300);
}

} // namespace

cx refine_multiple_root(const std::vector<cx>& coeffs, cx x, int multiplicity) {
    std::vector<cx> p = coeffs;
    for (int d = 1; d < multiplicity && p.size() > 1; ++d) p = poly1_derivative(p);
    std::vector<cx> dp = poly1_derivative(p);
    for (int it = 0; it < 60; ++it) {
        cx f = poly1_eval(p, x), df = poly1_eval(dp, x);
        if (df == cx(0)) break;
        cx step = f / df;
        x -= step;
        if (std::abs(step) <= 1e-17 * (1.0 + std::abs(x))) break;
    }
    return x;
}

std::vector<std::pair<cx, int>> cluster_roots(const std::vector<cx>& poly,
                                              const std::vector<cx>& roots, double group_tol,
                                              bool* ambiguous) {
    if (ambiguous) *ambiguous = false;
    std::vector<std::pair<cx, int>> out;
    std::vector<bool> used(roots.size(), false);
    for (size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        std::vector<cx> group = {roots[i]};
        used[i] = true;
        for (size_t j = i + 1; j < roots.size(); ++j) {
            if (used[j]) continue;
            double s = std::max(1.0, std::abs(roots[i]));
            if (std::abs(roots[j] - roots[i]) <= group_tol * s) {
                group.push_back(roots[j]);
                used[j] = true;
            }
        }
        int m = static_cast<int>(group.size());
        if (m == 1) {
            out.push_back({group.front(), 1});
            continue;
        }
        cx centroid(0);
        for (cx r : group) centroid += r;
        centroid /= double(m);
        cx refined = refine_multiple_root(poly, centroid, m);

        // residual re-check: derivatives 0..m-1 vanish at a true m-fold root
        bool multiple = true;
        std::vector<cx> der = poly;
        double ax = std::abs(refined);
        for (int j = 0; j < m; ++j) {
            double resid = std::abs(poly1_eval(der, refined));
            if (resid > 1e-8 * poly1_scale_at(der, ax)) {
                multiple = false;
                break;
            }
            der = poly1_derivative(der);
        }
        if (multiple) {
            out.push_back({refined, m});
        } else {
            if (ambiguous) *ambiguous = true;
            for (cx r : group) out.push_back({r, 1});
        }
    }
    return out;
}

} // namespace petal
