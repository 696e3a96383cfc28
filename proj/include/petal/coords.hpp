#pragma once

// The chart psi0 and its inverse with pinned branch conventions, the sector
// regions, and the sampled certification of working parameters.
//
// Branch convention: fractional roots are realized as exp(Log(.)/r) with the
// principal logarithm applied to the quotients a/u and b/v, the unique choice
// sending 1 to 1. All downstream modules (expansion, fatou) share it.

#include <cstdint>

#include "petal/normal_form.hpp"
#include "petal/sampling.hpp"

namespace petal {

struct SectorParams {
    int k = 2;
    double R = 32.0;
    double delta = 0.05;
    double theta = kPi / 8;

    void validate() const {
        if (k < 2) throw Error(Errc::config, "k must be >= 2");
        if (!(theta > 0 && theta < kPi / 4))
            throw Error(Errc::config, "theta must lie in (0, pi/4)");
        if (!(delta > 0 && delta <= 0.25))
            throw Error(Errc::config, "delta must lie in (0, 0.25]");
        if (!(R >= 1.0)) throw Error(Errc::config, "R must be >= 1");
    }
};

// chart constants a = -(k-1)/k, b = -1/(k-1)
inline double chart_a(int k) { return -double(k - 1) / double(k); }
inline double chart_b(int k) { return -1.0 / double(k - 1); }

template <class E>
E pow_int(E b, int e) {
    E r(1);
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

template <class E>
std::pair<E, E> psi0_t(E x, E y, int k) {
    if (x == E(0) || y == E(0)) throw Error(Errc::chart_singular, "psi0 needs x*y != 0");
    using R = typename E::value_type;
    E u = E(R(chart_a(k))) * pow_int(y / x, k);
    E v = E(R(chart_b(k))) / pow_int(y, k - 1);
    return {u, v};
}

template <class E>
std::pair<E, E> psi0_inverse_t(E u, E v, int k) {
    if (u == E(0) || v == E(0)) throw Error(Errc::chart_singular, "psi0_inverse needs u*v != 0");
    using R = typename E::value_type;
    E y = exp(log(E(R(chart_b(k))) / v) / E(R(k - 1)));
    E x = exp(log(E(R(chart_a(k))) / u) / E(R(k))) * y;
    return {x, y};
}

inline std::pair<cx, cx> psi0(cx x, cx y, int k) { return psi0_t<cx>(x, y, k); }
inline std::pair<cx, cx> psi0_inverse(cx u, cx v, int k) { return psi0_inverse_t<cx>(u, v, k); }

// One exact step of f1 = psi0 o f0 o psi0^{-1}; f0 must be in normal form.
template <class E>
std::pair<E, E> f1_step_t(const GermMap& f0, int k, E u, E v) {
    auto [x, y] = psi0_inverse_t<E>(u, v, k);
    auto [x1, y1] = f0.eval<E>(x, y);
    return psi0_t<E>(x1, y1, k);
}

inline std::pair<cx, cx> f1_step(const GermMap& f0, int k, cx u, cx v) {
    return f1_step_t<cx>(f0, k, u, v);
}

// region predicates (principal Arg everywhere)
bool in_region_u(cx u, const SectorParams& s);
bool in_region_uv(cx u, cx v, const SectorParams& s);
bool in_region_uw(cx u, cx omega, const SectorParams& s);
// points stored as (tau - log omega, omega)
bool in_region_tw(cx tau_hat, cx omega, const SectorParams& s);

// Low-discrepancy samples of region points; the window extends from the
// binding corner (small Re u, small |v|) outward by fixed spans.
struct RegionSampler {
    SectorParams s;
    double u_span = 8.0;
    double v_span = 16.0;
    Halton4 seq;

    RegionSampler(const SectorParams& params, uint64_t seed) : s(params), seq(seed) {}
    std::pair<cx, cx> next(); // (u, v) in the open region
    cx next_u();              // u in the open sector
};

struct CertifyReport {
    bool ok = false;
    int samples = 0;
    int invariance_violations = 0;
    int margin_violations = 0;
};

// Samples the region and checks that one exact f1 step stays inside and that
// the one-step deviations keep a factor-2 margin on the bounds the orbit
// lemmas consume (|v1-v-1| <= 1/4, |u1-u-1/v| <= |1/v|/4).
CertifyReport certify_params(const NormalGerm& g, const SectorParams& s, int samples,
                             uint64_t seed);

// Escalates from (R=32, delta=0.05, theta=pi/8), doubling R and halving delta
// until certification passes; cannot-certify-region after 20 escalations.
SectorParams default_params(const NormalGerm& g, uint64_t seed, int samples = 10000);

} // namespace petal
