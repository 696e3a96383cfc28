#include "petal/coords.hpp"

#include <cmath>

namespace petal {

bool in_region_u(cx u, const SectorParams& s) {
    return u.real() > s.R && std::abs(std::arg(u)) < s.theta;
}

bool in_region_uv(cx u, cx v, const SectorParams& s) {
    if (!(u.real() > s.R)) return false;
    if (!(std::abs(std::arg(u)) < s.theta)) return false;
    double lhs = std::pow(std::abs(u), double((s.k - 1) * (s.k + 1)) / double(s.k));
    if (!(lhs < s.delta * std::abs(v))) return false;
    if (!(std::abs(std::arg(v)) < (double(s.k - 1) / double(s.k)) * s.theta)) return false;
    return true;
}

bool in_region_uw(cx u, cx omega, const SectorParams& s) { return in_region_uv(u, omega, s); }

bool in_region_tw(cx tau_hat, cx omega, const SectorParams& s) {
    if (!(std::abs(std::arg(omega)) < (double(s.k - 1) / double(s.k)) * s.theta)) return false;
    cx tau = tau_hat + log(omega);
    if (!(tau.real() > s.R)) return false;
    if (!(std::abs(std::arg(tau)) < s.theta)) return false;
    double bound = s.delta * std::pow(std::abs(omega),
                                      double(s.k) / double((s.k - 1) * (s.k + 1)));
    return std::abs(tau) < bound;
}

std::pair<cx, cx> RegionSampler::next() {
    double q[4];
    seq.next(q);
    double re_u = s.R * (1.0001 + q[0] * (u_span - 1.0));
    double arg_u = (2.0 * q[1] - 1.0) * s.theta * 0.9999;
    cx u = std::polar(re_u / std::cos(arg_u), arg_u);
    double vmin = std::pow(std::abs(u), double((s.k - 1) * (s.k + 1)) / double(s.k)) / s.delta;
    double av = vmin * 1.0001 * std::exp(q[2] * std::log(v_span));
    double arg_v = (2.0 * q[3] - 1.0) * (double(s.k - 1) / double(s.k)) * s.theta * 0.9999;
    return {u, std::polar(av, arg_v)};
}

cx RegionSampler::next_u() {
    double q[4];
    seq.next(q);
    double re_u = s.R * (1.0001 + q[0] * (u_span - 1.0));
    double arg_u = (2.0 * q[1] - 1.0) * s.theta * 0.9999;
    return std::polar(re_u / std::cos(arg_u), arg_u);
}

CertifyReport certify_params(const NormalGerm& g, const SectorParams& s, int samples,
                             uint64_t seed) {
    CertifyReport rep;
    rep.samples = samples;
    RegionSampler sampler(s, seed);
    for (int i = 0; i < samples; ++i) {
        auto [u, v] = sampler.next();
        auto [u1, v1] = f1_step(g.base, g.k, u, v);
        if (!in_region_uv(u1, v1, s)) ++rep.invariance_violations;
        // factor-2 margin on the one-step deviations the orbit bounds use
        if (std::abs(v1 - v - cx(1)) > 0.25) ++rep.margin_violations;
        if (std::abs(u1 - u - cx(1) / v) > 0.25 / std::abs(v)) ++rep.margin_violations;
    }
    rep.ok = rep.invariance_violations == 0 && rep.margin_violations == 0;
    return rep;
}

SectorParams default_params(const NormalGerm& g, uint64_t seed, int samples) {
    SectorParams s;
    s.k = g.k;
    s.R = 32.0;
    s.delta = 0.05;
    s.theta = kPi / 8;
    for (int esc = 0; esc < 20; ++esc) {
        s.validate();
        if (certify_params(g, s, samples, seed).ok) return s;
        s.R *= 2.0;
        s.delta *= 0.5;
    }
    throw Error(Errc::cannot_certify_region,
                "escalation exhausted; this contradicts sector invariance for a Theorem-A germ");
}

} // namespace petal
