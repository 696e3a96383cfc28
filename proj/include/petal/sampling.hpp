#pragma once

// Deterministic low-discrepancy sampling (Halton radical inverses) used to
// cover region corners evenly; a seed offsets the start index so that
// different runs are reproducible from config.

#include <cstdint>

namespace petal {

inline double radical_inverse(uint64_t n, uint32_t base) {
    double inv = 1.0 / base, f = inv, r = 0.0;
    while (n > 0) {
        r += f * double(n % base);
        n /= base;
        f *= inv;
    }
    return r;
}

struct Halton4 {
    uint64_t index;

    explicit Halton4(uint64_t seed) : index(1 + (seed % 100003) * 7919) {}

    // next point in [0,1)^4
    void next(double q[4]) {
        static const uint32_t bases[4] = {2, 3, 5, 7};
        for (int d = 0; d < 4; ++d) q[d] = radical_inverse(index, bases[d]);
        ++index;
    }
};

} // namespace petal
