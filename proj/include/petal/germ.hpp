#pragma once

#include <string>
#include <vector>

#include "petal/series.hpp"

namespace petal {

// Holomorphic germ of (C^2, 0) tangent to the identity, stored as the full
// truncated map f = Id + higher-order terms.
struct GermMap {
    TruncPoly2<cx> comp1, comp2;
    int trunc_order = 0;

    // Validates the tangent-to-identity shape exactly (identity linear part,
    // no constant terms). Throws parse-error otherwise.
    static GermMap from_components(TruncPoly2<cx> c1, TruncPoly2<cx> c2, int trunc);

    template <class E>
    std::pair<E, E> eval(E x, E y) const {
        return {comp1.template eval<E>(x, y), comp2.template eval<E>(x, y)};
    }

    // Degree-d homogeneous part P_d (of f - Id for d >= 2; d = 1 gives Id).
    std::pair<TruncPoly2<cx>, TruncPoly2<cx>> homogeneous_part(int d) const {
        return {comp1.homogeneous_part(d), comp2.homogeneous_part(d)};
    }

    // Polynomial germs stay exact at every order; callers may widen the
    // bookkeeping truncation before deep compositions.
    GermMap widened(int trunc) const;
};

// Projective direction with eigenvalue data. The representative is normalized
// so the larger-magnitude slot equals 1 (ties resolved toward the second
// slot, the paper's preferred chart).
struct CharDirection {
    cx v0, v1;
    cx lambda = 0;
    bool degenerate = true;
    cx director = 0;
    bool director_valid = false;
    int multiplicity = 1;
};

struct DirectionsReport {
    std::vector<CharDirection> dirs;
    bool ill_conditioned_warning = false;
};

struct HypothesisReport {
    bool pass = false;
    int k = 0;
    CharDirection dir;
    int direction_count = 0;
    std::vector<std::string> reasons;
};

// Smallest j >= 2 with P_j != 0; identity-germ error when none exists within
// the truncation order.
int order_of(const GermMap& g);

DirectionsReport characteristic_directions(const GermMap& g);

// Derivative of the induced map of P_k on P^1 at the direction, minus 1,
// computed symbolically via the quotient rule in the chart containing d.
cx director_of(const GermMap& g, const CharDirection& d);

HypothesisReport check_theoremA_hypothesis(const GermMap& g);

cx normalize_slot(cx& v0, cx& v1); // in place; returns scaling applied

} // namespace petal
