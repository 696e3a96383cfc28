#pragma once

#include <string>
#include <vector>

#include "petal/germ.hpp"

namespace petal {

struct Mat2 {
    cx m00{1}, m01{0}, m10{0}, m11{1};

    cx det() const { return m00 * m11 - m01 * m10; }
    Mat2 inverse() const {
        cx d = det();
        if (d == cx(0)) throw Error(Errc::parse, "singular 2x2 matrix");
        return {m11 / d, -m01 / d, -m10 / d, m00 / d};
    }
    Mat2 operator*(const Mat2& o) const {
        return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
                m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
    }
    std::pair<cx, cx> apply(cx x, cx y) const { return {m00 * x + m01 * y, m10 * x + m11 * y}; }
};

// The recorded conjugation: base = (move_dir * l)^{-1} o germ o (move_dir * l),
// where l(x,y) = (a x, c x + d y).
struct LinearConj {
    Mat2 move_dir;
    cx la{1}, lc{0}, ld{1};
    std::string choice_log;

    Mat2 l_matrix() const { return {la, cx(0), lc, ld}; }
    Mat2 total() const { return move_dir * l_matrix(); }
};

struct NormalGerm {
    GermMap base; // f0 in the canonical shape
    int k = 2;
    TruncPoly2<cx> Rpoly; // homogeneous degree k-3; zero when k <= 2
    TruncPoly2<cx> Ppart, Qpart; // order >= k+1
    LinearConj conj;
    double form_residual = 0; // max dropped coefficient magnitude at the snap
};

// M^{-1} o g o M at the germ's truncation order.
GermMap conjugate_linear(const GermMap& g, const Mat2& M);

// Returns the conjugated germ (direction moved to [0:1]) and the matrix A
// used, with moved = A^{-1} g A.
std::pair<GermMap, Mat2> move_direction_to_vertical(const GermMap& g, const CharDirection& d);

struct PkStructure {
    std::vector<cx> a; // S-coefficients a_0 .. a_{k-1}
    cx b0;
};

// Requires [0:1] to be the unique characteristic direction; verifies the
// structural identities (a_k = 0, b_k != 0, b_0 != 0, a_{j-1} = b_j) and
// throws not-unique-direction when they fail.
PkStructure extract_Pk_structure(const GermMap& g);

struct LinearParams {
    cx a, c, d;
    std::string choice_log;
};

// Solves (1) b0 a^k / d = 1, (2) a_{k-1} d^{k-1} = 1,
// (3) sum_j a_j a^{k-1-j} c^j = 0 with principal roots for (1)-(2) and the
// minimal-magnitude root for (3).
LinearParams solve_linear_params(const std::vector<cx>& aj, cx b0, int k);

enum class Precision { dbl, quad };

// Full pipeline: move direction, extract, solve, conjugate by l, split into
// the canonical degree-k template plus P/Q. The stored coefficients of g are
// treated as exact through degree max(trunc_order, 2k+2).
NormalGerm normalize(const GermMap& g, Precision prec = Precision::dbl);

} // namespace petal
