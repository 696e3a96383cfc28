#pragma once

#include <vector>

#include "petal/common.hpp"

namespace petal {

// All complex roots of c[0] + c[1] x + ... + c[n] x^n, c[n] != 0.
// Laguerre iterations on the deflated polynomial, each root polished on the
// original. Multiple roots come out as numerically close clusters.
std::vector<cx> poly_roots(const std::vector<cx>& coeffs);

// A multiplicity-m root of p is a simple root of p^(m-1); Newton there
// recovers it to full precision instead of eps^(1/m).
cx refine_multiple_root(const std::vector<cx>& coeffs, cx x, int multiplicity);

// Multiplicity resolution: computed roots of an m-fold root scatter like
// eps^(1/m), so candidates are grouped generously and each group is accepted
// as a multiple root only if, after derivative-chain refinement, the
// derivatives p^(0..m-1) all vanish to roundoff at the representative.
// Groups failing the re-check fall back to simple roots and set `ambiguous`.
std::vector<std::pair<cx, int>> cluster_roots(const std::vector<cx>& poly,
                                              const std::vector<cx>& roots, double group_tol,
                                              bool* ambiguous);

} // namespace petal
