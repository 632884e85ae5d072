#pragma once

#include <vector>

#include "qcx/mapexpr.hpp"

namespace qcx {

// Permutation of the integer interval [lo, hi], to be realized by a
// quasiconformal map supported in (lo - 1/2, hi + 1/2) x (-delta, delta).
struct BlockPermutation {
    int lo = 0;
    int hi = 0;
    std::vector<int> values;  // target of lo + i is values[i]
    double delta = 1.0;
};

BlockPermutation make_block_permutation(int lo, int hi, std::vector<int> values,
                                        double delta);

// Composition of three disjoint tent layers that swaps the integers m and n,
// fixes every other integer exactly, and is the identity outside
// (lo - 1/2, hi + 1/2) x (-delta, delta):
//   layer 1: vertical tents parking m at m - i*delta/2 and n at n + i*delta/2;
//   layer 2: horizontal tents in the strips Im in (-3delta/4, -delta/4) and
//            (delta/4, 3delta/4) sliding the parked points to n resp. m;
//   layer 3: vertical tents lifting both back to the real axis.
// The strips avoid the real axis, so unmoved integers never enter a support.
// m == n returns the empty composition.
MapExpr transposition_move(int m, int n, int lo, int hi, double delta);

// Realizes the permutation as a sequence of transposition moves: walk the top
// index down, swap its current preimage into place, recurse on the prefix.
// At most hi - lo transpositions; dilatation bound depends only on the block
// width and delta.
MapExpr build_block_permutation(const BlockPermutation& p);

}  // namespace qcx
