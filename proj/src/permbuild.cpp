#include "qcx/permbuild.hpp"

#include <algorithm>

#include "qcx/errors.hpp"

namespace qcx {

BlockPermutation make_block_permutation(int lo, int hi, std::vector<int> values,
                                        double delta) {
    if (hi < lo) throw InputError("block_permutation: hi must be >= lo");
    if (!(delta > 0.0)) throw InputError("block_permutation: delta must be positive");
    if (values.size() != size_t(hi - lo + 1))
        throw InputError("block_permutation: values must cover [lo, hi]");
    std::vector<char> seen(values.size(), 0);
    for (int v : values) {
        if (v < lo || v > hi || seen[v - lo])
            throw InputError("block_permutation: values must permute [lo, hi]");
        seen[v - lo] = 1;
    }
    return BlockPermutation{lo, hi, std::move(values), delta};
}

MapExpr transposition_move(int m, int n, int lo, int hi, double delta) {
    if (!(delta > 0.0)) throw InputError("transposition_move: delta must be positive");
    if (m < lo || n < lo || m > hi || n > hi)
        throw InputError("transposition_move: points must lie in [lo, hi]");
    if (m == n) return make_identity();
    if (m > n) std::swap(m, n);

    const double cx = 0.5 * (lo + hi);
    const double hw = 0.5 * (hi - lo + 1);

    // Vertical park: m down by delta/2, n up by delta/2.
    MapExpr g1 = make_disjoint({
        make_leaf(make_tent(Rect{double(m), 0.0, 0.5, delta}, Axis::Vertical, 0.0,
                            -delta / 2)),
        make_leaf(make_tent(Rect{double(n), 0.0, 0.5, delta}, Axis::Vertical, 0.0,
                            delta / 2)),
    });
    // Horizontal slide inside strips clear of the real axis.
    MapExpr g2 = make_disjoint({
        make_leaf(make_tent(Rect{cx, -delta / 2, hw, delta / 4}, Axis::Horizontal,
                            m - cx, n - cx)),
        make_leaf(make_tent(Rect{cx, delta / 2, hw, delta / 4}, Axis::Horizontal,
                            n - cx, m - cx)),
    });
    // Vertical return to the axis.
    MapExpr g3 = make_disjoint({
        make_leaf(make_tent(Rect{double(n), 0.0, 0.5, delta}, Axis::Vertical,
                            -delta / 2, 0.0)),
        make_leaf(make_tent(Rect{double(m), 0.0, 0.5, delta}, Axis::Vertical,
                            delta / 2, 0.0)),
    });
    return make_seq({std::move(g1), std::move(g2), std::move(g3)});
}

MapExpr build_block_permutation(const BlockPermutation& p) {
    make_block_permutation(p.lo, p.hi, p.values, p.delta);  // revalidate

    std::vector<int> v = p.values;
    std::vector<MapExpr> moves;
    for (int top = p.hi; top > p.lo; --top) {
        const int m = v[top - p.lo];
        if (m == top) continue;
        moves.push_back(transposition_move(m, top, p.lo, p.hi, p.delta));
        // Peel the top transposition off: replace values m <-> top.
        for (int& x : v) {
            if (x == m)
                x = top;
            else if (x == top)
                x = m;
        }
    }
    // Emitted top-down, applied bottom-up.
    std::reverse(moves.begin(), moves.end());
    return moves.empty() ? make_identity() : make_seq(std::move(moves));
}

}  // namespace qcx
