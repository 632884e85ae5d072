#pragma once

#include <variant>
#include <vector>

#include "qcx/tentslide.hpp"

namespace qcx {

// Orientation-preserving similarity restricted to what the pipeline needs:
// z -> sign*z + shift with sign in {+1, -1}. Conformal, dilatation 1.
struct Similarity {
    int sign = 1;
    Point shift{0.0, 0.0};

    bool is_identity() const { return sign == 1 && shift == Point{0.0, 0.0}; }
};

struct MapExpr;

// Children applied left to right: Seq{f, g} means z -> g(f(z)).
struct SeqNode {
    std::vector<MapExpr> children;
};

// Children with pairwise disjoint open supports; at most one acts at any
// point. Each child maps its own support onto itself (true for every
// expression built from tents, which this node's validation enforces by
// excluding unbounded-support children).
struct DisjointNode {
    std::vector<MapExpr> children;
};

// Inverse of the single child.
struct InvNode {
    std::vector<MapExpr> child;  // exactly one; vector supplies indirection
};

// Union-of-rectangles support summary. unbounded marks a non-identity
// similarity somewhere in the subtree.
struct Support {
    bool unbounded = false;
    std::vector<Rect> rects;
    Rect bbox{0.0, 0.0, 0.0, 0.0};  // hull of rects, meaningless if empty/unbounded

    bool contains(Point z) const;
};

struct MapExpr {
    std::variant<TentSlide, Similarity, SeqNode, DisjointNode, InvNode> node;
    Support support;
};

MapExpr make_leaf(const TentSlide& t);
MapExpr make_leaf(const Similarity& s);
MapExpr make_seq(std::vector<MapExpr> children);
// Validates pairwise disjointness of the children's open supports and rejects
// unbounded-support children.
MapExpr make_disjoint(std::vector<MapExpr> children);
MapExpr make_inv(MapExpr child);
MapExpr make_identity();  // empty Seq

Point expr_eval(const MapExpr& e, Point z);
Point expr_inverse_eval(const MapExpr& e, Point w);

// Certified upper bound for the maximal dilatation: exact per tent, product
// across Seq, max across Disjoint, invariant under Inv. Identity reports 1.
double expr_dilatation_bound(const MapExpr& e);

// Centered finite-difference Beltrami sample of the full composition.
// Throws CheckError if the stencil sees a degenerate Jacobian (which also
// happens when it straddles a kink of the piecewise structure).
BeltramiSample numeric_beltrami(const MapExpr& e, Point at, double h = 1e-5);

// Conservative distance from z to the nearest kink line of the piecewise
// structure (branch folds, creases, support boundaries), tracked through
// compositions. A sampling aid: callers skip finite-difference probes closer
// than a few stencil widths.
double expr_kink_distance(const MapExpr& e, Point z);

}  // namespace qcx
