#pragma once

#include <array>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace qcx {

// Bijection of the integers that is the identity outside the window [lo, hi];
// values is the image of lo, lo+1, ..., hi and must permute [lo, hi].
struct IdentityTail {
    int lo = 0;
    int hi = 0;
    std::vector<int> values;
};

// a_n = n + disp[n mod period]; bijectivity requires the residue shifts
// j + disp[j] to permute the residues mod period.
struct PeriodicDisplacement {
    int period = 1;
    std::vector<int> disp;
};

struct IntBijection {
    std::variant<IdentityTail, PeriodicDisplacement> form;
};

IntBijection make_identity_tail(int lo, int hi, std::vector<int> values);
IntBijection make_periodic(int period, std::vector<int> disp);

bool is_bijective(const IntBijection& a);
int bijection_eval(const IntBijection& a, int n);

// Largest |a_n - n|; 0 exactly for the identity.
int max_displacement(const IntBijection& a);
// Reach of the non-trivial region: max(|lo|,|hi|) for identity-tail windows,
// the period for periodic displacement.
int structure_reach(const IntBijection& a);

struct ThreePointReport {
    double lambda_empirical = 0.0;  // max |a_n-a_m| / |a_n-a_k| over the horizon
    double lambda_certified = 1.0;  // global bound: empirical + tail certificate
    std::array<int, 3> witness{0, 0, 0};  // n <= m < k attaining the empirical max
    int horizon = 0;
};

// Brute-force scan of all triples n <= m < k in [-horizon, horizon], plus a
// certified tail term: any triple that leaves the horizon while touching the
// non-trivial region has span s > horizon - reach and ratio at most
// (s-1+2D)/(s-2D), which decreases in s; triples entirely in the trivial
// region have ratio < 1. Requires horizon >= reach + 2*max_displacement + 1.
ThreePointReport three_point_lambda(const IntBijection& a, int horizon);

enum class LimitClass { SameDirection, Mirrored };

// Both finite forms force a_n -> +-infinity with n: always SameDirection.
LimitClass limit_classification(const IntBijection& a);

// Pipeline wrapper: the represented map is n -> -a_n when negated. This is the
// only way a Mirrored map enters the toolkit; downstream stages post-compose
// z -> -z for it.
struct AutoInput {
    IntBijection base;
    bool negated = false;
};

LimitClass limit_classification(const AutoInput& in);
int auto_eval(const AutoInput& in, int n);

// True iff [k, l] splits the sequence: a_n > max over [k,l] for every n > l
// and a_n < min over [k,l] for every n < k. Decided exactly via the bounded
// displacement of the finite forms.
bool splits_interval(const IntBijection& a, int k, int l);

struct SplitDecomposition {
    std::vector<int> cuts;          // strictly increasing; blocks are (cuts[i], cuts[i+1]]
    int bound_c = 1;                // max block cardinality
    std::pair<int, int> coverage{0, 0};  // certified index range
};

// Greedy left-to-right scan: grow each block until it splits, fail when a
// block would exceed c_max. Periodic inputs retry the scan from each phase
// offset and certify success by a repeated cut residue (the pattern then
// tiles all of Z).
std::optional<SplitDecomposition> find_split_decomposition(const IntBijection& a,
                                                           int c_max, int horizon);

}  // namespace qcx
