#pragma once

#include "treeldp/model.hpp"
#include "treeldp/transition_matrix.hpp"

namespace treeldp {

// B(beta) = ((1-p)e^b + p e^-b) / (p e^b + (1-p) e^-b). Decides which spin
// orientation dominates a block: B > 1 favours the minus branch.
struct SpinRatio {
    double b_value = 1.0;
    double log_b = 0.0;
};

SpinRatio b_ratio(double beta, double p);

// log(p e^b + (1-p) e^-b), the single-coupling moment generating function.
double log_spin_mgf(double beta, double p);

// One anchor node at anchor_level together with its coupled descendants at
// target_level. fan_out is carried in log domain; Type I fan-outs exceed
// any integer width for k >= 10.
struct TreeBlock {
    Level anchor_level = 0;
    Level target_level = 0;
    double log_fan_out = 0.0;
    int symbol = -1;  // -1 for the root block (Type II, k = 1)
};

// k >= 2 for Type I; k >= 1 for Type II (k = 1 is the root block whose
// fan-out is the whole level |T_{q-1}|).
TreeBlock block_geometry(const ModelSpec& model, const TransitionMatrix& m,
                         Level k, int symbol);

// (log E+, log E-), the block's conditional expectations given the anchor
// spin. At beta = 0 they sum to 1.
struct BlockExpectation {
    double log_plus;
    double log_minus;
};

BlockExpectation log_block_expectation(double fan_out, double beta, double p);

// log(E+ + E-), evaluated through whichever branch dominates.
double log_block_total(double fan_out, double beta, double p);

inline constexpr double kDefaultBranchThreshold = 30.0;

// log(1 + E-/E+) = log(1 + ((1-p)/p) B^R). Stable across the full range of
// R*log B; above `threshold` the leading 1 is dropped.
double log_ratio_term(double fan_out, double beta, double p,
                      double threshold = kDefaultBranchThreshold);

// Deterministic maximum of the discarded head sum S_{N,1}:
// sum of |T_{i^alpha - 1}| (i <= floor(N^{1/alpha})) resp. |T_{qi-1}|
// (i <= floor(N/q)).
BigInt head_bound(const ModelSpec& model, const TransitionMatrix& m, Level n,
                  Level exact_cap = kDefaultExactCap);

}  // namespace treeldp
