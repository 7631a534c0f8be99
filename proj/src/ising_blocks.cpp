#include "treeldp/ising_blocks.hpp"

#include <cmath>

#include "treeldp/log_real.hpp"

namespace treeldp {

// Evaluated around the dominant exponential so large |beta| stays finite.
double log_spin_mgf(double beta, double p) {
    double ab = std::abs(beta);
    double w_hi = beta >= 0 ? p : 1.0 - p;
    double w_lo = 1.0 - w_hi;
    return ab + std::log(w_hi + w_lo * std::exp(-2.0 * ab));
}

SpinRatio b_ratio(double beta, double p) {
    double log_num = log_spin_mgf(beta, 1.0 - p);
    double log_den = log_spin_mgf(beta, p);
    SpinRatio r;
    r.log_b = log_num - log_den;
    r.b_value = std::exp(r.log_b);
    return r;
}

TreeBlock block_geometry(const ModelSpec& model, const TransitionMatrix& m,
                         Level k, int symbol) {
    TreeBlock block;
    block.anchor_level = k - 1;
    block.target_level = model.target_level(k);
    if (k == 1) {
        if (model.kind() == ModelKind::PowerAlpha)
            throw IndexOutOfRange(
                "Type I k=1 is the degenerate self-pair, not a block");
        // root block: coupled to the whole level q-1
        block.symbol = -1;
        block.log_fan_out = log_level_count(m, block.target_level);
        return block;
    }
    if (k < 1) throw IndexOutOfRange("block index must be >= 1");
    if (symbol < 0 || symbol >= m.dim())
        throw IndexOutOfRange("symbol out of range");
    block.symbol = symbol;
    block.log_fan_out = log_row_sums(m, model.fan_out_level(k))[symbol];
    return block;
}

BlockExpectation log_block_expectation(double fan_out, double beta, double p) {
    BlockExpectation e;
    e.log_plus = std::log(p) + fan_out * log_spin_mgf(beta, p);
    e.log_minus =
        std::log(1.0 - p) + fan_out * log_spin_mgf(beta, 1.0 - p);
    return e;
}

double log_block_total(double fan_out, double beta, double p) {
    BlockExpectation e = log_block_expectation(fan_out, beta, p);
    return log_sum_exp(e.log_plus, e.log_minus);
}

double log_ratio_term(double fan_out, double beta, double p,
                      double threshold) {
    double x = std::log((1.0 - p) / p) + fan_out * b_ratio(beta, p).log_b;
    if (x > threshold) return x;
    return std::log1p(std::exp(x));
}

BigInt head_bound(const ModelSpec& model, const TransitionMatrix& m, Level n,
                  Level exact_cap) {
    if (n < 1) throw IndexOutOfRange("head_bound requires N >= 1");
    BigInt total = 0;
    Level cutoff = model.head_cutoff(n);
    for (Level i = 1; i <= cutoff; ++i)
        total += level_count(m, model.target_level(i), exact_cap);
    return total;
}

}  // namespace treeldp
