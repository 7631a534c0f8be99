#include "treeldp/free_energy.hpp"

#include <cmath>
#include <limits>

#include "treeldp/log_real.hpp"

namespace treeldp {

namespace {

Branch branch_of(double log_b) {
    if (log_b > 0.0) return Branch::Supercritical;
    if (log_b < 0.0) return Branch::Subcritical;
    return Branch::Critical;
}

// d/dbeta log(p e^b + (1-p) e^-b) = tanh(beta + log(p/(1-p))/2)
double spin_mgf_log_derivative(double beta, double p) {
    return std::tanh(beta + 0.5 * std::log(p / (1.0 - p)));
}

// Per-block free-energy density y with total = R * y, i.e.
// y = log A + (log p + log(1 + E-/E+)) / R. Branching mirrors
// log_ratio_term so the formula stays finite for any fan-out, including
// fan-outs too large to represent outside the log domain.
double block_log_density(double log_fan_out, double beta, double p) {
    double log_a = log_spin_mgf(beta, p);
    double log_b = b_ratio(beta, p).log_b;
    double fan_out = std::exp(log_fan_out);
    double x = std::log((1.0 - p) / p) +
               (log_b == 0.0 ? 0.0 : fan_out * log_b);
    if (x > kDefaultBranchThreshold)
        return log_a + log_b + std::log(1.0 - p) / fan_out;
    return log_a + (std::log(p) + std::log1p(std::exp(x))) / fan_out;
}

struct FiniteSums {
    double free_energy = 0.0;
    double g_term = 0.0;
};

// Shared weighted loop over the truncated block range. Every factor is a
// log-domain magnitude; per-term contributions are assembled as
// sign(y) * exp(log C - log |Delta| + log R + log |y|).
FiniteSums finite_sums(const ModelSpec& model, const TransitionMatrix& m,
                       Level n, double beta) {
    if (n < 1) throw IndexOutOfRange("finite free energy requires N >= 1");
    growth_rate(m);  // reject trees outside the growth hypothesis

    FiniteSums out;
    if (beta == 0.0) return out;  // every block total is p + (1-p) = 1

    double p = model.p();
    double log_delta = log_delta_count(m, model.target_level(n));
    Level k0 = model.head_cutoff(n);

    for (Level k = k0 + 1; k <= n; ++k) {
        if (k == 1) {
            // Type II root block: one anchor coupled to the whole level q-1
            double log_r = log_level_count(m, model.target_level(1));
            double y = block_log_density(log_r, beta, p);
            if (y != 0.0)
                out.free_energy += std::copysign(
                    std::exp(log_r - log_delta + std::log(std::abs(y))), y);
            double ratio = log_ratio_term(std::exp(log_r), beta, p);
            if (ratio > 0.0) out.g_term += std::exp(-log_delta) * ratio;
            continue;
        }
        std::vector<double> log_c = log_col_sums(m, k - 1);
        std::vector<double> log_r = log_row_sums(m, model.fan_out_level(k));
        for (int j = 0; j < m.dim(); ++j) {
            if (std::isinf(log_c[j])) continue;  // no words end in j
            double y = block_log_density(log_r[j], beta, p);
            if (y != 0.0)
                out.free_energy += std::copysign(
                    std::exp(log_c[j] - log_delta + log_r[j] +
                             std::log(std::abs(y))),
                    y);
            double ratio = log_ratio_term(std::exp(log_r[j]), beta, p);
            if (ratio > 0.0)
                out.g_term +=
                    std::exp(log_c[j] - log_delta + std::log(ratio));
        }
    }
    return out;
}

}  // namespace

double closed_form_coefficient(const ModelSpec& model, double gamma) {
    if (gamma <= 1.0) throw GrowthConditionViolated("gamma must exceed 1");
    if (model.kind() == ModelKind::PowerAlpha) return (gamma - 1.0) / gamma;
    int q = model.order();
    return std::pow(gamma, q - 1) * (gamma - 1.0) / (std::pow(gamma, q) - 1.0);
}

FreeEnergyResult closed_form_free_energy(const ModelSpec& model, double gamma,
                                         double beta) {
    double c = closed_form_coefficient(model, gamma);
    double p = model.p();
    double log_b = b_ratio(beta, p).log_b;
    FreeEnergyResult r;
    r.beta = beta;
    r.branch = branch_of(log_b);
    r.g_term = log_b > 0.0 ? c * log_b : 0.0;
    r.value = c * log_spin_mgf(beta, p) + r.g_term;
    return r;
}

FreeEnergyResult finite_free_energy(const ModelSpec& model,
                                    const TransitionMatrix& m, Level n,
                                    double beta) {
    FiniteSums sums = finite_sums(model, m, n, beta);
    FreeEnergyResult r;
    r.beta = beta;
    r.value = sums.free_energy;
    r.g_term = sums.g_term;
    r.branch = branch_of(b_ratio(beta, model.p()).log_b);
    r.n_used = n;
    return r;
}

double g_term_finite(const ModelSpec& model, const TransitionMatrix& m,
                     Level n, double beta) {
    return finite_sums(model, m, n, beta).g_term;
}

double log_truncated_mgf_factorized(const ModelSpec& model,
                                    const TransitionMatrix& m, Level n,
                                    double beta, Level exact_cap) {
    if (n < 1) throw IndexOutOfRange("N must be >= 1");
    double p = model.p();
    double total = 0.0;
    Level k0 = model.head_cutoff(n);
    for (Level k = k0 + 1; k <= n; ++k) {
        if (k == 1) {
            double fan_out = static_cast<double>(
                level_count(m, model.target_level(1), exact_cap));
            total += log_block_total(fan_out, beta, p);
            continue;
        }
        for (int j = 0; j < m.dim(); ++j) {
            BigInt c = col_sum(m, k - 1, j, exact_cap);
            if (c == 0) continue;
            double fan_out = static_cast<double>(
                row_sum(m, model.fan_out_level(k), j, exact_cap));
            total += static_cast<double>(c) *
                     log_block_total(fan_out, beta, p);
        }
    }
    return total;
}

double free_energy_derivative(const ModelSpec& model, double gamma,
                              double beta) {
    double c = closed_form_coefficient(model, gamma);
    double p = model.p();
    double log_b = b_ratio(beta, p).log_b;
    if (log_b > 0.0) return c * spin_mgf_log_derivative(beta, 1.0 - p);
    if (log_b < 0.0) return c * spin_mgf_log_derivative(beta, p);
    if (p != 0.5 && beta == 0.0)
        throw KinkAtZero("one-sided derivatives differ at beta = 0");
    return c * spin_mgf_log_derivative(beta, p);
}

std::pair<double, double> one_sided_derivatives_at_zero(
    const ModelSpec& model, double gamma) {
    double c = closed_form_coefficient(model, gamma);
    double slope = c * std::abs(1.0 - 2.0 * model.p());
    return {-slope, slope};
}

FreeEnergyResult dtree_q2_free_energy(int d, double p, double beta) {
    if (d < 2) throw ConfigError("d-tree requires d >= 2");
    double c = static_cast<double>(d) / (d + 1.0);
    double log_b = b_ratio(beta, p).log_b;
    FreeEnergyResult r;
    r.beta = beta;
    r.branch = branch_of(log_b);
    r.g_term = log_b > 0.0 ? c * log_b : 0.0;
    r.value = c * log_spin_mgf(beta, p) + r.g_term;
    return r;
}

FreeEnergyResult golden_mean_q2_free_energy(double p, double beta) {
    double c = (std::sqrt(5.0) - 1.0) / 2.0;
    double log_b = b_ratio(beta, p).log_b;
    FreeEnergyResult r;
    r.beta = beta;
    r.branch = branch_of(log_b);
    r.g_term = log_b > 0.0 ? c * log_b : 0.0;
    r.value = c * log_spin_mgf(beta, p) + r.g_term;
    return r;
}

}  // namespace treeldp
