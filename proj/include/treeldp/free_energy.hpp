#pragma once

#include <optional>
#include <utility>

#include "treeldp/ising_blocks.hpp"
#include "treeldp/model.hpp"
#include "treeldp/transition_matrix.hpp"

namespace treeldp {

enum class Branch {
    Subcritical,    // B < 1
    Critical,       // B = 1
    Supercritical,  // B > 1
};

struct FreeEnergyResult {
    double beta = 0.0;
    double value = 0.0;
    double g_term = 0.0;
    Branch branch = Branch::Critical;
    std::optional<Level> n_used;  // empty for the closed form
};

// Leading coefficient of the closed form: (gamma-1)/gamma for Type I,
// gamma^{q-1}(gamma-1)/(gamma^q - 1) for Type II.
double closed_form_coefficient(const ModelSpec& model, double gamma);

// F = c * log(p e^b + (1-p) e^-b) + G, with G = c * log B when B > 1 and 0
// otherwise.
FreeEnergyResult closed_form_free_energy(const ModelSpec& model, double gamma,
                                         double beta);

// Truncated finite-N free energy via the tree-block factorization,
// normalized by |Delta_{a(N)N-1}|. All weights are carried in log domain.
FreeEnergyResult finite_free_energy(const ModelSpec& model,
                                    const TransitionMatrix& m, Level n,
                                    double beta);

// The correction sum alone: sum_k sum_j (C(k-1,j)/|Delta|) log(1 + E-/E+).
double g_term_finite(const ModelSpec& model, const TransitionMatrix& m,
                     Level n, double beta);

// Unnormalized log of the factorized truncated MGF, with exact integer
// weights; the quantity exact enumeration must reproduce.
double log_truncated_mgf_factorized(const ModelSpec& model,
                                    const TransitionMatrix& m, Level n,
                                    double beta,
                                    Level exact_cap = kDefaultExactCap);

// Analytic derivative of the closed form. Throws KinkAtZero at beta = 0
// when p != 1/2; use one_sided_derivatives_at_zero there.
double free_energy_derivative(const ModelSpec& model, double gamma,
                              double beta);

// (left, right) branch derivatives at beta = 0: -c|1-2p| and +c|1-2p|.
std::pair<double, double> one_sided_derivatives_at_zero(const ModelSpec& model,
                                                        double gamma);

// The worked Type II q=2 formulas for the two reference trees; must agree
// with closed_form_free_energy at the matching gamma.
FreeEnergyResult dtree_q2_free_energy(int d, double p, double beta);
FreeEnergyResult golden_mean_q2_free_energy(double p, double beta);

}  // namespace treeldp
