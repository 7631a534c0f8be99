#pragma once

#include "treeldp/free_energy.hpp"
#include "treeldp/model.hpp"

namespace treeldp {

// One point on the rate-function curve.
struct RatePoint {
    double eta = 0.0;    // maximizing beta (or subgradient selection)
    double y = 0.0;      // the queried x
    double value = 0.0;  // I(y); +inf when !finite
    bool finite = true;
};

// Asymptotic slope c of the closed-form free energy; I is finite exactly on
// (-c, c). Boundary points report +inf.
double effective_domain_halfwidth(const ModelSpec& model, double gamma);

// I(x) = sup_beta (beta x - F(beta)), by bisection on the (one-sided)
// derivative of the concave objective. Handles the possible kink of F at
// beta = 0 without special-casing p.
RatePoint rate_function(const ModelSpec& model, double gamma, double x);

// Evaluate the transform at a chosen slope point: y = F'(eta),
// I(y) = eta*y - F(eta). Throws KinkAtZero for eta = 0 with p != 1/2.
RatePoint rate_at_derivative(const ModelSpec& model, double gamma, double eta);

// Closed parametric form at p = 1/2:
// y = c tanh(eta), I = c (eta tanh(eta) - log cosh(eta)).
RatePoint half_parametric(const ModelSpec& model, double gamma, double eta);

}  // namespace treeldp
