#include "treeldp/ldp_rate.hpp"

#include <cmath>
#include <limits>

namespace treeldp {

namespace {

constexpr double kBetaGuard = 700.0;  // double-precision exponential range
constexpr double kBetaTol = 1e-10;

double infinity() { return std::numeric_limits<double>::infinity(); }

RatePoint infinite_point(double x) {
    RatePoint r;
    r.eta = std::copysign(infinity(), x);
    r.y = x;
    r.value = infinity();
    r.finite = false;
    return r;
}

double log_cosh(double x) {
    double a = std::abs(x);
    return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

}  // namespace

double effective_domain_halfwidth(const ModelSpec& model, double gamma) {
    return closed_form_coefficient(model, gamma);
}

RatePoint rate_function(const ModelSpec& model, double gamma, double x) {
    double c = effective_domain_halfwidth(model, gamma);
    if (std::abs(x) >= c) return infinite_point(x);

    auto [left, right] = one_sided_derivatives_at_zero(model, gamma);
    if (x >= left && x <= right) {
        // maximizer sits on the kink (or at the smooth minimum for p=1/2);
        // I(x) = 0 * x - F(0) = 0 across the whole subgradient interval
        return RatePoint{0.0, x, 0.0, true};
    }

    // The objective beta*x - F(beta) is concave with derivative x - F'(beta)
    // strictly decreasing away from 0; bracket the sign change, then bisect.
    double sign = x > right ? 1.0 : -1.0;
    double lo = 0.0, hi = sign * 50.0;
    while (sign * (x - free_energy_derivative(model, gamma, hi)) > 0.0) {
        hi *= 2.0;
        if (std::abs(hi) > kBetaGuard) return infinite_point(x);
    }
    while (std::abs(hi - lo) > kBetaTol) {
        double mid = 0.5 * (lo + hi);
        if (sign * (x - free_energy_derivative(model, gamma, mid)) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    double eta = 0.5 * (lo + hi);
    double value = eta * x - closed_form_free_energy(model, gamma, eta).value;
    return RatePoint{eta, x, value, true};
}

RatePoint rate_at_derivative(const ModelSpec& model, double gamma,
                             double eta) {
    if (eta == 0.0 && model.p() != 0.5) {
        auto [left, right] = one_sided_derivatives_at_zero(model, gamma);
        throw KinkAtZero("F has subgradient interval [" +
                         std::to_string(left) + ", " + std::to_string(right) +
                         "] at beta = 0");
    }
    double y = free_energy_derivative(model, gamma, eta);
    double value = eta * y - closed_form_free_energy(model, gamma, eta).value;
    return RatePoint{eta, y, value, true};
}

RatePoint half_parametric(const ModelSpec& model, double gamma, double eta) {
    double c = closed_form_coefficient(model, gamma);
    double y = c * std::tanh(eta);
    double value = c * (eta * std::tanh(eta) - log_cosh(eta));
    return RatePoint{eta, y, value, true};
}

}  // namespace treeldp
