#pragma once

#include <cstdint>
#include <string>

#include "treeldp/errors.hpp"

namespace treeldp {

enum class ModelKind {
    PowerAlpha,  // couplings sigma_i sigma_{i^alpha}
    LinearQ,     // couplings sigma_i sigma_{qi}
};

// Model family plus the Bernoulli parameter of the spin measure.
class ModelSpec {
  public:
    static ModelSpec power(int alpha, double p) {
        if (alpha < 2) throw ConfigError("alpha must be >= 2");
        return ModelSpec(ModelKind::PowerAlpha, alpha, p);
    }

    static ModelSpec linear(int q, double p) {
        if (q < 2) throw ConfigError("q must be >= 2");
        return ModelSpec(ModelKind::LinearQ, q, p);
    }

    ModelKind kind() const { return kind_; }
    double p() const { return p_; }

    // alpha for PowerAlpha, q for LinearQ
    int order() const { return order_; }

    // Index of the last coupling term discarded by truncation:
    // floor(N^{1/alpha}) resp. floor(N/q).
    std::int64_t head_cutoff(std::int64_t n) const {
        if (kind_ == ModelKind::LinearQ) return n / order_;
        std::int64_t k = 0;
        while (ipow(k + 1, order_) <= n) ++k;
        return k;
    }

    // Level of the spins coupled to level k-1, i.e. a(k)*k - 1.
    std::int64_t target_level(std::int64_t k) const {
        if (kind_ == ModelKind::LinearQ)
            return static_cast<std::int64_t>(order_) * k - 1;
        return ipow(k, order_) - 1;
    }

    // Row-sum level whose sums give the per-block fan-out:
    // k^alpha - k + 1 resp. (q-1)k + 1.
    std::int64_t fan_out_level(std::int64_t k) const {
        return target_level(k) - (k - 1) + 1;
    }

    std::string name() const {
        if (kind_ == ModelKind::LinearQ)
            return "linear(q=" + std::to_string(order_) + ")";
        return "power(alpha=" + std::to_string(order_) + ")";
    }

  private:
    ModelSpec(ModelKind kind, int order, double p)
        : kind_(kind), order_(order), p_(p) {
        if (!(p > 0.0 && p < 1.0))
            throw ConfigError("p must lie strictly inside (0,1)");
    }

    static std::int64_t ipow(std::int64_t base, int exp) {
        std::int64_t r = 1;
        for (int i = 0; i < exp; ++i) {
            if (base != 0 && r > (std::int64_t{1} << 50) / base)
                throw SizeLimitExceeded("level index overflow in k^alpha");
            r *= base;
        }
        return r;
    }

    ModelKind kind_;
    int order_;
    double p_;
};

}  // namespace treeldp
