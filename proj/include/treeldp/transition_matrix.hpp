#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "treeldp/errors.hpp"
#include "treeldp/model.hpp"

namespace treeldp {

using BigInt = boost::multiprecision::cpp_int;

// Level indices and matrix-power exponents.
using Level = std::int64_t;

// Default cap on exact matrix-power exponents; beyond it callers must use
// the log-domain variants.
inline constexpr Level kDefaultExactCap = 64;

// Essential d x d 0-1 transition matrix of a Markov-Cayley tree.
class TransitionMatrix {
  public:
    // Throws MatrixValidationError on non-square/non-binary input or a zero
    // row/column. Symbols are 0-based throughout the API.
    static TransitionMatrix validate(const std::vector<std::vector<int>>& raw);

    int dim() const { return d_; }
    int operator()(int i, int j) const { return bits_[i * d_ + j]; }

    // d-tree adjacency (all ones).
    static TransitionMatrix full(int d);
    // Golden-mean adjacency [[1,1],[1,0]].
    static TransitionMatrix golden_mean();

  private:
    TransitionMatrix(int d, std::vector<std::uint8_t> bits)
        : d_(d), bits_(std::move(bits)) {}

    int d_;
    std::vector<std::uint8_t> bits_;
};

// ||M^n|| = 1^T M^n 1, exact.
BigInt matrix_norm_power(const TransitionMatrix& m, Level n,
                         Level exact_cap = kDefaultExactCap);

// |T_n|: 1 for n=0, d for n=1, ||M^{n-1}|| for n>=2.
BigInt level_count(const TransitionMatrix& m, Level n,
                   Level exact_cap = kDefaultExactCap);

// |Delta_n| = sum of |T_0..n|.
BigInt delta_count(const TransitionMatrix& m, Level n,
                   Level exact_cap = kDefaultExactCap);

// Log-domain companions, valid for any level.
double log_level_count(const TransitionMatrix& m, Level n);
double log_delta_count(const TransitionMatrix& m, Level n);

// R(k,i): row sum of M^{k-1}, the number of length-k words starting at i.
BigInt row_sum(const TransitionMatrix& m, Level k, int i,
               Level exact_cap = kDefaultExactCap);
// C(k,j): column sum of M^{k-1}, the number of length-k words ending in j.
BigInt col_sum(const TransitionMatrix& m, Level k, int j,
               Level exact_cap = kDefaultExactCap);

// log R(k,i) / log C(k,j) for all symbols at once, via scaled vector
// iteration; entry is -inf when the exact sum is zero.
std::vector<double> log_row_sums(const TransitionMatrix& m, Level k);
std::vector<double> log_col_sums(const TransitionMatrix& m, Level k);

struct GrowthEstimate {
    double gamma = 0.0;
    int iterations = 0;
    double residual = 0.0;  // spread of the last ratio window
};

// gamma = lim ||M^{n+1}||/||M^n||, by normalized vector iteration with
// ratio-convergence stopping. Throws GrowthConditionViolated when the
// ratios oscillate or settle at <= 1 + tol, MaxIterExceeded otherwise.
GrowthEstimate growth_rate(const TransitionMatrix& m, double tol = 1e-12,
                           int max_iter = 100000);

struct IdentityCheck {
    BigInt lhs;  // ||M^{a(k)k - 2}||
    BigInt rhs;  // sum_j R(a(k)k - k + 1, j) * C(k-1, j)
    bool equal = false;
};

// Exact check that the coupled level's node count factors through row and
// column sums. The power exponents grow like k^alpha, hence the larger cap.
IdentityCheck verify_level_product_identity(const TransitionMatrix& m,
                                            const ModelSpec& model, Level k,
                                            Level exact_cap = 4096);

}  // namespace treeldp
