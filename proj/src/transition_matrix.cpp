#include "treeldp/transition_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "treeldp/log_real.hpp"

namespace treeldp {

namespace {

using Matrix = std::vector<BigInt>;  // dense d x d, row-major

Matrix identity(int d) {
    Matrix r(static_cast<std::size_t>(d) * d, 0);
    for (int i = 0; i < d; ++i) r[i * d + i] = 1;
    return r;
}

Matrix to_bigint(const TransitionMatrix& m) {
    int d = m.dim();
    Matrix r(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) r[i * d + j] = m(i, j);
    return r;
}

Matrix multiply(const Matrix& a, const Matrix& b, int d) {
    Matrix r(static_cast<std::size_t>(d) * d, 0);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) {
            if (a[i * d + k] == 0) continue;
            for (int j = 0; j < d; ++j)
                r[i * d + j] += a[i * d + k] * b[k * d + j];
        }
    return r;
}

// M^n by binary exponentiation.
Matrix power(const TransitionMatrix& m, Level n) {
    int d = m.dim();
    Matrix result = identity(d);
    Matrix base = to_bigint(m);
    Level e = n;
    while (e > 0) {
        if (e & 1) result = multiply(result, base, d);
        base = multiply(base, base, d);
        e >>= 1;
    }
    return result;
}

void check_cap(Level n, Level exact_cap) {
    if (n > exact_cap)
        throw SizeLimitExceeded("exact matrix power " + std::to_string(n) +
                                " exceeds cap " + std::to_string(exact_cap));
}

// One step of scaled vector iteration: v <- v * M (row vector) or M * v,
// returning the log of the applied normalization.
double scaled_step(const TransitionMatrix& m, std::vector<double>& v,
                   bool right_multiply) {
    int d = m.dim();
    std::vector<double> w(d, 0.0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (m(i, j)) {
                if (right_multiply)
                    w[j] += v[i];  // v^T M
                else
                    w[i] += v[j];  // M v
            }
    double mx = *std::max_element(w.begin(), w.end());
    if (mx <= 0.0) {
        v.assign(d, 0.0);
        return -std::numeric_limits<double>::infinity();
    }
    for (auto& x : w) x /= mx;
    v = std::move(w);
    return std::log(mx);
}

}  // namespace

TransitionMatrix TransitionMatrix::validate(
    const std::vector<std::vector<int>>& raw) {
    using Kind = MatrixValidationError::Kind;
    int d = static_cast<int>(raw.size());
    if (d < 1) throw MatrixValidationError(Kind::NonSquare, -1, "empty matrix");
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i) {
        if (static_cast<int>(raw[i].size()) != d)
            throw MatrixValidationError(
                Kind::NonSquare, i,
                "row " + std::to_string(i) + " has wrong length");
        for (int j = 0; j < d; ++j) {
            int e = raw[i][j];
            if (e != 0 && e != 1)
                throw MatrixValidationError(
                    Kind::NonBinaryEntry, i,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) +
                        ") = " + std::to_string(e) + " is not a bit");
            bits[i * d + j] = static_cast<std::uint8_t>(e);
        }
    }
    for (int i = 0; i < d; ++i) {
        bool any = false;
        for (int j = 0; j < d; ++j) any |= bits[i * d + j] != 0;
        if (!any)
            throw MatrixValidationError(Kind::ZeroRow, i,
                                        "row " + std::to_string(i) + " is zero");
    }
    for (int j = 0; j < d; ++j) {
        bool any = false;
        for (int i = 0; i < d; ++i) any |= bits[i * d + j] != 0;
        if (!any)
            throw MatrixValidationError(
                Kind::ZeroColumn, j, "column " + std::to_string(j) + " is zero");
    }
    return TransitionMatrix(d, std::move(bits));
}

TransitionMatrix TransitionMatrix::full(int d) {
    return validate(std::vector<std::vector<int>>(d, std::vector<int>(d, 1)));
}

TransitionMatrix TransitionMatrix::golden_mean() {
    return validate({{1, 1}, {1, 0}});
}

BigInt matrix_norm_power(const TransitionMatrix& m, Level n, Level exact_cap) {
    if (n < 0) throw IndexOutOfRange("negative matrix power");
    check_cap(n, exact_cap);
    Matrix p = power(m, n);
    return std::accumulate(p.begin(), p.end(), BigInt(0));
}

BigInt level_count(const TransitionMatrix& m, Level n, Level exact_cap) {
    if (n < 0) throw IndexOutOfRange("negative level");
    if (n == 0) return 1;
    if (n == 1) return m.dim();
    return matrix_norm_power(m, n - 1, exact_cap);
}

BigInt delta_count(const TransitionMatrix& m, Level n, Level exact_cap) {
    if (n < 0) throw IndexOutOfRange("negative level");
    check_cap(std::max<Level>(n - 1, 0), exact_cap);
    // incremental row-vector powers; one multiply per level
    int d = m.dim();
    BigInt total = 1;  // root
    std::vector<BigInt> v(d, 1);  // column sums of M^0, summing to |T_1|
    for (Level lev = 1; lev <= n; ++lev) {
        total += std::accumulate(v.begin(), v.end(), BigInt(0));
        std::vector<BigInt> w(d, 0);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (m(i, j)) w[j] += v[i];
        v = std::move(w);
    }
    return total;
}

double log_level_count(const TransitionMatrix& m, Level n) {
    if (n < 0) throw IndexOutOfRange("negative level");
    if (n == 0) return 0.0;
    std::vector<double> v(m.dim(), 1.0);
    double log_scale = 0.0;
    for (Level i = 0; i < n - 1; ++i) log_scale += scaled_step(m, v, true);
    double s = std::accumulate(v.begin(), v.end(), 0.0);
    return log_scale + std::log(s);
}

double log_delta_count(const TransitionMatrix& m, Level n) {
    if (n < 0) throw IndexOutOfRange("negative level");
    double acc = 0.0;  // log |T_0|
    std::vector<double> v(m.dim(), 1.0);
    double log_scale = 0.0;
    for (Level lev = 1; lev <= n; ++lev) {
        double s = std::accumulate(v.begin(), v.end(), 0.0);
        acc = log_sum_exp(acc, log_scale + std::log(s));
        log_scale += scaled_step(m, v, true);
    }
    return acc;
}

BigInt row_sum(const TransitionMatrix& m, Level k, int i, Level exact_cap) {
    int d = m.dim();
    if (k < 1) throw IndexOutOfRange("row_sum requires k >= 1");
    if (i < 0 || i >= d) throw IndexOutOfRange("symbol out of range");
    check_cap(k - 1, exact_cap);
    Matrix p = power(m, k - 1);
    BigInt s = 0;
    for (int j = 0; j < d; ++j) s += p[i * d + j];
    return s;
}

BigInt col_sum(const TransitionMatrix& m, Level k, int j, Level exact_cap) {
    int d = m.dim();
    if (k < 1) throw IndexOutOfRange("col_sum requires k >= 1");
    if (j < 0 || j >= d) throw IndexOutOfRange("symbol out of range");
    check_cap(k - 1, exact_cap);
    Matrix p = power(m, k - 1);
    BigInt s = 0;
    for (int i = 0; i < d; ++i) s += p[i * d + j];
    return s;
}

std::vector<double> log_row_sums(const TransitionMatrix& m, Level k) {
    if (k < 1) throw IndexOutOfRange("row_sum requires k >= 1");
    int d = m.dim();
    // M^{k-1} 1 gives all row sums at once
    std::vector<double> v(d, 1.0);
    double log_scale = 0.0;
    for (Level s = 0; s < k - 1; ++s) log_scale += scaled_step(m, v, false);
    std::vector<double> out(d);
    for (int i = 0; i < d; ++i)
        out[i] = v[i] > 0.0 ? log_scale + std::log(v[i])
                            : -std::numeric_limits<double>::infinity();
    return out;
}

std::vector<double> log_col_sums(const TransitionMatrix& m, Level k) {
    if (k < 1) throw IndexOutOfRange("col_sum requires k >= 1");
    int d = m.dim();
    std::vector<double> v(d, 1.0);
    double log_scale = 0.0;
    for (Level s = 0; s < k - 1; ++s) log_scale += scaled_step(m, v, true);
    std::vector<double> out(d);
    for (int j = 0; j < d; ++j)
        out[j] = v[j] > 0.0 ? log_scale + std::log(v[j])
                            : -std::numeric_limits<double>::infinity();
    return out;
}

GrowthEstimate growth_rate(const TransitionMatrix& m, double tol,
                           int max_iter) {
    int d = m.dim();
    std::vector<double> v(d, 1.0);
    std::deque<double> window;  // last ratios
    constexpr int kWindow = 10;
    double prev_sum = static_cast<double>(d);
    double prev_spread = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= max_iter; ++it) {
        std::vector<double> w(d, 0.0);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (m(i, j)) w[i] += v[j];
        double sum = std::accumulate(w.begin(), w.end(), 0.0);
        double ratio = sum / prev_sum;
        // renormalize so sums stay bounded
        for (auto& x : w) x /= ratio;
        v = std::move(w);

        window.push_back(ratio);
        if (static_cast<int>(window.size()) > kWindow) window.pop_front();
        if (static_cast<int>(window.size()) == kWindow) {
            auto [lo, hi] = std::minmax_element(window.begin(), window.end());
            double spread = *hi - *lo;
            if (spread < tol) {
                if (ratio <= 1.0 + tol)
                    throw GrowthConditionViolated(
                        "ratio settles at gamma = " + std::to_string(ratio) +
                        " <= 1");
                return GrowthEstimate{ratio, it, spread};
            }
            // track the spread halfway through the budget to tell a
            // persistent oscillation from slow convergence
            if (it == max_iter / 2) prev_spread = spread;
            if (it == max_iter) {
                if (spread >= 0.5 * prev_spread)
                    throw GrowthConditionViolated(
                        "ratio oscillates with spread " +
                        std::to_string(spread));
                // polynomial growth creeps toward 1 too slowly for the
                // spread test; any genuine Perron root of a 0-1 matrix
                // sits well above this margin
                if (ratio <= 1.0 + 1e-6)
                    throw GrowthConditionViolated(
                        "ratio settles at gamma = " + std::to_string(ratio) +
                        " <= 1");
                throw MaxIterExceeded("growth ratio not settled after " +
                                      std::to_string(max_iter) +
                                      " iterations");
            }
        }
    }
    throw MaxIterExceeded("growth ratio not settled");
}

IdentityCheck verify_level_product_identity(const TransitionMatrix& m,
                                            const ModelSpec& model, Level k,
                                            Level exact_cap) {
    if (k < 3) throw IndexOutOfRange("identity requires k >= 3");
    int d = m.dim();
    Level target = model.target_level(k);       // a(k)k - 1
    Level fan_level = model.fan_out_level(k);   // a(k)k - k + 1
    IdentityCheck out;
    out.lhs = matrix_norm_power(m, target - 1, exact_cap);
    out.rhs = 0;
    for (int j = 0; j < d; ++j)
        out.rhs += row_sum(m, fan_level, j, exact_cap) *
                   col_sum(m, k - 1, j, exact_cap);
    out.equal = out.lhs == out.rhs;
    return out;
}

}  // namespace treeldp
