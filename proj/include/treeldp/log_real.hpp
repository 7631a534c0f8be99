#pragma once

#include <cmath>
#include <limits>

namespace treeldp {

inline double log_sum_exp(double a, double b) {
    if (std::isinf(a) && a < 0) return b;
    if (std::isinf(b) && b < 0) return a;
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

// Nonnegative real carried as its natural logarithm; -inf encodes zero.
class LogReal {
  public:
    LogReal() : log_(-std::numeric_limits<double>::infinity()) {}

    static LogReal from_log(double lv) {
        LogReal r;
        r.log_ = lv;
        return r;
    }

    static LogReal from_value(double v) { return from_log(std::log(v)); }

    static LogReal zero() { return LogReal(); }
    static LogReal one() { return from_log(0.0); }

    double log() const { return log_; }
    bool is_zero() const { return std::isinf(log_) && log_ < 0; }

    // exp of the stored log; may overflow to +inf for large magnitudes
    double value() const { return std::exp(log_); }

    LogReal& operator+=(LogReal o) {
        log_ = log_sum_exp(log_, o.log_);
        return *this;
    }
    LogReal& operator*=(LogReal o) {
        log_ += o.log_;
        return *this;
    }

    friend LogReal operator+(LogReal a, LogReal b) { return a += b; }
    friend LogReal operator*(LogReal a, LogReal b) { return a *= b; }

    friend LogReal pow(LogReal a, double e) { return from_log(a.log_ * e); }

    friend bool operator<(LogReal a, LogReal b) { return a.log_ < b.log_; }
    friend bool operator>(LogReal a, LogReal b) { return a.log_ > b.log_; }

  private:
    double log_;
};

}  // namespace treeldp
