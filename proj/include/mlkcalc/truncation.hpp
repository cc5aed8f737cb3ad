#pragma once

#include <cmath>
#include <cstdlib>

namespace mlk {

// Governs every infinite series in the library.  A series is stopped once
// |term| <= abs_tol + rel_tol*|partial_sum| for three consecutive terms
// (guards against sign-alternating terms that dip through zero), and aborted
// with NoConvergence when max_terms is reached first.
struct TruncationPolicy {
    double abs_tol = 1e-14;
    double rel_tol = 1e-14;
    int max_terms = 10000;
};

// Kahan-compensated series accumulator implementing the stopping rule above.
class SeriesSum {
public:
    explicit SeriesSum(const TruncationPolicy& pol) : pol_(pol) {}

    // Adds one term; returns true once the stopping rule is satisfied.
    bool add(double term) {
        const long double y = static_cast<long double>(term) - comp_;
        const long double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
        ++count_;
        const double thresh =
            pol_.abs_tol + pol_.rel_tol * std::fabs(static_cast<double>(sum_));
        small_run_ = (std::fabs(term) <= thresh) ? small_run_ + 1 : 0;
        return small_run_ >= 3;
    }

    bool exhausted() const { return count_ >= pol_.max_terms; }
    double value() const { return static_cast<double>(sum_); }
    int terms() const { return count_; }

private:
    TruncationPolicy pol_;
    long double sum_ = 0.0L;
    long double comp_ = 0.0L;
    int count_ = 0;
    int small_run_ = 0;
};

} // namespace mlk
