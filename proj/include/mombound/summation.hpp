#pragma once

#ifdef __FAST_MATH__
#error "fast-math reassociation defeats compensated summation"
#endif

#include <cmath>

namespace mombound {

// Neumaier's variant of Kahan summation: the carry also survives terms that
// are larger in magnitude than the running sum.
class CompensatedSum {
public:
    CompensatedSum() = default;
    explicit CompensatedSum(double init) : sum_(init) {}

    CompensatedSum& operator+=(double x) noexcept {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
        return *this;
    }

    double value() const noexcept { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

}  // namespace mombound
