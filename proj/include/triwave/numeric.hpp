#pragma once

namespace triwave {

/// Compensated (Kahan) accumulator for long sums of small terms.
class KahanSum {
public:
    void add(double x) {
        const double y = x - compensation_;
        const double t = sum_ + y;
        compensation_ = (t - sum_) - y;
        sum_ = t;
    }

    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

}  // namespace triwave
