#pragma once

#include <cmath>
#include <complex>

namespace bargwig {

/// Neumaier's variant of Kahan summation.
class NeumaierSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    [[nodiscard]] double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class ComplexNeumaierSum {
public:
    void add(std::complex<double> x) {
        re_.add(x.real());
        im_.add(x.imag());
    }

    [[nodiscard]] std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    NeumaierSum re_;
    NeumaierSum im_;
};

}  // namespace bargwig
