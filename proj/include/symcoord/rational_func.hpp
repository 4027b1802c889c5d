#pragma once

#include "symcoord/polynomial.hpp"

namespace symcoord {

/// Quotient of two sparse polynomials.  Reduction is opportunistic: the full
/// quotient is taken when the denominator divides the numerator exactly.
class RationalFuncX {
public:
    RationalFuncX(SparsePoly num, SparsePoly den)
        : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::invalid_argument("zero denominator");
        reduce();
    }

    explicit RationalFuncX(SparsePoly num)
        : num_(std::move(num)), den_(SparsePoly::constant(num_.nvars(), 1)) {}

    const SparsePoly& num() const { return num_; }
    const SparsePoly& den() const { return den_; }
    int nvars() const { return num_.nvars(); }

    bool is_polynomial() const { return den_.is_constant(); }

    SparsePoly as_polynomial() const {
        return num_ * (Rational(1) / den_.constant_value());
    }

    RationalFuncX operator+(const RationalFuncX& o) const {
        return RationalFuncX(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }

    RationalFuncX operator-(const RationalFuncX& o) const {
        return RationalFuncX(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }

    RationalFuncX operator*(const RationalFuncX& o) const {
        return RationalFuncX(num_ * o.num_, den_ * o.den_);
    }

    RationalFuncX operator*(const Rational& c) const {
        return RationalFuncX(num_ * c, den_);
    }

    /// Quotient-rule derivative: (n'd - nd')/d^2.
    RationalFuncX derivative(int i) const {
        return RationalFuncX(
            num_.partial_derivative(i) * den_ - num_ * den_.partial_derivative(i),
            den_ * den_);
    }

    /// Equality as rational functions (cross multiplication).
    bool equals(const RationalFuncX& o) const {
        return (num_ * o.den_) == (o.num_ * den_);
    }

    Rational evaluate(const std::vector<Rational>& point) const {
        Rational d = den_.evaluate(point);
        if (d == 0) throw std::domain_error("denominator vanishes at point");
        return num_.evaluate(point) / d;
    }

private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = SparsePoly::constant(num_.nvars(), 1);
            return;
        }
        if (divides(den_, num_)) {
            num_ = exact_divide(num_, den_);
            den_ = SparsePoly::constant(num_.nvars(), 1);
        }
    }

    SparsePoly num_, den_;
};

}  // namespace symcoord
