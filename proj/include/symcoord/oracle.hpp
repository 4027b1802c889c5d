#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "symcoord/polynomial.hpp"

namespace symcoord {

/// Univariate polynomial helpers for trace functions, coeffs[k] = coeff of x^k.
inline std::vector<Rational> univariate_derivative(std::vector<Rational> c, int times = 1) {
    for (int t = 0; t < times; ++t) {
        std::vector<Rational> d;
        for (size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * Rational(k));
        c = std::move(d);
    }
    return c;
}

inline Rational univariate_eval(const std::vector<Rational>& c, const Rational& x) {
    Rational acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

/// Symmetric test function with exact derivatives where possible.
/// polynomial: a SparsePoly, partials by symbolic differentiation.
/// trace: phi(x) = sum_i f(x_i) for a univariate polynomial f; mixed partials
///        across distinct variables vanish identically.
/// blackbox: double evaluation only (finite differences live in the harness).
class FunctionOracle {
public:
    enum class Kind { polynomial, trace, blackbox };

    static FunctionOracle from_poly(SparsePoly p) {
        FunctionOracle o;
        o.kind_ = Kind::polynomial;
        o.nvars_ = p.nvars();
        o.poly_ = std::move(p);
        return o;
    }

    static FunctionOracle from_trace(std::vector<Rational> fcoeffs, int nvars) {
        FunctionOracle o;
        o.kind_ = Kind::trace;
        o.nvars_ = nvars;
        o.fcoeffs_ = std::move(fcoeffs);
        return o;
    }

    static FunctionOracle from_blackbox(int nvars,
                                        std::function<double(const std::vector<double>&)> fn) {
        FunctionOracle o;
        o.kind_ = Kind::blackbox;
        o.nvars_ = nvars;
        o.fn_ = std::move(fn);
        return o;
    }

    Kind kind() const { return kind_; }
    int nvars() const { return nvars_; }
    bool exact() const { return kind_ != Kind::blackbox; }
    const SparsePoly& poly() const { return poly_; }
    const std::vector<Rational>& trace_coeffs() const { return fcoeffs_; }

    Rational evaluate(const std::vector<Rational>& x) const {
        require_exact();
        if (kind_ == Kind::polynomial) return poly_.evaluate(x);
        Rational acc = 0;
        for (auto& xi : x) acc += univariate_eval(fcoeffs_, xi);
        return acc;
    }

    /// Mixed partial of the given per-variable orders, evaluated exactly.
    Rational partial(const std::vector<int>& orders, const std::vector<Rational>& x) const {
        require_exact();
        if (static_cast<int>(orders.size()) != nvars_)
            throw std::invalid_argument("order vector length mismatch");
        if (kind_ == Kind::polynomial) {
            SparsePoly q = poly_;
            for (int i = 0; i < nvars_; ++i)
                for (int k = 0; k < orders[i]; ++k) q = q.partial_derivative(i);
            return q.evaluate(x);
        }
        int active = -1;
        for (int i = 0; i < nvars_; ++i) {
            if (orders[i] == 0) continue;
            if (active >= 0) return 0;  // mixed partial of a trace function
            active = i;
        }
        if (active < 0) return evaluate(x);
        return univariate_eval(univariate_derivative(fcoeffs_, orders[active]), x[active]);
    }

    double evaluate_double(const std::vector<double>& x) const {
        if (kind_ == Kind::blackbox) return fn_(x);
        std::vector<Rational> rx;
        for (double v : x) rx.emplace_back(v);
        return static_cast<double>(evaluate(rx));
    }

private:
    void require_exact() const {
        if (!exact()) throw std::logic_error("black-box oracle has no exact evaluation");
    }

    Kind kind_ = Kind::blackbox;
    int nvars_ = 0;
    SparsePoly poly_{0};
    std::vector<Rational> fcoeffs_;
    std::function<double(const std::vector<double>&)> fn_;
};

}  // namespace symcoord
