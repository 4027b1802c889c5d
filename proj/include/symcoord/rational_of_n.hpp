#pragma once

#include <limits>
#include <string>
#include <vector>

#include "symcoord/rational.hpp"

namespace symcoord {

/// Dense univariate polynomial with integer coefficients, coeffs[k] = coeff of N^k.
struct UniPoly {
    std::vector<Int> coeffs;

    UniPoly() = default;
    UniPoly(std::initializer_list<Int> c) : coeffs(c) { trim(); }
    explicit UniPoly(std::vector<Int> c) : coeffs(std::move(c)) { trim(); }

    static UniPoly constant(Int c) { return UniPoly({std::move(c)}); }

    void trim() {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }

    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }  // -1 if zero

    UniPoly operator+(const UniPoly& o) const {
        std::vector<Int> c(std::max(coeffs.size(), o.coeffs.size()), 0);
        for (size_t i = 0; i < coeffs.size(); ++i) c[i] += coeffs[i];
        for (size_t i = 0; i < o.coeffs.size(); ++i) c[i] += o.coeffs[i];
        return UniPoly(std::move(c));
    }

    UniPoly operator-(const UniPoly& o) const {
        std::vector<Int> c(std::max(coeffs.size(), o.coeffs.size()), 0);
        for (size_t i = 0; i < coeffs.size(); ++i) c[i] += coeffs[i];
        for (size_t i = 0; i < o.coeffs.size(); ++i) c[i] -= o.coeffs[i];
        return UniPoly(std::move(c));
    }

    UniPoly operator*(const UniPoly& o) const {
        if (is_zero() || o.is_zero()) return UniPoly();
        std::vector<Int> c(coeffs.size() + o.coeffs.size() - 1, 0);
        for (size_t i = 0; i < coeffs.size(); ++i)
            for (size_t j = 0; j < o.coeffs.size(); ++j) c[i + j] += coeffs[i] * o.coeffs[j];
        return UniPoly(std::move(c));
    }

    bool operator==(const UniPoly& o) const { return coeffs == o.coeffs; }

    Rational evaluate(const Int& n) const {
        Rational acc = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * Rational(n) + Rational(*it);
        return acc;
    }

    Int content() const {
        Int g = 0;
        for (auto& c : coeffs) g = gcd(g, c);
        return g;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (size_t i = 0; i < coeffs.size(); ++i) {
            if (i) s += " ";
            s += coeffs[i].str();
        }
        return s;  // ascending powers of N
    }
};

namespace detail {

// gcd of integer polynomials via rational Euclid, returned primitive with
// positive leading coefficient
inline UniPoly unipoly_gcd(UniPoly a, UniPoly b) {
    auto to_rat = [](const UniPoly& p) {
        std::vector<Rational> c;
        for (auto& x : p.coeffs) c.emplace_back(x);
        return c;
    };
    std::vector<Rational> ra = to_rat(a), rb = to_rat(b);
    auto deg = [](const std::vector<Rational>& p) { return static_cast<int>(p.size()) - 1; };
    auto trim = [](std::vector<Rational>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    };
    trim(ra); trim(rb);
    while (!rb.empty()) {
        // ra mod rb
        while (deg(ra) >= deg(rb) && !ra.empty()) {
            Rational f = ra.back() / rb.back();
            int shift = deg(ra) - deg(rb);
            for (size_t i = 0; i < rb.size(); ++i) ra[i + shift] -= f * rb[i];
            trim(ra);
        }
        std::swap(ra, rb);
    }
    if (ra.empty()) return UniPoly();
    // clear denominators, make primitive, positive leading coefficient
    Int lcm = 1;
    for (auto& c : ra) lcm = lcm / gcd(lcm, denominator(c)) * denominator(c);
    std::vector<Int> ic;
    for (auto& c : ra) ic.push_back(numerator(c) * (lcm / denominator(c)));
    UniPoly g(std::move(ic));
    Int cont = g.content();
    if (cont != 0)
        for (auto& c : g.coeffs) c /= cont;
    if (!g.coeffs.empty() && g.coeffs.back() < 0)
        for (auto& c : g.coeffs) c = -c;
    return g;
}

inline UniPoly unipoly_exact_div(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> r;
    for (auto& c : a.coeffs) r.emplace_back(c);
    std::vector<Rational> q(a.coeffs.size(), 0);
    auto trim = [](std::vector<Rational>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    };
    trim(r);
    while (!r.empty() && static_cast<int>(r.size()) >= static_cast<int>(b.coeffs.size())) {
        Rational f = r.back() / Rational(b.coeffs.back());
        int shift = static_cast<int>(r.size()) - static_cast<int>(b.coeffs.size());
        q[shift] = f;
        for (size_t i = 0; i < b.coeffs.size(); ++i) r[i + shift] -= f * Rational(b.coeffs[i]);
        trim(r);
    }
    if (!r.empty()) throw std::logic_error("inexact univariate division");
    std::vector<Int> ic;
    for (auto& c : q) {
        if (denominator(c) != 1) throw std::logic_error("non-integer quotient");
        ic.push_back(numerator(c));
    }
    return UniPoly(std::move(ic));
}

}  // namespace detail

/// Quotient of integer-coefficient polynomials in the symbolic variable N,
/// stored reduced (gcd removed, primitive, positive leading denominator).
class RationalOfN {
public:
    static constexpr int kInfiniteDecay = std::numeric_limits<int>::max();

    RationalOfN() : num_(), den_(UniPoly::constant(1)) {}

    RationalOfN(UniPoly num, UniPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::invalid_argument("zero denominator");
        reduce();
    }

    static RationalOfN constant(const Rational& q) {
        return RationalOfN(UniPoly::constant(numerator(q)), UniPoly::constant(denominator(q)));
    }

    /// c / prod_{j=0}^{k-1}(N-j) building block.
    static RationalOfN over_falling_factorial(const Rational& c, int k) {
        UniPoly den = UniPoly::constant(denominator(c));
        for (int j = 0; j < k; ++j) den = den * UniPoly({-Int(j), 1});
        return RationalOfN(UniPoly::constant(numerator(c)), std::move(den));
    }

    const UniPoly& num() const { return num_; }
    const UniPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RationalOfN operator+(const RationalOfN& o) const {
        return RationalOfN(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    RationalOfN operator-(const RationalOfN& o) const {
        return RationalOfN(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    RationalOfN operator*(const RationalOfN& o) const {
        return RationalOfN(num_ * o.num_, den_ * o.den_);
    }
    RationalOfN operator/(const RationalOfN& o) const {
        if (o.is_zero()) throw std::domain_error("division by the zero function");
        return RationalOfN(num_ * o.den_, den_ * o.num_);
    }

    bool operator==(const RationalOfN& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }

    /// deg(den) - deg(num) after reduction; +infinity sentinel for zero.
    int decay_order() const {
        if (num_.is_zero()) return kInfiniteDecay;
        return den_.degree() - num_.degree();
    }

    Rational evaluate(const Int& n) const {
        Rational d = den_.evaluate(n);
        if (d == 0) throw std::domain_error("denominator vanishes at N");
        return num_.evaluate(n) / d;
    }

    std::string str() const { return num_.str() + " / " + den_.str(); }

private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = UniPoly::constant(1);
            return;
        }
        UniPoly g = detail::unipoly_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = detail::unipoly_exact_div(num_, g);
            den_ = detail::unipoly_exact_div(den_, g);
        }
        Int cg = gcd(num_.content(), den_.content());
        if (cg > 1) {
            for (auto& c : num_.coeffs) c /= cg;
            for (auto& c : den_.coeffs) c /= cg;
        }
        if (den_.coeffs.back() < 0) {
            for (auto& c : num_.coeffs) c = -c;
            for (auto& c : den_.coeffs) c = -c;
        }
    }

    UniPoly num_, den_;
};

}  // namespace symcoord
