#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "symcoord/rational.hpp"

namespace symcoord {

/// Sparse multivariate polynomial in nvars variables over exact rationals.
/// Terms are keyed by dense exponent vectors; no zero coefficients are stored.
/// The std::map's lexicographic vector order doubles as the monomial order.
class SparsePoly {
public:
    using Exponents = std::vector<int>;
    using TermMap = std::map<Exponents, Rational>;

    explicit SparsePoly(int nvars = 0) : nvars_(nvars) {}

    static SparsePoly constant(int nvars, const Rational& c) {
        SparsePoly p(nvars);
        p.add_term(Exponents(nvars, 0), c);
        return p;
    }

    static SparsePoly variable(int nvars, int i, int power = 1) {
        if (i < 0 || i >= nvars) throw std::invalid_argument("variable index out of range");
        SparsePoly p(nvars);
        Exponents e(nvars, 0);
        e[i] = power;
        p.add_term(e, 1);
        return p;
    }

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        if (terms_.empty()) return true;
        if (terms_.size() > 1) return false;
        for (int e : terms_.begin()->first)
            if (e) return false;
        return true;
    }

    Rational constant_value() const {
        if (terms_.empty()) return 0;
        if (!is_constant()) throw std::logic_error("polynomial is not constant");
        return terms_.begin()->second;
    }

    void add_term(const Exponents& e, const Rational& c) {
        if (static_cast<int>(e.size()) != nvars_)
            throw std::invalid_argument("exponent vector length mismatch");
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    int total_degree() const {
        int d = -1;
        for (auto& [e, c] : terms_) {
            int s = 0;
            for (int x : e) s += x;
            d = std::max(d, s);
        }
        return d;  // -1 for the zero polynomial
    }

    bool is_homogeneous() const {
        int d = -2;
        for (auto& [e, c] : terms_) {
            int s = 0;
            for (int x : e) s += x;
            if (d == -2) d = s;
            else if (s != d) return false;
        }
        return true;
    }

    SparsePoly operator+(const SparsePoly& o) const {
        check_nvars(o);
        SparsePoly r = *this;
        for (auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }

    SparsePoly operator-(const SparsePoly& o) const {
        check_nvars(o);
        SparsePoly r = *this;
        for (auto& [e, c] : o.terms_) r.add_term(e, -c);
        return r;
    }

    SparsePoly operator-() const {
        SparsePoly r(nvars_);
        for (auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    SparsePoly operator*(const SparsePoly& o) const {
        check_nvars(o);
        SparsePoly r(nvars_);
        for (auto& [e1, c1] : terms_)
            for (auto& [e2, c2] : o.terms_) {
                Exponents e(nvars_);
                for (int i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
                r.add_term(e, c1 * c2);
            }
        return r;
    }

    SparsePoly operator*(const Rational& c) const {
        SparsePoly r(nvars_);
        if (c == 0) return r;
        for (auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
        return r;
    }

    SparsePoly& operator+=(const SparsePoly& o) { return *this = *this + o; }
    SparsePoly& operator-=(const SparsePoly& o) { return *this = *this - o; }
    SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }

    bool operator==(const SparsePoly& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }

    SparsePoly partial_derivative(int i) const {
        if (i < 0 || i >= nvars_) throw std::invalid_argument("variable index out of range");
        SparsePoly r(nvars_);
        for (auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Exponents ne = e;
            ne[i] -= 1;
            r.add_term(ne, c * e[i]);
        }
        return r;
    }

    /// Substitute values for a subset of variables; remaining variables stay.
    SparsePoly substitute_values(const std::map<int, Rational>& assignment) const {
        SparsePoly r(nvars_);
        for (auto& [e, c] : terms_) {
            Rational coeff = c;
            Exponents ne = e;
            for (auto& [i, v] : assignment) {
                for (int k = 0; k < e[i]; ++k) coeff *= v;
                ne[i] = 0;
            }
            r.add_term(ne, coeff);
        }
        return r;
    }

    /// Substitute a polynomial for a single variable.
    SparsePoly substitute_poly(int var, const SparsePoly& q) const {
        check_nvars(q);
        SparsePoly r(nvars_);
        for (auto& [e, c] : terms_) {
            Exponents ne = e;
            ne[var] = 0;
            SparsePoly term(nvars_);
            term.add_term(ne, c);
            for (int k = 0; k < e[var]; ++k) term *= q;
            r += term;
        }
        return r;
    }

    Rational evaluate(const std::vector<Rational>& point) const {
        if (static_cast<int>(point.size()) != nvars_)
            throw std::invalid_argument("point dimension mismatch");
        Rational acc = 0;
        for (auto& [e, c] : terms_) {
            Rational t = c;
            for (int i = 0; i < nvars_; ++i)
                for (int k = 0; k < e[i]; ++k) t *= point[i];
            acc += t;
        }
        return acc;
    }

    double evaluate_double(const std::vector<double>& point) const {
        double acc = 0;
        for (auto& [e, c] : terms_) {
            double t = static_cast<double>(c);
            for (int i = 0; i < nvars_; ++i)
                for (int k = 0; k < e[i]; ++k) t *= point[i];
            acc += t;
        }
        return acc;
    }

    /// Apply a permutation of the variables: x_i -> x_{perm[i]}.
    SparsePoly permute_vars(const std::vector<int>& perm) const {
        SparsePoly r(nvars_);
        for (auto& [e, c] : terms_) {
            Exponents ne(nvars_, 0);
            for (int i = 0; i < nvars_; ++i) ne[perm[i]] = e[i];
            r.add_term(ne, c);
        }
        return r;
    }

    /// Invariance under all adjacent transpositions.
    bool is_symmetric() const {
        std::vector<int> perm(nvars_);
        for (int i = 0; i + 1 < nvars_; ++i) {
            for (int j = 0; j < nvars_; ++j) perm[j] = j;
            std::swap(perm[i], perm[i + 1]);
            if (!(permute_vars(perm) == *this)) return false;
        }
        return true;
    }

    std::string str() const;

private:
    void check_nvars(const SparsePoly& o) const {
        if (nvars_ != o.nvars_) throw std::invalid_argument("nvars mismatch");
    }

    int nvars_;
    TermMap terms_;
};

inline SparsePoly operator*(const Rational& c, const SparsePoly& p) { return p * c; }

struct NotDivisibleError : std::runtime_error {
    SparsePoly remainder;
    explicit NotDivisibleError(SparsePoly rem)
        : std::runtime_error("polynomial division left a nonzero remainder"),
          remainder(std::move(rem)) {}
};

/// Exact quotient p/q.  Throws NotDivisibleError (carrying the remainder witness)
/// if q does not divide p.  Division is by leading terms in lex order; for an
/// exact divisor this terminates with zero remainder.
inline SparsePoly exact_divide(const SparsePoly& p, const SparsePoly& q) {
    if (q.is_zero()) throw std::invalid_argument("division by the zero polynomial");
    if (p.nvars() != q.nvars()) throw std::invalid_argument("nvars mismatch");
    SparsePoly rem = p, quot(p.nvars());
    auto ltq = *q.terms().rbegin();
    while (!rem.is_zero()) {
        auto ltr = *rem.terms().rbegin();
        SparsePoly::Exponents diff(p.nvars());
        bool divisible = true;
        for (int i = 0; i < p.nvars(); ++i) {
            diff[i] = ltr.first[i] - ltq.first[i];
            if (diff[i] < 0) { divisible = false; break; }
        }
        if (!divisible) throw NotDivisibleError(rem);
        SparsePoly t(p.nvars());
        t.add_term(diff, ltr.second / ltq.second);
        quot += t;
        rem -= t * q;
    }
    return quot;
}

inline bool divides(const SparsePoly& q, const SparsePoly& p) {
    try {
        exact_divide(p, q);
        return true;
    } catch (const NotDivisibleError&) {
        return false;
    }
}

// ---- text format ----------------------------------------------------------
// header "nvars=<N>", then one term per line: "<num>/<den> : <e_1> ... <e_N>",
// terms in descending lex order.  Bit-exact round trip.

inline void write_poly(std::ostream& os, const SparsePoly& p) {
    os << "nvars=" << p.nvars() << "\n";
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        os << numerator(it->second) << "/" << denominator(it->second) << " :";
        for (int e : it->first) os << " " << e;
        os << "\n";
    }
}

inline SparsePoly read_poly(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("empty polynomial input");
    if (line.rfind("nvars=", 0) != 0) throw std::runtime_error("expected nvars= header");
    int nvars = std::stoi(line.substr(6));
    SparsePoly p(nvars);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) throw std::runtime_error("malformed term line");
        Rational c = parse_rational(line.substr(0, line.find(' ')));
        std::stringstream ss(line.substr(colon + 1));
        SparsePoly::Exponents e;
        int x;
        while (ss >> x) e.push_back(x);
        if (static_cast<int>(e.size()) != nvars) throw std::runtime_error("bad exponent count");
        p.add_term(e, c);
    }
    return p;
}

inline std::string SparsePoly::str() const {
    std::ostringstream os;
    write_poly(os, *this);
    return os.str();
}

}  // namespace symcoord
