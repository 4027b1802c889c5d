#pragma once

#include <future>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "symcoord/rational_func.hpp"
#include "symcoord/symmetric.hpp"

namespace symcoord {

namespace detail {

/// Vandermonde prod_{a<b in I}(x_a - x_b), I given in ascending order.
inline SparsePoly vandermonde(const std::vector<int>& I, int nvars) {
    SparsePoly v = SparsePoly::constant(nvars, 1);
    for (size_t a = 0; a < I.size(); ++a)
        for (size_t b = a + 1; b < I.size(); ++b)
            v *= SparsePoly::variable(nvars, I[a]) - SparsePoly::variable(nvars, I[b]);
    return v;
}

/// Numerator of D_I p over the Vandermonde of I:
///   sum_{i in I} dp/dx_i * (-1)^{#{j in I : j > i}} * V_{I \ {i}}.
inline SparsePoly DI_numerator(const SparsePoly& p, const std::vector<int>& I) {
    int nvars = p.nvars();
    SparsePoly acc(nvars);
    for (size_t pos = 0; pos < I.size(); ++pos) {
        std::vector<int> rest;
        for (size_t q = 0; q < I.size(); ++q)
            if (q != pos) rest.push_back(I[q]);
        SparsePoly term = p.partial_derivative(I[pos]) * vandermonde(rest, nvars);
        if ((I.size() - 1 - pos) % 2) term = -term;
        acc += term;
    }
    return acc;
}

}  // namespace detail

/// D_I p as a polynomial; throws NotDivisibleError if the Vandermonde does not
/// divide the numerator (p not symmetric under permutations of I).
inline SparsePoly apply_DI_poly(const SparsePoly& p, std::vector<int> I) {
    if (I.empty()) throw std::invalid_argument("I must be nonempty");
    std::sort(I.begin(), I.end());
    if (I.front() < 0 || I.back() >= p.nvars())
        throw std::invalid_argument("index out of range");
    return exact_divide(detail::DI_numerator(p, I), detail::vandermonde(I, p.nvars()));
}

/// D_I p as a rational function (always defined).
inline RationalFuncX apply_DI_rational(const SparsePoly& p, std::vector<int> I) {
    if (I.empty()) throw std::invalid_argument("I must be nonempty");
    std::sort(I.begin(), I.end());
    if (I.front() < 0 || I.back() >= p.nvars())
        throw std::invalid_argument("index out of range");
    return RationalFuncX(detail::DI_numerator(p, I), detail::vandermonde(I, p.nvars()));
}

/// require_polynomial selects the return arm; with true, non-divisibility throws.
inline std::variant<SparsePoly, RationalFuncX>
apply_DI(const std::vector<int>& I, const SparsePoly& p, bool require_polynomial) {
    if (require_polynomial) return apply_DI_poly(p, I);
    RationalFuncX f = apply_DI_rational(p, I);
    if (f.is_polynomial()) return f.as_polynomial();
    return f;
}

/// D_d p = d! * sum over all size-d subsets I of D_I p.  The subset terms are
/// independent; `jobs` > 1 sums them in parallel (the exact sum is
/// order-independent).
inline SparsePoly apply_Dd(int d, const SparsePoly& p, int jobs = 1) {
    int N = p.nvars();
    if (d < 1 || d > N) throw std::invalid_argument("need 1 <= d <= N");
    std::vector<std::vector<int>> subsets;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == d) {
            subsets.push_back(cur);
            return;
        }
        for (int i = start; i < N; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);

    SparsePoly acc(N);
    if (jobs <= 1 || subsets.size() < 2) {
        for (auto& I : subsets) acc += apply_DI_poly(p, I);
    } else {
        size_t chunks = std::min<size_t>(jobs, subsets.size());
        std::vector<std::future<SparsePoly>> futs;
        for (size_t c = 0; c < chunks; ++c) {
            futs.push_back(std::async(std::launch::async, [&, c] {
                SparsePoly part(N);
                for (size_t i = c; i < subsets.size(); i += chunks)
                    part += apply_DI_poly(p, subsets[i]);
                return part;
            }));
        }
        for (auto& f : futs) acc += f.get();
    }
    return acc * Rational(factorial(d));
}

/// Dhat_d = ((N-d)!/N!) D_d, the average of the D_I.
inline SparsePoly apply_Dhat(int d, const SparsePoly& p, int jobs = 1) {
    int N = p.nvars();
    return apply_Dd(d, p, jobs) * (Rational(1) / Rational(falling_factorial(N, d)));
}

/// Composition D_lambda = prod_h D_h^{m_h} (the D_d commute).
inline SparsePoly apply_Dlambda(const Partition& lambda, const SparsePoly& p, int jobs = 1) {
    SparsePoly q = p;
    for (int h : lambda.parts()) {
        if (q.is_zero()) break;
        q = apply_Dd(h, q, jobs);
    }
    return q;
}

/// Independent evaluation path: D_d on the etilde basis via
/// D_d etilde_lambda = sum_{h >= d} m_h etilde_{lambda - d eps_h}.
inline SymExpr apply_Dd_etilde(int d, const SymExpr& expr) {
    if (expr.basis() != Basis::etilde)
        throw std::invalid_argument("expected an etilde-basis expression");
    SymExpr out(expr.nvars(), Basis::etilde);
    for (auto& [lam, c] : expr.coeffs()) {
        for (auto& [h, m] : lam.multiplicities()) {
            if (h < d) continue;
            out.add(lam.lower_part(h, d), c * m);
        }
    }
    return out;
}

// ---- duality and commutator checks ----------------------------------------

struct DualityReport {
    int N = 0;
    bool ok = true;
    std::vector<std::vector<Rational>> matrix;  // matrix[d-1][r-1], valid when constant
    std::vector<std::string> failures;          // "(d,r): <residual>" entries
};

/// D_d u_r over 1 <= d, r <= N; expects the Kronecker delta.
inline DualityReport check_duality(int N, int jobs = 1) {
    DualityReport rep;
    rep.N = N;
    rep.matrix.assign(N, std::vector<Rational>(N, 0));
    for (int d = 1; d <= N; ++d)
        for (int r = 1; r <= N; ++r) {
            SparsePoly img = apply_Dd(d, u_poly(r, N), jobs);
            Rational expect = (d == r) ? 1 : 0;
            if (img.is_constant() && img.constant_value() == expect) {
                rep.matrix[d - 1][r - 1] = img.constant_value();
            } else {
                rep.ok = false;
                rep.failures.push_back("(" + std::to_string(d) + "," + std::to_string(r) +
                                       "): " + img.str());
            }
        }
    return rep;
}

/// [D_d, u_r] psi = delta_{d,r} psi, i.e. D_d(u_r psi) - u_r D_d(psi) = delta psi.
inline bool check_weyl_commutator(int d, int r, const SparsePoly& psi, int jobs = 1) {
    int N = psi.nvars();
    SparsePoly ur = u_poly(r, N);
    SparsePoly lhs = apply_Dd(d, ur * psi, jobs) - ur * apply_Dd(d, psi, jobs);
    SparsePoly rhs = (d == r) ? psi : SparsePoly(N);
    return lhs == rhs;
}

}  // namespace symcoord
