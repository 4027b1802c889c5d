#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "symcoord/diagonal.hpp"
#include "symcoord/operators.hpp"

namespace symcoord {

struct NumericPolicy {
    double fd_step = 1e-6;         // relative central-difference step
    int schedule_len = 21;         // eps_k = schedule_start * 2^-k
    double schedule_start = 1e-1;
    double tol_rel_first = 1e-7;   // first-order checks
    double tol_rel_high = 1e-5;    // order >= 3
};

inline double rel_err(double a, double b) {
    double scale = std::max({std::fabs(a), std::fabs(b), 1.0});
    return std::fabs(a - b) / scale;
}

// ---- finite differences ----------------------------------------------------

namespace detail {

inline double fd_recurse(const FunctionOracle& phi, std::vector<double>& point,
                         std::vector<int>& orders, double step) {
    for (size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] == 0) continue;
        --orders[i];
        double h = step * std::max(1.0, std::fabs(point[i]));
        double x0 = point[i];
        point[i] = x0 + h;
        double fp = fd_recurse(phi, point, orders, step);
        point[i] = x0 - h;
        double fm = fd_recurse(phi, point, orders, step);
        point[i] = x0;
        ++orders[i];
        return (fp - fm) / (2 * h);
    }
    return phi.evaluate_double(point);
}

}  // namespace detail

/// Central-difference mixed partial; step grows with total order to balance
/// truncation against cancellation.
inline double fd_partial(const FunctionOracle& phi, std::vector<int> orders,
                         std::vector<double> point, const NumericPolicy& policy = {}) {
    int total = 0;
    for (int o : orders) total += o;
    double step = policy.fd_step;
    if (total >= 2) step = 1e-4;
    if (total >= 3) step = 1e-3;
    return detail::fd_recurse(phi, point, orders, step);
}

struct GradientReport {
    std::vector<double> fd;
    std::vector<Rational> exact;  // empty for black-box oracles
    double max_rel_err = 0;       // fd vs exact, when exact is available
};

inline GradientReport fd_gradient(const FunctionOracle& phi, const std::vector<double>& point,
                                  const NumericPolicy& policy = {}) {
    GradientReport rep;
    int n = phi.nvars();
    std::vector<Rational> rpoint;
    if (phi.exact())
        for (double v : point) rpoint.emplace_back(v);
    for (int i = 0; i < n; ++i) {
        std::vector<int> orders(n, 0);
        orders[i] = 1;
        rep.fd.push_back(fd_partial(phi, orders, point, policy));
        if (phi.exact()) {
            rep.exact.push_back(phi.partial(orders, rpoint));
            rep.max_rel_err = std::max(
                rep.max_rel_err, rel_err(rep.fd.back(), static_cast<double>(rep.exact.back())));
        }
    }
    return rep;
}

// ---- chain-rule duality ----------------------------------------------------

/// Trace and polynomial oracles as explicit polynomials in the x variables.
inline SparsePoly oracle_to_poly(const FunctionOracle& phi) {
    if (phi.kind() == FunctionOracle::Kind::polynomial) return phi.poly();
    if (phi.kind() == FunctionOracle::Kind::trace) {
        int n = phi.nvars();
        SparsePoly acc(n);
        for (int i = 0; i < n; ++i) {
            const auto& f = phi.trace_coeffs();
            for (size_t k = 0; k < f.size(); ++k) {
                SparsePoly::Exponents e(n, 0);
                e[i] = static_cast<int>(k);
                acc.add_term(e, f[k]);
            }
        }
        return acc;
    }
    throw std::logic_error("black-box oracle has no polynomial form");
}

struct JacobianReport {
    int N = 0;
    bool pass = true;
    double max_rel_err = 0;
    std::vector<Rational> chain_values;   // phi_{u_d} solved from the Jacobian
    std::vector<Rational> direct_values;  // D_d phi evaluated at the point
};

/// Solves grad_x phi = J * grad_u phi with J_{i,d} = du_d/dx_i (exact), then
/// compares grad_u entry d against the direct evaluation of D_d phi.
inline JacobianReport jacobian_check(int N, const FunctionOracle& phi,
                                     const std::vector<Rational>& point,
                                     const NumericPolicy& policy = {}) {
    if (phi.nvars() != N || static_cast<int>(point.size()) != N)
        throw std::invalid_argument("arity mismatch");
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            if (point[i] == point[j])
                throw std::invalid_argument("jacobian singular: coincident coordinates");

    std::vector<std::vector<Rational>> A(N, std::vector<Rational>(N + 1, 0));
    for (int d = 1; d <= N; ++d) {
        SparsePoly ud = u_poly(d, N);
        for (int i = 0; i < N; ++i) A[i][d - 1] = ud.partial_derivative(i).evaluate(point);
    }
    for (int i = 0; i < N; ++i) {
        std::vector<int> orders(N, 0);
        orders[i] = 1;
        A[i][N] = phi.partial(orders, point);
    }
    // exact Gaussian elimination with partial (nonzero) pivoting
    for (int col = 0; col < N; ++col) {
        int pr = col;
        while (pr < N && A[pr][col] == 0) ++pr;
        if (pr == N) throw std::invalid_argument("jacobian singular at this point");
        std::swap(A[col], A[pr]);
        Rational pv = A[col][col];
        for (int j = col; j <= N; ++j) A[col][j] /= pv;
        for (int i = 0; i < N; ++i) {
            if (i == col || A[i][col] == 0) continue;
            Rational f = A[i][col];
            for (int j = col; j <= N; ++j) A[i][j] -= f * A[col][j];
        }
    }

    JacobianReport rep;
    rep.N = N;
    SparsePoly phiPoly = oracle_to_poly(phi);
    for (int d = 1; d <= N; ++d) {
        rep.chain_values.push_back(A[d - 1][N]);
        rep.direct_values.push_back(apply_Dd(d, phiPoly).evaluate(point));
        double e = rel_err(static_cast<double>(rep.chain_values.back()),
                           static_cast<double>(rep.direct_values.back()));
        rep.max_rel_err = std::max(rep.max_rel_err, e);
        if (e >= policy.tol_rel_first) rep.pass = false;
    }
    return rep;
}

/// Deterministic distinct integer points in 1..97 (SYMCOORD_SEED-driven).
inline std::vector<Rational> random_distinct_point(int N, std::mt19937& rng) {
    std::vector<int> pool(97);
    for (int i = 0; i < 97; ++i) pool[i] = i + 1;
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<Rational> pt;
    for (int i = 0; i < N; ++i) pt.emplace_back(pool[i]);
    return pt;
}

// ---- limits of the generic formula -----------------------------------------

struct LimitReport {
    double formula_value = 0;     // from the coincidence-pattern formula
    double extrapolated = 0;      // Richardson limit of the generic formula
    double rel_err = 0;
    double observed_order = 0;    // convergence rate in eps
    bool pass = false;
};

namespace detail {

/// Generic D_I phi = sum_{i in I} phi_i / prod_{j in I, j != i}(x_j - x_i),
/// evaluated exactly at a rational point with distinct I-coordinates.
inline Rational generic_DI_value(const std::vector<int>& I, const FunctionOracle& phi,
                                 const std::vector<Rational>& point) {
    Rational acc = 0;
    for (int i : I) {
        std::vector<int> orders(phi.nvars(), 0);
        orders[i] = 1;
        Rational den = 1;
        for (int j : I)
            if (j != i) den *= (point[j] - point[i]);
        acc += phi.partial(orders, point) / den;
    }
    return acc;
}

}  // namespace detail

/// Collapses the J-variables onto y along eps_k = start * 2^-k, extrapolates the
/// generic D_I phi values (Richardson, order 2), and compares against
/// apply_DI_one_block.
inline LimitReport limit_check(const std::vector<int>& I, const std::vector<int>& J,
                               const Rational& y, const std::map<int, Rational>& others,
                               const FunctionOracle& phi, const NumericPolicy& policy = {}) {
    LimitReport rep;
    rep.formula_value = static_cast<double>(apply_DI_one_block(I, J, y, others, phi));

    std::vector<Rational> base(phi.nvars(), 0);
    for (int i : J) base[i] = y;
    for (auto& [k, v] : others) base[k] = v;

    std::vector<double> vals;
    for (int k = 0; k < policy.schedule_len; ++k) {
        Rational eps = Rational(policy.schedule_start);
        for (int q = 0; q < k; ++q) eps /= 2;
        std::vector<Rational> pt = base;
        int off = 1;
        for (int j : J) pt[j] = y + eps * Rational(off++);
        vals.push_back(static_cast<double>(detail::generic_DI_value(I, phi, pt)));
    }

    // Neville/Richardson with step ratio 2, two elimination levels
    std::vector<double> r1, r2;
    for (size_t k = 0; k + 1 < vals.size(); ++k) r1.push_back(2 * vals[k + 1] - vals[k]);
    for (size_t k = 0; k + 1 < r1.size(); ++k) r2.push_back((4 * r1[k + 1] - r1[k]) / 3);
    rep.extrapolated = r2.empty() ? (r1.empty() ? vals.back() : r1.back()) : r2.back();

    // observed order from raw-value differences mid-schedule (before roundoff)
    size_t mid = vals.size() / 2;
    if (mid >= 2) {
        double d1 = std::fabs(vals[mid - 1] - vals[mid - 2]);
        double d2 = std::fabs(vals[mid] - vals[mid - 1]);
        if (d2 > 0 && d1 > 0) rep.observed_order = std::log2(d1 / d2);
        else rep.observed_order = 8;  // converged exactly: effectively infinite order
    }

    rep.rel_err = rel_err(rep.formula_value, rep.extrapolated);
    rep.pass = rep.rel_err < policy.tol_rel_first;
    return rep;
}

}  // namespace symcoord
