#pragma once

#include <string>
#include <vector>

#include "symcoord/index_sets.hpp"
#include "symcoord/rational_of_n.hpp"
#include "symcoord/symmetric.hpp"

namespace symcoord {

/// N(N-1)...(N-h+1) as a polynomial in N.
inline UniPoly falling_factorial_poly(int h) {
    UniPoly p = UniPoly::constant(1);
    for (int j = 0; j < h; ++j) p = p * UniPoly({-Int(j), 1});
    return p;
}

/// P_lambda(N) = prod_h (N!/(N-h)!)^{m_h}.
inline UniPoly P_lambda_poly(const Partition& lambda) {
    UniPoly p = UniPoly::constant(1);
    for (int h : lambda.parts()) p = p * falling_factorial_poly(h);
    return p;
}

struct DerivativeConstant {
    int r = 0;
    Partition sigma;
    RationalOfN value;
};

/// The constant value of the order-r derivative of pattern sigma applied to u_r:
///   sum_lambda (-1)^{l-1} (l-1)! |X^lambda| / P_lambda(N).
/// With filter_dominated, the sum runs only over lambda <= sigma^t (the other
/// terms have |X^lambda| = 0, so the value is unchanged; the filter is the
/// cross-checked claim).
inline DerivativeConstant derivative_constant(int r, const Partition& sigma,
                                              bool filter_dominated = false) {
    if (sigma.weight() != r) throw std::invalid_argument("sigma must partition r");
    if (r > 8) throw std::invalid_argument("supported up to r = 8");
    DerivativeConstant dc;
    dc.r = r;
    dc.sigma = sigma;
    Partition sigmaT = sigma.conjugate();
    RationalOfN acc;
    for (const Partition& lam : enumerate_partitions(r)) {
        if (filter_dominated && !dominates(sigmaT, lam)) continue;
        long x = count_X(DerivativePattern{sigma}, lam);
        if (x == 0) continue;
        Int num = factorial(lam.length() - 1) * x;
        if (lam.length() % 2 == 0) num = -num;
        acc = acc + RationalOfN(UniPoly::constant(num), P_lambda_poly(lam));
    }
    dc.value = acc;
    return dc;
}

// ---- decay table -----------------------------------------------------------

struct DecayRow {
    int r = 0;
    Partition sigma;
    int decay_order = 0;      // of derivative_constant, exact
    int conjectured = 0;      // r + l(sigma) - 1
    int theorem_bound = 0;    // r + 1 for mixed sigma, r for the pure pattern
    std::string status;       // meets / exceeds / VIOLATES
};

/// Rows ordered by (r, sigma reverse-lex); "VIOLATES" flags order below the
/// conjectured bound — reported, with the r+1 theorem bound enforced elsewhere.
inline std::vector<DecayRow> decay_table(int r_max) {
    std::vector<DecayRow> rows;
    for (int r = 1; r <= r_max; ++r) {
        for (const Partition& sigma : enumerate_partitions(r)) {
            DecayRow row;
            row.r = r;
            row.sigma = sigma;
            row.decay_order = derivative_constant(r, sigma).value.decay_order();
            row.conjectured = r + sigma.length() - 1;
            row.theorem_bound = sigma.length() >= 2 ? r + 1 : r;
            if (row.decay_order < row.conjectured) row.status = "VIOLATES";
            else if (row.decay_order == row.conjectured) row.status = "meets";
            else row.status = "exceeds";
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

// ---- the limit uhat_r -> (-1)^{r-1} p_r / r --------------------------------

struct PowerSumCoeffRow {
    Partition lambda;     // e-basis key
    RationalOfN coeff;    // e_lambda coefficient of uhat_r^{(N)}
    Rational target;      // e_lambda coefficient of (-1)^{r-1} p_r / r
    RationalOfN diff;     // coeff - target
    int decay_order = 0;  // of diff
};

struct PowerSumReport {
    int r = 0;
    std::vector<PowerSumCoeffRow> rows;
    bool all_decay_ge1 = true;
    // per sampled N: does uhat_r^{(N)} equal the limit exactly?
    std::vector<std::pair<int, bool>> equality_at;
};

/// e-basis coefficients of uhat_r^{(N)} as rational functions of N:
/// uhat_r = (N!/(N-r)!) sum_lambda c_lambda e_lambda / P_lambda(N).
inline PowerSumReport limit_to_power_sum(int r, const std::vector<int>& N_samples) {
    if (r < 1) throw std::invalid_argument("r must be positive");
    PowerSumReport rep;
    rep.r = r;

    // the limit's e-basis coefficients, computed in r variables (stable for N >= r)
    SymExpr target(r, Basis::power);
    target.add(Partition({r}), Rational(r % 2 ? 1 : -1) / Rational(r));
    std::map<Partition, Rational> targetE = to_basis(target, Basis::e).coeffs();

    UniPoly hat = falling_factorial_poly(r);
    for (const Partition& lam : enumerate_partitions(r)) {
        PowerSumCoeffRow row;
        row.lambda = lam;
        int l = lam.length();
        Rational c = Rational(factorial(l - 1)) / Rational(lam.multiplicity_factorial());
        if ((l - 1) % 2) c = -c;
        // etilde_lambda = e_lambda / P_lambda(N), since h! C(N,h) = N!/(N-h)!
        row.coeff = RationalOfN(UniPoly::constant(numerator(c)) * hat,
                                UniPoly::constant(denominator(c)) * P_lambda_poly(lam));
        auto it = targetE.find(lam);
        row.target = (it == targetE.end()) ? Rational(0) : it->second;
        row.diff = row.coeff - RationalOfN::constant(row.target);
        row.decay_order = row.diff.decay_order();
        if (row.decay_order < 1) rep.all_decay_ge1 = false;
        rep.rows.push_back(std::move(row));
    }

    for (int n : N_samples) {
        if (n < r) continue;  // uhat_r^{(N)} needs N >= r
        bool equal = true;
        for (auto& row : rep.rows)
            if (row.diff.evaluate(n) != 0) equal = false;
        rep.equality_at.emplace_back(n, equal);
    }
    return rep;
}

}  // namespace symcoord
