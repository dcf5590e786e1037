#ifndef SCHURLOCK_GOLDEN_REDUCTION_HPP
#define SCHURLOCK_GOLDEN_REDUCTION_HPP

#include "schurlock/folded_family.hpp"
#include "schurlock/q5.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace schurlock {

/// q*^m = a q* + b.
struct GoldenPowerCoeffs {
    unsigned m = 0;
    BigInt a;
    BigInt b;
};

/// Power-reduction coefficients from q^{m+2} = 3q^{m+1} - q^m,
/// starting at (a0, b0) = (0, 1) and (a1, b1) = (1, 0).
inline GoldenPowerCoeffs reduce_power(unsigned m) {
    BigInt a_prev = 0, b_prev = 1;  // m = 0
    if (m == 0) return {0, a_prev, b_prev};
    BigInt a = 1, b = 0;  // m = 1
    for (unsigned k = 2; k <= m; ++k) {
        BigInt a_next = 3 * a - a_prev;
        BigInt b_next = 3 * b - b_prev;
        a_prev = std::move(a);
        b_prev = std::move(b);
        a = std::move(a_next);
        b = std::move(b_next);
    }
    return {m, a, b};
}

/// All reductions for m = 0..max_m in one pass.
inline std::vector<GoldenPowerCoeffs> reduction_table(unsigned max_m) {
    std::vector<GoldenPowerCoeffs> rows;
    rows.reserve(max_m + 1);
    rows.push_back({0, 0, 1});
    if (max_m >= 1) rows.push_back({1, 1, 0});
    for (unsigned k = 2; k <= max_m; ++k) {
        const auto& p1 = rows[k - 1];
        const auto& p0 = rows[k - 2];
        rows.push_back({k, 3 * p1.a - p0.a, 3 * p1.b - p0.b});
    }
    return rows;
}

/// Fibonacci numbers with F0 = 0, F1 = 1, extended down to F_{-2} = -1
/// (F_{-1} = 1), which makes b_0 = -F_{-2} = 1.
inline BigInt fibonacci(int n) {
    if (n < -2) throw std::invalid_argument("fibonacci: index must be >= -2, got " + std::to_string(n));
    if (n == -2) return -1;
    if (n == -1) return 1;
    BigInt f0 = 0, f1 = 1;
    for (int k = 0; k < n; ++k) {
        BigInt f2 = f0 + f1;
        f0 = std::move(f1);
        f1 = std::move(f2);
    }
    return f0;
}

inline Q5 golden_point() { return Q5::golden_point(); }

/// Exact power sums at q* from the closed forms over Q(sqrt 5).
inline FoldedSums<Q5> sums_at_qstar(int N) { return sums_closed(N, golden_point()); }

/// Same sums assembled in the {1, q*} basis from reduce_power, then
/// converted; an independent route to sums_at_qstar.
inline FoldedSums<Q5> sums_at_qstar_by_reduction(int N) {
    if (N < 1) throw std::invalid_argument("sums_at_qstar_by_reduction: N must be >= 1");
    auto rows = reduction_table(static_cast<unsigned>(N));
    GoldenBasis acc[4];
    for (int s = 1; s <= N; ++s) {
        const auto& r = rows[static_cast<std::size_t>(s)];
        BigRational weight(1);
        for (auto& slot : acc) {
            slot.c0 += weight * BigRational(r.b);
            slot.c1 += weight * BigRational(r.a);
            weight *= BigRational(s);
        }
    }
    FoldedSums<Q5> out;
    out.N = N;
    out.q = golden_point();
    out.S0 = from_golden_basis(acc[0]);
    out.S1 = from_golden_basis(acc[1]);
    out.S2 = from_golden_basis(acc[2]);
    out.S3 = from_golden_basis(acc[3]);
    return out;
}

inline FoldedMoments<Q5> moments_at_qstar(int N) { return moments_from_sums(sums_at_qstar(N)); }

/// Lambda(N) = I2'(theta*) / I1'(theta*).
struct LambdaValue {
    int N = 0;
    Q5 lambda;
};

inline LambdaValue lambda_N(int N) {
    if (N < 2)
        throw std::domain_error("lambda_N: N = " + std::to_string(N) +
                                " gives Var(q*) = 0, the ratio is undefined");
    auto d = theta_derivatives(moments_at_qstar(N));
    return {N, d.I2prime / d.I1prime};
}

}  // namespace schurlock

#endif  // SCHURLOCK_GOLDEN_REDUCTION_HPP
