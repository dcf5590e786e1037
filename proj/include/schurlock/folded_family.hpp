#ifndef SCHURLOCK_FOLDED_FAMILY_HPP
#define SCHURLOCK_FOLDED_FAMILY_HPP

#include "schurlock/scalar.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace schurlock {

/// Power sums S_k(q) = sum_{s=1}^N s^k q^s for k = 0..3.
template <class T>
struct FoldedSums {
    int N = 0;
    T q{};
    T S0{}, S1{}, S2{}, S3{};
};

/// Moments of the weights x_r = q^r / S0 on {1..N}.
template <class T>
struct FoldedMoments {
    T I1{}, I2{}, I3{};
    T Var{};  // I2 - I1^2
};

/// First derivatives in theta = ln q of I1 and I2.
template <class T>
struct ThetaDerivatives {
    T I1prime{};
    T I2prime{};
};

namespace detail {

inline void require_order(int N) {
    if (N < 1) throw std::invalid_argument("folded family: N must be >= 1, got " + std::to_string(N));
}

template <class T>
void require_open_unit(const T& q) {
    if (sign_of(q) <= 0 || sign_of(T(1) - q) <= 0)
        throw std::domain_error("folded family: q must lie in (0,1), got " + to_text(q));
}

}  // namespace detail

/// Term-by-term summation; the oracle for the closed forms.
template <FieldScalar T>
FoldedSums<T> sums_bruteforce(int N, const T& q) {
    detail::require_order(N);
    detail::require_open_unit(q);
    FoldedSums<T> out{N, q, T(0), T(0), T(0), T(0)};
    T qs = q;
    for (int s = 1; s <= N; ++s) {
        T ss(s);
        T t1 = ss * qs;
        T t2 = ss * t1;
        out.S0 = out.S0 + qs;
        out.S1 = out.S1 + t1;
        out.S2 = out.S2 + t2;
        out.S3 = out.S3 + ss * t2;
        if (s < N) qs = qs * q;
    }
    return out;
}

/// Rational closed forms of the four power sums. Only q = 1 is rejected so
/// the formulas can be exercised on any exact argument; the family's own
/// domain (0,1) is enforced by moments().
template <FieldScalar T>
FoldedSums<T> sums_closed(int N, const T& q) {
    detail::require_order(N);
    const T one(1);
    const T d = one - q;
    if (sign_of(d) == 0) throw std::domain_error("sums_closed: q = 1 is outside the folded family");

    const T n(N);
    const T n1(N + 1);
    const T qN = power(q, static_cast<unsigned>(N));
    const T qN1 = qN * q;
    const T qN2 = qN1 * q;
    const T qN3 = qN2 * q;
    const T d2 = d * d;
    const T d3 = d2 * d;
    const T d4 = d3 * d;
    const T n2 = n * n;
    const T n3 = n2 * n;

    FoldedSums<T> out;
    out.N = N;
    out.q = q;
    out.S0 = q * (one - qN) / d;
    out.S1 = q * (one - n1 * qN + n * qN1) / d2;
    out.S2 = q * (one + q - n1 * n1 * qN + (T(2) * n2 + T(2) * n - one) * qN1 - n2 * qN2) / d3;
    out.S3 = q *
             (one + T(4) * q + q * q - n1 * n1 * n1 * qN + (T(3) * n3 + T(6) * n2 - T(4)) * qN1 -
              (T(3) * n3 + T(3) * n2 - T(3) * n + one) * qN2 + n3 * qN3) /
             d4;
    return out;
}

template <FieldScalar T>
FoldedMoments<T> moments_from_sums(const FoldedSums<T>& s) {
    FoldedMoments<T> m;
    m.I1 = s.S1 / s.S0;
    m.I2 = s.S2 / s.S0;
    m.I3 = s.S3 / s.S0;
    m.Var = m.I2 - m.I1 * m.I1;
    return m;
}

/// Moments at (N, q) via the closed forms. For double arguments the
/// closed forms lose accuracy as q -> 1, so direct summation is used.
template <FieldScalar T>
FoldedMoments<T> moments(int N, const T& q) {
    detail::require_order(N);
    detail::require_open_unit(q);
    if constexpr (is_exact_v<T>) {
        return moments_from_sums(sums_closed(N, q));
    } else {
        return moments_from_sums(sums_bruteforce(N, q));
    }
}

/// Exponential-family identities I1' = I2 - I1^2 and I2' = I3 - I1 I2.
template <FieldScalar T>
ThetaDerivatives<T> theta_derivatives(const FoldedMoments<T>& m) {
    return {m.I2 - m.I1 * m.I1, m.I3 - m.I1 * m.I2};
}

/// Central differences of I1 and I2 in theta = ln q, computed from direct
/// summation so it stays independent of the closed forms.
inline ThetaDerivatives<double> theta_derivatives_fd(int N, double q, double h) {
    detail::require_order(N);
    const double qp = q * std::exp(h);
    const double qm = q * std::exp(-h);
    if (!(qm > 0.0 && qp < 1.0))
        throw std::domain_error("theta_derivatives_fd: q*e^{+-h} leaves (0,1)");
    auto plus = moments_from_sums(sums_bruteforce(N, qp));
    auto minus = moments_from_sums(sums_bruteforce(N, qm));
    return {(plus.I1 - minus.I1) / (2.0 * h), (plus.I2 - minus.I2) / (2.0 * h)};
}

}  // namespace schurlock

#endif  // SCHURLOCK_FOLDED_FAMILY_HPP
