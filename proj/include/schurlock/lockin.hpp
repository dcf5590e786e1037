#ifndef SCHURLOCK_LOCKIN_HPP
#define SCHURLOCK_LOCKIN_HPP

#include "schurlock/equivariant_schur.hpp"
#include "schurlock/folded_family.hpp"
#include "schurlock/golden_reduction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace schurlock {

/// Coefficients of the quadratic folded law kappa = A I1^2 + B (I2 - I1^2).
template <class T>
struct QuadLawCoeffs {
    T A{};
    T B{};
    int N = 0;
    T m_rho_sq{};
};

/// Reference constants quoted for (N, m_rho^2) = (12, 2). Reported, never
/// assumed to satisfy the stationarity bracket.
inline constexpr double kPublishedA12 = 0.707473678;
inline constexpr double kPublishedB12 = -1.060165816;

namespace detail {

template <class T>
void require_positive_radius(const QuadLawCoeffs<T>& c) {
    if (sign_of(c.m_rho_sq) <= 0) throw std::invalid_argument("lockin: m_rho_sq must be positive");
    if (c.N < 1) throw std::invalid_argument("lockin: N must be >= 1");
}

inline Q5 as_q5(const Q5& x) { return x; }
inline Q5 as_q5(const BigRational& x) { return Q5(x); }

template <class T>
T lambda_as(const LambdaValue& l) {
    if constexpr (std::is_same_v<T, double>) {
        return l.lambda.to_double();
    } else {
        return l.lambda;
    }
}

}  // namespace detail

template <class To, class From>
QuadLawCoeffs<To> convert_coeffs(const QuadLawCoeffs<From>& c) {
    if constexpr (std::is_same_v<To, double>) {
        return {to_double(c.A), to_double(c.B), c.N, to_double(c.m_rho_sq)};
    } else {
        return {To(c.A), To(c.B), c.N, To(c.m_rho_sq)};
    }
}

template <FieldScalar T>
QuadLawCoeffs<T> coeffs_from_fit(const QuadLawFit<T>& fit, int N, const T& m_rho_sq) {
    return {fit.A, fit.B, N, m_rho_sq};
}

template <FieldScalar T>
T kappa_quadratic(const QuadLawCoeffs<T>& c, const T& q) {
    auto m = moments(c.N, q);
    return c.A * m.I1 * m.I1 + c.B * m.Var;
}

/// F_red = N - 4 I1^2 / (N m_rho^2) + kappa / N, evaluated at q = e^theta.
template <FieldScalar T>
T f_red(const QuadLawCoeffs<T>& c, const T& q) {
    detail::require_positive_radius(c);
    auto m = moments(c.N, q);
    const T n(c.N);
    T kappa = c.A * m.I1 * m.I1 + c.B * m.Var;
    return n - T(4) * m.I1 * m.I1 / (n * c.m_rho_sq) + kappa / n;
}

/// dF_red/dtheta = -8 I1 I1' / (N m_rho^2) + (B I2' + (2A - 2B) I1 I1') / N.
template <FieldScalar T>
T f_red_prime(const QuadLawCoeffs<T>& c, const T& q) {
    detail::require_positive_radius(c);
    auto m = moments(c.N, q);
    auto d = theta_derivatives(m);
    const T n(c.N);
    T kappa_prime = c.B * d.I2prime + (T(2) * c.A - T(2) * c.B) * m.I1 * d.I1prime;
    return -T(8) * m.I1 * d.I1prime / (n * c.m_rho_sq) + kappa_prime / n;
}

inline double f_red_theta(const QuadLawCoeffs<double>& c, double theta) { return f_red(c, std::exp(theta)); }
inline double f_red_prime_theta(const QuadLawCoeffs<double>& c, double theta) {
    return f_red_prime(c, std::exp(theta));
}

/// B Lambda(N) + 2A - 2B - 8/m_rho^2.
template <FieldScalar T>
T bracket_residual(const QuadLawCoeffs<T>& c, const LambdaValue& lambda) {
    detail::require_positive_radius(c);
    if (lambda.N != c.N)
        throw std::invalid_argument("bracket_residual: Lambda computed for N = " + std::to_string(lambda.N) +
                                    ", coefficients are for N = " + std::to_string(c.N));
    T L = detail::lambda_as<T>(lambda);
    return c.B * L + T(2) * c.A - T(2) * c.B - T(8) / c.m_rho_sq;
}

/// A = (8/m_rho^2 - B Lambda(N) + 2B) / 2, which zeroes bracket_residual.
template <class T>
QuadLawCoeffs<Q5> synthesize_consistent_AB(const T& B_free, int N, const T& m_rho_sq) {
    if (N < 2) throw std::invalid_argument("synthesize_consistent_AB: N must be >= 2");
    Q5 B = detail::as_q5(B_free);
    Q5 m = detail::as_q5(m_rho_sq);
    if (m.sign() <= 0) throw std::invalid_argument("synthesize_consistent_AB: m_rho_sq must be positive");
    Q5 L = lambda_N(N).lambda;
    Q5 A = (Q5(8) / m - B * L + Q5(2) * B) / Q5(2);
    return {A, B, N, m};
}

/// A solving F_red'(theta*) = 0 exactly for the given B:
/// B Lambda + (2A - 2B - 8/m_rho^2) I1(q*) = 0.
template <class T>
QuadLawCoeffs<Q5> synthesize_stationary_AB(const T& B_free, int N, const T& m_rho_sq) {
    if (N < 2) throw std::invalid_argument("synthesize_stationary_AB: N must be >= 2");
    Q5 B = detail::as_q5(B_free);
    Q5 m = detail::as_q5(m_rho_sq);
    if (m.sign() <= 0) throw std::invalid_argument("synthesize_stationary_AB: m_rho_sq must be positive");
    Q5 L = lambda_N(N).lambda;
    Q5 I1 = moments_at_qstar(N).I1;
    Q5 A = (Q5(8) / m + Q5(2) * B - B * L / I1) / Q5(2);
    return {A, B, N, m};
}

template <class T>
struct StationarityReport {
    double theta_star = 0.0;
    T f_prime_at_star{};
    T bracket_residual{};
    // (1/N) * bracket * I1(theta*) * I1'(theta*), the factored form of F'.
    T factored_prime{};
    // f_prime_at_star - factored_prime; zero iff the factored form is exact.
    T factorization_gap{};
    // N F'(theta*) / I1'(theta*) = B Lambda + (2A - 2B - 8/m_rho^2) I1(theta*).
    T stationarity_residual{};
    bool degenerate = false;  // N = 1, F_red is constant
    bool factorization_holds = false;
    bool stationary = false;
    int sign_changes = 0;
    std::vector<std::pair<double, double>> brackets;  // theta intervals
    bool uniqueness_asserted = false;
    bool uniqueness_holds = true;
};

/// Stationarity quantities at theta* = ln q*. Exact in Q(sqrt5) for exact
/// coefficients; double coefficients use a double q*.
template <class T>
StationarityReport<T> stationarity_check(const QuadLawCoeffs<T>& c, double factor_rel_tol = 1e-10) {
    detail::require_positive_radius(c);
    StationarityReport<T> r;
    const Q5 qstar = golden_point();
    r.theta_star = std::log(qstar.to_double());
    if (c.N == 1) {
        r.degenerate = true;
        r.f_prime_at_star = T(0);
        r.factorization_holds = true;
        r.stationary = true;
        return r;
    }
    LambdaValue L = lambda_N(c.N);
    if constexpr (std::is_same_v<T, double>) {
        const double q = qstar.to_double();
        auto m = moments(c.N, q);
        auto d = theta_derivatives(m);
        r.f_prime_at_star = f_red_prime(c, q);
        r.bracket_residual = bracket_residual(c, L);
        r.factored_prime = r.bracket_residual * m.I1 * d.I1prime / c.N;
        r.factorization_gap = r.f_prime_at_star - r.factored_prime;
        r.stationarity_residual = r.f_prime_at_star * c.N / d.I1prime;
        double scale = std::max({1.0, std::abs(r.f_prime_at_star), std::abs(r.factored_prime)});
        r.factorization_holds = std::abs(r.factorization_gap) <= factor_rel_tol * scale;
        r.stationary = std::abs(r.f_prime_at_star) <= factor_rel_tol * std::max(1.0, std::abs(c.A) + std::abs(c.B));
    } else {
        auto m = moments_at_qstar(c.N);
        auto d = theta_derivatives(m);
        const T n(c.N);
        QuadLawCoeffs<Q5> cq = convert_coeffs<Q5>(c);
        Q5 fp = f_red_prime(cq, qstar);
        Q5 br = bracket_residual(cq, L);
        if constexpr (std::is_same_v<T, Q5>) {
            r.f_prime_at_star = fp;
            r.bracket_residual = br;
            r.factored_prime = br * m.I1 * d.I1prime / n;
            r.factorization_gap = fp - r.factored_prime;
            r.stationarity_residual = fp * n / d.I1prime;
        } else {
            static_assert(std::is_same_v<T, Q5>, "exact stationarity reports are expressed over Q5");
        }
        r.factorization_holds = r.factorization_gap.is_zero();
        r.stationary = r.f_prime_at_star.is_zero();
    }
    return r;
}

/// Counts sign changes of F_red' over a theta grid inside (-inf, 0). When
/// kappa has positive second differences on the grid (and I1' > 0, which
/// holds for N >= 2) at most one sign change is expected.
inline StationarityReport<double> uniqueness_scan(const QuadLawCoeffs<double>& c,
                                                  const std::vector<double>& theta_grid) {
    detail::require_positive_radius(c);
    if (theta_grid.size() < 2) throw std::invalid_argument("uniqueness_scan: need at least 2 grid points");
    for (double th : theta_grid)
        if (!(th < 0.0)) throw std::invalid_argument("uniqueness_scan: grid must lie in theta < 0");

    StationarityReport<double> r;
    r.theta_star = std::log(golden_point().to_double());
    r.degenerate = c.N == 1;

    std::vector<double> fp;
    fp.reserve(theta_grid.size());
    for (double th : theta_grid) fp.push_back(f_red_prime_theta(c, th));

    // Sign changes across nonzero samples; exact zeros are bridged.
    int last_sign = 0;
    double last_theta = theta_grid.front();
    for (std::size_t i = 0; i < fp.size(); ++i) {
        int s = sign_of(fp[i]);
        if (s == 0) continue;
        if (last_sign != 0 && s != last_sign) {
            ++r.sign_changes;
            r.brackets.emplace_back(last_theta, theta_grid[i]);
        }
        last_sign = s;
        last_theta = theta_grid[i];
    }

    if (theta_grid.size() >= 3 && !r.degenerate) {
        bool strictly_convex = true;
        for (std::size_t i = 1; i + 1 < theta_grid.size(); ++i) {
            double k0 = kappa_quadratic(c, std::exp(theta_grid[i - 1]));
            double k1 = kappa_quadratic(c, std::exp(theta_grid[i]));
            double k2 = kappa_quadratic(c, std::exp(theta_grid[i + 1]));
            if (!(k2 - 2.0 * k1 + k0 > 0.0)) {
                strictly_convex = false;
                break;
            }
        }
        r.uniqueness_asserted = strictly_convex;
        r.uniqueness_holds = !strictly_convex || r.sign_changes <= 1;
    }
    return r;
}

}  // namespace schurlock

#endif  // SCHURLOCK_LOCKIN_HPP
