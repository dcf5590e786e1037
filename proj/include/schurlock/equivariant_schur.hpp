#ifndef SCHURLOCK_EQUIVARIANT_SCHUR_HPP
#define SCHURLOCK_EQUIVARIANT_SCHUR_HPP

#include "schurlock/folded_family.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace schurlock {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct Tolerances {
    double psd = 1e-10;          // min eigenvalue >= -psd * ||C||
    double equivariance = 1e-10; // commutator norm <= equivariance * ||C||
    double positive_definite = 1e-12;
    double loewner = 1e-10;
    double convex_relative = 1e-8;
    double max_condition = 1e12;
};

class ValidationError : public std::runtime_error {
public:
    ValidationError(const std::string& what, std::vector<std::string> issues)
        : std::runtime_error(what), issues_(std::move(issues)) {}
    const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
    std::vector<std::string> issues_;
};

/// Raised when the collective block cannot be eliminated at some theta.
class EliminationError : public std::runtime_error {
public:
    EliminationError(const std::string& what, double theta)
        : std::runtime_error(what), theta_(theta) {}
    double theta() const noexcept { return theta_; }

private:
    double theta_;
};

// ---------------------------------------------------------------------------
// Dihedral action

/// Cyclic shift (Pv)_i = v_{i+1 mod N}.
inline Matrix shift_matrix(int N) {
    Matrix P = Matrix::Zero(N, N);
    for (int i = 0; i < N; ++i) P(i, (i + 1) % N) = 1.0;
    return P;
}

/// Index reversal j -> -j mod N.
inline Matrix reversal_matrix(int N) {
    Matrix R = Matrix::Zero(N, N);
    for (int i = 0; i < N; ++i) R(i, (N - i) % N) = 1.0;
    return R;
}

class Circulant {
public:
    explicit Circulant(std::vector<double> generator) : generator_(std::move(generator)) {
        if (generator_.empty()) throw std::invalid_argument("Circulant: empty generator");
    }

    int size() const noexcept { return static_cast<int>(generator_.size()); }
    const std::vector<double>& generator() const noexcept { return generator_; }

    /// Entry (i, j) is generator[(j - i) mod N].
    Matrix matrix() const {
        const int N = size();
        Matrix C(N, N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) C(i, j) = generator_[static_cast<std::size_t>(((j - i) % N + N) % N)];
        return C;
    }

    bool is_symmetric(double tol = 0.0) const {
        const int N = size();
        for (int j = 1; j < N; ++j)
            if (std::abs(generator_[static_cast<std::size_t>(j)] - generator_[static_cast<std::size_t>(N - j)]) > tol)
                return false;
        return true;
    }

private:
    std::vector<double> generator_;
};

/// Largest Frobenius norm of [C, P] and [C, R] over the two dihedral generators.
inline double equivariance_defect(const Matrix& C) {
    const int N = static_cast<int>(C.rows());
    Matrix P = shift_matrix(N);
    Matrix R = reversal_matrix(N);
    return std::max((C * P - P * C).norm(), (C * R - R * C).norm());
}

inline double min_eigenvalue(const Matrix& S) {
    if (S.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(S, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------------------
// Band/collective split

struct SplitGeometry {
    int N = 0;
    double m_rho_sq = 1.0;
    Vector u;           // unit collective direction, orthogonal to 1
    Matrix P_B;         // I - 11^T/N - uu^T
    Matrix band_basis;  // orthonormal columns spanning range(P_B)

    int dim_band() const noexcept { return static_cast<int>(band_basis.cols()); }
    int dim_collective() const noexcept { return 1; }
};

/// The tangent space sum(v) = 0 is split into span{u} and its complement.
/// u_raw is first projected onto the tangent space, then normalized.
inline SplitGeometry build_split(int N, double m_rho_sq, const Vector& u_raw) {
    if (N < 3) throw std::invalid_argument("build_split: N must be >= 3, got " + std::to_string(N));
    if (!(m_rho_sq > 0.0)) throw std::invalid_argument("build_split: m_rho_sq must be positive");
    if (u_raw.size() != N)
        throw std::invalid_argument("build_split: u has length " + std::to_string(u_raw.size()) +
                                    ", expected " + std::to_string(N));
    const double raw_norm = u_raw.norm();
    if (raw_norm == 0.0) throw std::invalid_argument("build_split: collective direction is zero");

    Vector u = u_raw.array() - u_raw.mean();
    if (u.norm() <= 1e-12 * raw_norm)
        throw std::invalid_argument("build_split: collective direction is parallel to 1 (degenerate split)");
    u.normalize();

    SplitGeometry g;
    g.N = N;
    g.m_rho_sq = m_rho_sq;
    g.u = u;
    g.P_B = Matrix::Identity(N, N) - Matrix::Constant(N, N, 1.0 / N) - u * u.transpose();

    Eigen::SelfAdjointEigenSolver<Matrix> es(g.P_B);
    std::vector<int> cols;
    for (int i = 0; i < N; ++i)
        if (es.eigenvalues()(i) > 0.5) cols.push_back(i);
    g.band_basis.resize(N, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
        g.band_basis.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(cols[c]);
    return g;
}

// ---------------------------------------------------------------------------
// PSD exponential-sum families H(theta) = C0 + sum_s e^{s theta} C_s

struct ExpTerm {
    double s = 0.0;
    Matrix C;
};

struct HessianFamily {
    int N = 0;
    Matrix C0;
    std::vector<ExpTerm> terms;
    SplitGeometry split;
};

/// Every violated standing assumption, one line each; empty when valid.
inline std::vector<std::string> family_issues(const HessianFamily& fam, const Tolerances& tol = {}) {
    std::vector<std::string> issues;
    auto check = [&](const Matrix& C, const std::string& name) {
        if (C.rows() != fam.N || C.cols() != fam.N) {
            std::ostringstream os;
            os << name << ": shape " << C.rows() << "x" << C.cols() << ", expected " << fam.N << "x" << fam.N;
            issues.push_back(os.str());
            return;
        }
        const double scale = std::max(1.0, C.norm());
        const double asym = (C - C.transpose()).norm();
        if (asym > tol.equivariance * scale) {
            std::ostringstream os;
            os << name << ": not symmetric, ||C - C^T|| = " << asym;
            issues.push_back(os.str());
        }
        const double lmin = min_eigenvalue(0.5 * (C + C.transpose()));
        if (lmin < -tol.psd * scale) {
            std::ostringstream os;
            os << name << ": not PSD, min eigenvalue = " << lmin;
            issues.push_back(os.str());
        }
        const double defect = equivariance_defect(C);
        if (defect > tol.equivariance * scale) {
            std::ostringstream os;
            os << name << ": not D_N-equivariant, commutator norm = " << defect;
            issues.push_back(os.str());
        }
    };
    check(fam.C0, "C0");
    for (std::size_t i = 0; i < fam.terms.size(); ++i) {
        std::ostringstream name;
        name << "terms[" << i << "] (s=" << fam.terms[i].s << ")";
        check(fam.terms[i].C, name.str());
    }
    if (fam.split.N != fam.N) issues.push_back("split: built for a different N");
    return issues;
}

inline void validate_family(const HessianFamily& fam, const Tolerances& tol = {}) {
    auto issues = family_issues(fam, tol);
    if (!issues.empty()) {
        std::string msg = "invalid Hessian family:";
        for (const auto& s : issues) msg += "\n  " + s;
        throw ValidationError(msg, std::move(issues));
    }
}

inline Matrix assemble_hessian(const HessianFamily& fam, double theta) {
    Matrix H = fam.C0;
    for (const auto& t : fam.terms) H += std::exp(t.s * theta) * t.C;
    return 0.5 * (H + H.transpose());
}

/// d^2/dtheta^2 H = sum s^2 e^{s theta} C_s.
inline Matrix hessian_second_derivative(const HessianFamily& fam, double theta) {
    Matrix D = Matrix::Zero(fam.N, fam.N);
    for (const auto& t : fam.terms) D += t.s * t.s * std::exp(t.s * theta) * t.C;
    return D;
}

// ---------------------------------------------------------------------------
// Block elimination

struct BlockHessian {
    Matrix BB, BO, OB, OO;
    int dim_band() const noexcept { return static_cast<int>(BB.rows()); }
};

/// Blocks of H in the orthonormal basis [band_basis | u].
inline BlockHessian split_blocks(const Matrix& H, const SplitGeometry& g) {
    const Matrix& Q = g.band_basis;
    Matrix U = g.u;  // N x 1
    return {Q.transpose() * H * Q, Q.transpose() * H * U, U.transpose() * H * Q, U.transpose() * H * U};
}

/// -H_OO^{-1} H_OB, after checking H_OO is safely positive definite.
inline Matrix schur_minimizer(const BlockHessian& b, double theta = std::numeric_limits<double>::quiet_NaN(),
                              const Tolerances& tol = {}) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(b.OO, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    const double lmax = es.eigenvalues().maxCoeff();
    auto where = [&] {
        std::ostringstream os;
        os << " at theta = " << theta;
        return os.str();
    };
    if (!(lmin > tol.positive_definite * std::max(1.0, lmax))) {
        std::ostringstream os;
        os << "collective block H_OO is not positive definite (min eigenvalue " << lmin << ")" << where();
        throw EliminationError(os.str(), theta);
    }
    if (lmax / lmin > tol.max_condition) {
        std::ostringstream os;
        os << "collective block H_OO is ill-conditioned (condition " << lmax / lmin << ")" << where();
        throw EliminationError(os.str(), theta);
    }
    return -b.OO.llt().solve(b.OB);
}

inline Matrix schur_complement(const BlockHessian& b, double theta = std::numeric_limits<double>::quiet_NaN(),
                               const Tolerances& tol = {}) {
    Matrix Y = schur_minimizer(b, theta, tol);
    Matrix S = b.BB + b.BO * Y;
    return 0.5 * (S + S.transpose());
}

inline double schur_curvature(const BlockHessian& b, double theta = std::numeric_limits<double>::quiet_NaN(),
                              const Tolerances& tol = {}) {
    return schur_complement(b, theta, tol).trace() / b.dim_band();
}

/// kappa_Schur(theta) = Tr(H_BB - H_BO H_OO^{-1} H_OB) / dim B.
inline double schur_curvature(const HessianFamily& fam, double theta, const Tolerances& tol = {}) {
    return schur_curvature(split_blocks(assemble_hessian(fam, theta), fam.split), theta, tol);
}

/// H_BB + H_BO Y + Y^T H_OB + Y^T H_OO Y.
inline Matrix variational_expression(const BlockHessian& b, const Matrix& Y) {
    Matrix E = b.BB + b.BO * Y + Y.transpose() * b.OB + Y.transpose() * b.OO * Y;
    return 0.5 * (E + E.transpose());
}

struct VariationalReport {
    double theta = 0.0;
    double optimum_gap = 0.0;      // ||expression(Y*) - Schur||_F
    double min_excess_eigenvalue = std::numeric_limits<double>::infinity();
    int trials = 0;
    bool passed = false;
};

/// Loewner-order check of the variational form: the expression at Y* equals
/// the Schur complement and dominates it for every random Y.
inline VariationalReport variational_check(const HessianFamily& fam, double theta, int trials, std::mt19937_64& rng,
                                           const Tolerances& tol = {}) {
    BlockHessian b = split_blocks(assemble_hessian(fam, theta), fam.split);
    Matrix S = schur_complement(b, theta, tol);
    Matrix Ystar = schur_minimizer(b, theta, tol);

    VariationalReport r;
    r.theta = theta;
    r.trials = trials;
    r.optimum_gap = (variational_expression(b, Ystar) - S).norm();
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int t = 0; t < trials; ++t) {
        Matrix Y(Ystar.rows(), Ystar.cols());
        for (Eigen::Index i = 0; i < Y.size(); ++i) Y(i) = normal(rng);
        r.min_excess_eigenvalue = std::min(r.min_excess_eigenvalue, min_eigenvalue(variational_expression(b, Y) - S));
    }
    r.passed = r.optimum_gap <= tol.loewner && (trials == 0 || r.min_excess_eigenvalue >= -tol.loewner);
    return r;
}

// ---------------------------------------------------------------------------
// Convexity checks

struct MatrixConvexityReport {
    double min_gap_eigenvalue = std::numeric_limits<double>::infinity();
    double worst_t = 0.0;
    bool passed = false;
};

/// min eig of t H(th1) + (1-t) H(th2) - H(t th1 + (1-t) th2) over the t grid.
inline MatrixConvexityReport matrix_convexity_check(const HessianFamily& fam, double theta1, double theta2,
                                                    const std::vector<double>& t_grid, const Tolerances& tol = {}) {
    MatrixConvexityReport r;
    const Matrix H1 = assemble_hessian(fam, theta1);
    const Matrix H2 = assemble_hessian(fam, theta2);
    for (double t : t_grid) {
        Matrix gap = t * H1 + (1.0 - t) * H2 - assemble_hessian(fam, t * theta1 + (1.0 - t) * theta2);
        double lmin = min_eigenvalue(0.5 * (gap + gap.transpose()));
        if (lmin < r.min_gap_eigenvalue) {
            r.min_gap_eigenvalue = lmin;
            r.worst_t = t;
        }
    }
    r.passed = t_grid.empty() || r.min_gap_eigenvalue >= -tol.loewner;
    return r;
}

inline std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 2) throw std::invalid_argument("linspace: need at least 2 points");
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
    return g;
}

struct ConvexityScanReport {
    std::vector<double> theta;
    std::vector<double> kappa;
    std::vector<double> second_differences;  // kappa[i+1] - 2 kappa[i] + kappa[i-1]
    double min_relative_second_difference = std::numeric_limits<double>::infinity();
    std::vector<double> violations;  // theta locations of negative second differences
    bool passed = false;
};

namespace detail {

inline void require_uniform(const std::vector<double>& grid) {
    if (grid.size() < 3) throw std::invalid_argument("convexity scan: need at least 3 grid points");
    const double h = grid[1] - grid[0];
    if (!(h > 0)) throw std::invalid_argument("convexity scan: grid must be increasing");
    for (std::size_t i = 2; i < grid.size(); ++i)
        if (std::abs((grid[i] - grid[i - 1]) - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw std::invalid_argument("convexity scan: grid spacing is not uniform");
}

}  // namespace detail

/// Centered second differences of kappa over a uniform theta grid; each is
/// compared against -tol * max(1, local |kappa|).
template <class KappaFn>
ConvexityScanReport convexity_scan(KappaFn&& kappa_at, const std::vector<double>& theta_grid,
                                   double relative_tol = 1e-8) {
    detail::require_uniform(theta_grid);
    ConvexityScanReport r;
    r.theta = theta_grid;
    r.kappa.reserve(theta_grid.size());
    for (double th : theta_grid) r.kappa.push_back(kappa_at(th));
    for (std::size_t i = 1; i + 1 < r.kappa.size(); ++i) {
        double d2 = r.kappa[i + 1] - 2.0 * r.kappa[i] + r.kappa[i - 1];
        double scale = std::max({1.0, std::abs(r.kappa[i - 1]), std::abs(r.kappa[i]), std::abs(r.kappa[i + 1])});
        r.second_differences.push_back(d2);
        r.min_relative_second_difference = std::min(r.min_relative_second_difference, d2 / scale);
        if (d2 < -relative_tol * scale) r.violations.push_back(theta_grid[i]);
    }
    r.passed = r.violations.empty();
    return r;
}

inline ConvexityScanReport kappa_convexity_scan(const HessianFamily& fam, const std::vector<double>& theta_grid,
                                                const Tolerances& tol = {}) {
    return convexity_scan([&](double th) { return schur_curvature(fam, th, tol); }, theta_grid, tol.convex_relative);
}

struct StrictConvexityReport {
    double s0 = 0.0;
    double witness = 0.0;               // ||P_B C_{s0} P_B||_F
    double min_curvature = 0.0;         // min second difference / h^2 over the interval
    bool witness_nonzero = false;
    bool strictly_convex = false;       // min_curvature > 0
};

inline StrictConvexityReport strict_convexity_witness(const HessianFamily& fam, double s0, double theta_lo,
                                                      double theta_hi, int points, const Tolerances& tol = {}) {
    auto it = std::find_if(fam.terms.begin(), fam.terms.end(), [&](const ExpTerm& t) { return t.s == s0; });
    if (it == fam.terms.end()) {
        std::ostringstream os;
        os << "strict_convexity_witness: exponent s0 = " << s0 << " is not present in the family";
        throw std::invalid_argument(os.str());
    }
    if (s0 == 0.0) throw std::invalid_argument("strict_convexity_witness: s0 must be nonzero");

    StrictConvexityReport r;
    r.s0 = s0;
    const Matrix& P = fam.split.P_B;
    r.witness = (P * it->C * P).norm();
    r.witness_nonzero = r.witness > tol.psd * std::max(1.0, it->C.norm());

    auto grid = linspace(theta_lo, theta_hi, points);
    const double h = grid[1] - grid[0];
    auto scan = kappa_convexity_scan(fam, grid, tol);
    r.min_curvature = std::numeric_limits<double>::infinity();
    for (double d2 : scan.second_differences) r.min_curvature = std::min(r.min_curvature, d2 / (h * h));
    r.strictly_convex = r.min_curvature > 0.0;
    return r;
}

// ---------------------------------------------------------------------------
// Quadratic functionals on the band space

/// (1/dim B) Tr(P_B^T K1 D(x) K2 P_B) with D(x) = diag(1/x_r), explicit weights.
inline double q_class_functional(const Circulant& K1, const Circulant& K2, const SplitGeometry& split,
                                 const Vector& weights) {
    const int N = split.N;
    if (K1.size() != N || K2.size() != N || weights.size() != N)
        throw std::invalid_argument("q_class_functional: size mismatch");
    for (Eigen::Index r = 0; r < weights.size(); ++r)
        if (!(weights(r) > 0.0)) throw std::domain_error("q_class_functional: weights must be positive");
    Matrix D = weights.cwiseInverse().asDiagonal();
    Matrix M = split.P_B.transpose() * K1.matrix() * D * K2.matrix() * split.P_B;
    return M.trace() / split.dim_band();
}

/// Folded weights x_r(q) = q^r / S0(q), r = 1..N.
inline Vector folded_weights(int N, double q) {
    detail::require_order(N);
    detail::require_open_unit(q);
    Vector x(N);
    double qr = 1.0;
    for (int r = 0; r < N; ++r) {
        qr *= q;
        x(r) = qr;
    }
    return x / x.sum();
}

inline double q_class_functional(const Circulant& K1, const Circulant& K2, const SplitGeometry& split, int N,
                                 double q) {
    if (N != split.N) throw std::invalid_argument("q_class_functional: N does not match the split");
    return q_class_functional(K1, K2, split, folded_weights(N, q));
}

// ---------------------------------------------------------------------------
// Two-point identification of the quadratic folded law

template <class T>
struct QuadLawFit {
    T A{};
    T B{};
    std::vector<T> residuals;  // one per point after the first two
};

/// Solves [I1^2, Var](q_a, q_b) [A B]^T = [kappa_a kappa_b]^T from the first
/// two points and reports kappa_i - (A I1^2 + B Var) at the rest.
template <FieldScalar T>
QuadLawFit<T> quadratic_law_fit(const std::vector<std::pair<T, T>>& points, int N) {
    if (points.size() < 2) throw std::invalid_argument("quadratic_law_fit: need at least 2 points");
    auto mv = [&](const T& q) {
        auto m = moments(N, q);
        return std::pair<T, T>{m.I1 * m.I1, m.Var};
    };
    auto [Ma, Va] = mv(points[0].first);
    auto [Mb, Vb] = mv(points[1].first);
    const T& Ka = points[0].second;
    const T& Kb = points[1].second;
    T det = Ma * Vb - Mb * Va;
    bool degenerate = false;
    if constexpr (is_exact_v<T>) {
        degenerate = sign_of(det) == 0;
    } else {
        degenerate = !(std::abs(det) > 1e-14 * (std::abs(Ma * Vb) + std::abs(Mb * Va)));
    }
    if (degenerate) throw std::domain_error("quadratic_law_fit: degenerate two-point system (determinant 0)");

    QuadLawFit<T> fit;
    fit.A = (Ka * Vb - Kb * Va) / det;
    fit.B = (Ma * Kb - Mb * Ka) / det;
    for (std::size_t i = 2; i < points.size(); ++i) {
        auto [M, V] = mv(points[i].first);
        fit.residuals.push_back(points[i].second - (fit.A * M + fit.B * V));
    }
    return fit;
}

}  // namespace schurlock

#endif  // SCHURLOCK_EQUIVARIANT_SCHUR_HPP
