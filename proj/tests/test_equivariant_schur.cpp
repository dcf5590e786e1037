#include "schurlock/equivariant_schur.hpp"
#include "schurlock/family_io.hpp"
#include "schurlock/random_family.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>

namespace {

using namespace schurlock;

// Oracle 1: gradient descent on Tr(expression(Y)) from Y = 0.
double kappa_by_descent(const BlockHessian& b) {
    Matrix Y = Matrix::Zero(b.OO.rows(), b.BB.rows());
    Eigen::SelfAdjointEigenSolver<Matrix> es(b.OO);
    const double step = 0.25 / es.eigenvalues().maxCoeff();
    for (int it = 0; it < 2000; ++it) {
        Matrix grad = 2.0 * b.BO.transpose() + 2.0 * b.OO * Y;
        Y -= step * grad;
    }
    Matrix E = b.BB + b.BO * Y + Y.transpose() * b.OB + Y.transpose() * b.OO * Y;
    return E.trace() / b.BB.rows();
}

// Oracle 2: for positive definite M, the Schur complement is ((M^{-1})_BB)^{-1}.
double kappa_by_inverse(const BlockHessian& b) {
    const Eigen::Index nb = b.BB.rows(), no = b.OO.rows();
    Matrix M(nb + no, nb + no);
    M << b.BB, b.BO, b.OB, b.OO;
    Matrix inv = M.inverse();
    return inv.topLeftCorner(nb, nb).inverse().trace() / nb;
}

TEST(Dihedral, GeneratorsAndCirculants) {
    const int N = 6;
    Matrix P = shift_matrix(N), R = reversal_matrix(N);
    EXPECT_LT((P.transpose() * P - Matrix::Identity(N, N)).norm(), 1e-15);
    EXPECT_LT((R * R - Matrix::Identity(N, N)).norm(), 1e-15);
    EXPECT_LT((R * P * R - P.transpose()).norm(), 1e-15);  // dihedral relation
    Circulant C({2.0, 0.5, 0.1, 0.0, 0.1, 0.5});
    EXPECT_TRUE(C.is_symmetric());
    EXPECT_LT(equivariance_defect(C.matrix()), 1e-14);
    EXPECT_DOUBLE_EQ(C.matrix()(0, 1), 0.5);
    EXPECT_DOUBLE_EQ(C.matrix()(1, 0), 0.5);
    Circulant A({1.0, 0.3, 0.0, 0.0, 0.0, 0.0});
    EXPECT_FALSE(A.is_symmetric());
    EXPECT_GT(equivariance_defect(A.matrix()), 0.1);  // fails reversal
    EXPECT_THROW(Circulant(std::vector<double>{}), std::invalid_argument);
}

TEST(Dihedral, SpectrumConstruction) {
    auto C = circulant_from_spectrum({1.0, 0.2, 0.5, 0.2});
    Eigen::SelfAdjointEigenSolver<Matrix> es(C.matrix());
    EXPECT_NEAR(es.eigenvalues()(0), 0.2, 1e-14);
    EXPECT_NEAR(es.eigenvalues()(3), 1.0, 1e-14);
}

TEST(Split, ProjectorInvariants) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal;
    for (int t = 0; t < 100; ++t) {
        int N = 3 + t % 9;
        Vector u(N);
        for (int i = 0; i < N; ++i) u(i) = normal(rng);
        auto g = build_split(N, 2.0, u);
        const Matrix& P = g.P_B;
        ASSERT_LT((P * P - P).norm(), 1e-12);
        ASSERT_LT((P - P.transpose()).norm(), 1e-14);
        ASSERT_LT((P * Vector::Ones(N)).norm(), 1e-12);
        ASSERT_LT((P * g.u).norm(), 1e-12);
        ASSERT_NEAR(g.u.norm(), 1.0, 1e-14);
        ASSERT_NEAR(g.u.sum(), 0.0, 1e-12);
        ASSERT_EQ(g.dim_band(), N - 2);
        ASSERT_LT((g.band_basis.transpose() * g.band_basis - Matrix::Identity(N - 2, N - 2)).norm(), 1e-12);
    }
}

TEST(Split, DegenerateDirectionsRejected) {
    Vector ones = Vector::Ones(5);
    EXPECT_THROW(build_split(5, 1.0, ones), std::invalid_argument);
    EXPECT_THROW(build_split(5, 1.0, Vector::Zero(5)), std::invalid_argument);
    EXPECT_THROW(build_split(2, 1.0, Vector::Ones(2)), std::invalid_argument);
    EXPECT_THROW(build_split(5, 0.0, Vector::LinSpaced(5, 0, 1)), std::invalid_argument);
    EXPECT_THROW(build_split(5, 1.0, Vector::LinSpaced(4, 0, 1)), std::invalid_argument);
}

TEST(Schur, MatchesIndependentOracles) {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> size(3, 8);
    for (int f = 0; f < 20; ++f) {
        auto fam = random_family(size(rng), rng);
        for (double th : {std::log(0.1), std::log(0.5), -0.05}) {
            auto b = split_blocks(assemble_hessian(fam, th), fam.split);
            double k = schur_curvature(b, th);
            EXPECT_NEAR(k, kappa_by_descent(b), 1e-6);
            EXPECT_NEAR(k, kappa_by_inverse(b), 1e-9);
            EXPECT_NEAR(k, schur_curvature(fam, th), 1e-15);
        }
    }
}

TEST(Schur, VariationalFormIsLoewnerInfimum) {
    std::mt19937_64 rng(22);
    for (int f = 0; f < 20; ++f) {
        auto fam = random_family(3 + f % 6, rng);
        auto r = variational_check(fam, -0.7, 100, rng);
        EXPECT_TRUE(r.passed);
        EXPECT_LE(r.optimum_gap, 1e-10);
        EXPECT_GE(r.min_excess_eigenvalue, -1e-10);
    }
}

TEST(Schur, SingularCollectiveBlockReportsTheta) {
    const int N = 4;
    HessianFamily fam;
    fam.N = N;
    fam.C0 = Matrix::Zero(N, N);
    Vector u(N);
    u << 1, -1, 1, -1;
    fam.split = build_split(N, 1.0, u);
    try {
        schur_curvature(fam, -0.3);
        FAIL() << "expected EliminationError";
    } catch (const EliminationError& e) {
        EXPECT_DOUBLE_EQ(e.theta(), -0.3);
        EXPECT_NE(std::string(e.what()).find("not positive definite"), std::string::npos);
    }
}

TEST(Convexity, MatrixConvexityAndNegativeControl) {
    std::mt19937_64 rng(23);
    auto tgrid = linspace(0.0, 1.0, 11);
    for (int f = 0; f < 50; ++f) {
        auto fam = random_family(3 + f % 6, rng);
        auto r = matrix_convexity_check(fam, std::log(0.05), std::log(0.9), tgrid);
        EXPECT_TRUE(r.passed) << r.min_gap_eigenvalue;
    }
    auto bad = random_family(5, rng);
    bad.terms = {{2.0, -Matrix::Identity(5, 5)}};
    EXPECT_FALSE(family_issues(bad).empty());
    EXPECT_THROW(validate_family(bad), ValidationError);
    EXPECT_FALSE(matrix_convexity_check(bad, std::log(0.1), std::log(0.9), tgrid).passed);
}

TEST(Convexity, KappaScanOnRandomFamilies) {
    std::mt19937_64 rng(24);
    auto grid = linspace(std::log(0.05), std::log(0.95), 101);
    for (int f = 0; f < 50; ++f) {
        auto fam = random_family(3 + f % 6, rng);
        auto scan = kappa_convexity_scan(fam, grid);
        EXPECT_TRUE(scan.passed) << scan.min_relative_second_difference;
        EXPECT_EQ(scan.kappa.size(), 101u);
        EXPECT_EQ(scan.second_differences.size(), 99u);
    }
}

TEST(Convexity, ScanDetectsConcavity) {
    auto grid = linspace(-2.0, -0.1, 21);
    auto scan = convexity_scan([](double th) { return -th * th; }, grid);
    EXPECT_FALSE(scan.passed);
    EXPECT_EQ(scan.violations.size(), 19u);
    EXPECT_THROW(convexity_scan([](double) { return 0.0; }, std::vector<double>{-1.0, -0.5, -0.4}),
                 std::invalid_argument);
}

TEST(Convexity, StrictWitness) {
    std::mt19937_64 rng(25);
    auto fam = random_family(6, rng);
    fam.terms.push_back({1.25, Matrix::Identity(6, 6)});
    auto w = strict_convexity_witness(fam, 1.25, std::log(0.1), std::log(0.9), 81);
    EXPECT_TRUE(w.witness_nonzero);
    EXPECT_TRUE(w.strictly_convex);
    EXPECT_NEAR(w.witness, std::sqrt(4.0), 1e-12);  // ||P_B||_F = sqrt(rank)
    EXPECT_THROW(strict_convexity_witness(fam, 9.0, -1.0, -0.1, 11), std::invalid_argument);

    // A term living only on 1 is invisible to the band projector.
    auto flat = random_family(6, rng);
    flat.terms.push_back({0.75, Matrix::Constant(6, 6, 1.0)});
    EXPECT_FALSE(strict_convexity_witness(flat, 0.75, -1.0, -0.1, 11).witness_nonzero);
}

TEST(QClass, MatchesDenseLoop) {
    std::mt19937_64 rng(26);
    const int N = 7;
    auto K1 = random_psd_circulant(N, rng), K2 = random_psd_circulant(N, rng);
    Vector u = Vector::LinSpaced(N, -1.0, 2.0);
    u(2) = 5.0;
    auto split = build_split(N, 1.5, u);
    const double q = 0.4;
    double x[N], total = 0.0, norm = 0.0, qr = 1.0;
    for (int r = 0; r < N; ++r) {
        qr *= q;
        x[r] = qr;
        norm += qr;
    }
    Matrix A = K1.matrix(), B = K2.matrix(), P = split.P_B;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                for (int l = 0; l < N; ++l) total += P(j, i) * A(j, k) * (norm / x[k]) * B(k, l) * P(l, i);
    EXPECT_NEAR(q_class_functional(K1, K2, split, N, q), total / (N - 2), 1e-9 * std::abs(total));
    EXPECT_THROW(q_class_functional(K1, K2, split, N + 1, q), std::invalid_argument);
    EXPECT_THROW(q_class_functional(K1, K2, split, Vector::Zero(N)), std::domain_error);
}

TEST(QuadLaw, ExactRoundTrip) {
    using fixtures::rat;
    const BigRational A0 = rat(3, 7), B0 = rat(-5, 11);
    std::vector<std::pair<BigRational, BigRational>> pts;
    for (auto q : {rat(1, 2), rat(1, 3), rat(2, 3)}) {
        auto m = moments(12, q);
        pts.emplace_back(q, A0 * m.I1 * m.I1 + B0 * m.Var);
    }
    auto fit = quadratic_law_fit(pts, 12);
    EXPECT_EQ(fit.A, A0);
    EXPECT_EQ(fit.B, B0);
    ASSERT_EQ(fit.residuals.size(), 1u);
    EXPECT_TRUE(fit.residuals[0].is_zero());

    std::vector<std::pair<BigRational, BigRational>> same{{rat(1, 2), rat(1)}, {rat(1, 2), rat(2)}};
    EXPECT_THROW(quadratic_law_fit(same, 12), std::domain_error);
    EXPECT_THROW(quadratic_law_fit(std::vector<std::pair<double, double>>{{0.5, 1.0}}, 12), std::invalid_argument);
}

TEST(QuadLaw, DoubleFitRecoversCoefficients) {
    std::vector<std::pair<double, double>> pts;
    for (double q : {0.2, 0.45, 0.7, 0.9}) {
        auto m = moments(8, q);
        pts.emplace_back(q, 0.8 * m.I1 * m.I1 - 1.3 * m.Var);
    }
    auto fit = quadratic_law_fit(pts, 8);
    EXPECT_NEAR(fit.A, 0.8, 1e-10);
    EXPECT_NEAR(fit.B, -1.3, 1e-10);
    for (double r : fit.residuals) EXPECT_NEAR(r, 0.0, 1e-10);
}

TEST(FamilyIO, RoundTripAndForms) {
    std::mt19937_64 rng(27);
    auto fam = random_family(5, rng);
    auto back = parse_family(family_to_json(fam));
    EXPECT_EQ(back.N, 5);
    EXPECT_LT((back.C0 - fam.C0).norm(), 1e-15);
    EXPECT_NEAR(schur_curvature(back, -0.4), schur_curvature(fam, -0.4), 1e-12);

    nlohmann::json doc = {{"N", 4},
                          {"m_rho_sq", 2.0},
                          {"u", {1, -1, 1, -1}},
                          {"C0", {{"circulant", {1.0, 0.2, 0.0, 0.2}}}},
                          {"terms", {{{"s", 1.0}, {"C", std::vector<double>(16, 0.25)}}}}};
    auto f = parse_family(doc);
    EXPECT_DOUBLE_EQ(f.C0(1, 0), 0.2);
    EXPECT_DOUBLE_EQ(f.terms[0].C(3, 3), 0.25);
}

TEST(FamilyIO, CollectsEveryIssue) {
    nlohmann::json doc = {{"N", 4},
                          {"u", {1, 1, 1, 1}},
                          {"C0", {{"circulant", {1.0, 0.2}}}},
                          {"terms", {{{"s", 1.0}, {"C", {{"circulant", {-1.0, 0.0, 0.0, 0.0}}}}}}}};
    try {
        parse_family(doc);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        const auto& issues = e.issues();
        ASSERT_GE(issues.size(), 3u);
        auto has = [&](const char* needle) {
            for (const auto& s : issues)
                if (s.find(needle) != std::string::npos) return true;
            return false;
        };
        EXPECT_TRUE(has("m_rho_sq"));
        EXPECT_TRUE(has("C0: circulant generator"));
        EXPECT_TRUE(has("parallel to 1"));
    }
    EXPECT_THROW(parse_family(nlohmann::json::array()), ValidationError);
    EXPECT_THROW(parse_family({{"N", 2}}), ValidationError);
    EXPECT_THROW(load_family("/nonexistent/family.json"), std::runtime_error);
}

TEST(FamilyIO, MalformedFileIsValidationError) {
    const std::string path = ::testing::TempDir() + "/schurlock_bad_family.json";
    std::ofstream(path) << "{\"N\": 4, ";
    EXPECT_THROW(load_family(path), ValidationError);
}

TEST(FamilyIO, NonEquivariantTermNamed) {
    std::mt19937_64 rng(28);
    auto fam = random_family(6, rng);
    Matrix D = Matrix::Zero(6, 6);
    for (int i = 0; i < 6; ++i) D(i, i) = 1.0 + i;
    fam.terms.push_back({0.5, D});
    auto issues = family_issues(fam);
    ASSERT_EQ(issues.size(), 1u);
    EXPECT_NE(issues[0].find("terms[3]"), std::string::npos);
    EXPECT_NE(issues[0].find("not D_N-equivariant"), std::string::npos);
}

}  // namespace
