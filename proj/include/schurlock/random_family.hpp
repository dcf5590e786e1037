#ifndef SCHURLOCK_RANDOM_FAMILY_HPP
#define SCHURLOCK_RANDOM_FAMILY_HPP

#include "schurlock/equivariant_schur.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace schurlock {

/// Symmetric circulant with prescribed spectrum lambda_k = lambda_{N-k}.
inline Circulant circulant_from_spectrum(const std::vector<double>& lambda) {
    const int N = static_cast<int>(lambda.size());
    std::vector<double> g(lambda.size(), 0.0);
    for (int j = 0; j < N; ++j) {
        double acc = 0.0;
        for (int k = 0; k < N; ++k)
            acc += lambda[static_cast<std::size_t>(k)] * std::cos(2.0 * std::numbers::pi * j * k / N);
        g[static_cast<std::size_t>(j)] = acc / N;
    }
    return Circulant(std::move(g));
}

/// Random symmetric PSD circulant with eigenvalues in [lo, hi].
inline Circulant random_psd_circulant(int N, std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> lambda(static_cast<std::size_t>(N));
    for (int k = 0; k <= N / 2; ++k) {
        double v = dist(rng);
        lambda[static_cast<std::size_t>(k)] = v;
        lambda[static_cast<std::size_t>((N - k) % N)] = v;
    }
    return circulant_from_spectrum(lambda);
}

struct RandomFamilyOptions {
    int terms = 3;
    double exponent_max = 3.0;   // |s| <= exponent_max, s != 0
    double c0_floor = 0.1;       // keeps H_OO positive definite for every theta
    double m_rho_sq = 2.0;
};

/// A validated D_N-equivariant PSD exponential-sum family with a random
/// collective direction.
inline HessianFamily random_family(int N, std::mt19937_64& rng, const RandomFamilyOptions& opt = {}) {
    std::uniform_real_distribution<double> sdist(0.25, opt.exponent_max);
    std::bernoulli_distribution flip(0.5);
    std::normal_distribution<double> normal(0.0, 1.0);

    HessianFamily fam;
    fam.N = N;
    fam.C0 = random_psd_circulant(N, rng, opt.c0_floor, 1.0).matrix();
    for (int i = 0; i < opt.terms; ++i) {
        double s = sdist(rng);
        if (flip(rng)) s = -s;
        fam.terms.push_back({s, random_psd_circulant(N, rng).matrix()});
    }
    Vector u(N);
    for (int i = 0; i < N; ++i) u(i) = normal(rng);
    fam.split = build_split(N, opt.m_rho_sq, u);
    return fam;
}

}  // namespace schurlock

#endif  // SCHURLOCK_RANDOM_FAMILY_HPP
