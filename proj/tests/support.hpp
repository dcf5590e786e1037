#ifndef SCHURLOCK_TESTS_SUPPORT_HPP
#define SCHURLOCK_TESTS_SUPPORT_HPP

#include "schurlock/q5.hpp"
#include "schurlock/rational.hpp"

#include <random>

namespace schurlock::fixtures {

inline BigRational rat(long long p, long long q = 1) { return BigRational(BigInt(p), BigInt(q)); }

inline BigRational random_rational(std::mt19937_64& rng, int max_num = 1000, int max_den = 1000) {
    std::uniform_int_distribution<int> num(-max_num, max_num);
    std::uniform_int_distribution<int> den(1, max_den);
    return rat(num(rng), den(rng));
}

/// Uniform-ish rational strictly inside (0, 1).
inline BigRational random_unit_rational(std::mt19937_64& rng, int max_den = 97) {
    std::uniform_int_distribution<int> den(2, max_den);
    int d = den(rng);
    std::uniform_int_distribution<int> num(1, d - 1);
    return rat(num(rng), d);
}

inline Q5 random_q5(std::mt19937_64& rng, int max_num = 1000, int max_den = 1000) {
    return Q5(random_rational(rng, max_num, max_den), random_rational(rng, max_num, max_den));
}

}  // namespace schurlock::fixtures

#endif
