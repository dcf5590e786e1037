#ifndef SCHURLOCK_SCALAR_HPP
#define SCHURLOCK_SCALAR_HPP

#include "schurlock/q5.hpp"
#include "schurlock/rational.hpp"

#include <cmath>
#include <cstdio>
#include <concepts>
#include <string>

namespace schurlock {

// Uniform access to the three scalar kinds used throughout: double for
// scans, BigRational and Q5 for exact evaluation.

template <class T>
concept FieldScalar = requires(T a, T b) {
    { a + b } -> std::convertible_to<T>;
    { a - b } -> std::convertible_to<T>;
    { a * b } -> std::convertible_to<T>;
    { a / b } -> std::convertible_to<T>;
    { -a } -> std::convertible_to<T>;
    T(1);
};

template <class T>
inline constexpr bool is_exact_v = false;
template <>
inline constexpr bool is_exact_v<BigRational> = true;
template <>
inline constexpr bool is_exact_v<Q5> = true;

inline int sign_of(double x) { return (x > 0) - (x < 0); }
inline int sign_of(const BigRational& x) { return x.sign(); }
inline int sign_of(const Q5& x) { return x.sign(); }

inline double to_double(double x) { return x; }
inline double to_double(const BigRational& x) { return x.to_double(); }
inline double to_double(const Q5& x) { return x.to_double(); }

inline std::string to_text(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}
inline std::string to_text(const BigRational& x) { return x.to_string(); }
inline std::string to_text(const Q5& x) { return x.to_string(); }

template <class T>
T from_int(long long n) {
    return T(n);
}

/// x^n by repeated squaring; n >= 0.
template <FieldScalar T>
T power(const T& x, unsigned n) {
    T result(1);
    T base = x;
    while (n != 0) {
        if (n & 1U) result = result * base;
        n >>= 1U;
        if (n != 0) base = base * base;
    }
    return result;
}

}  // namespace schurlock

#endif  // SCHURLOCK_SCALAR_HPP
