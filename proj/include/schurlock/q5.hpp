#ifndef SCHURLOCK_Q5_HPP
#define SCHURLOCK_Q5_HPP

#include "schurlock/rational.hpp"

#include <concepts>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace schurlock {

/// Element a + b*sqrt(5) of the quadratic field Q(sqrt 5). Both coordinates
/// are kept reduced, so == is exact field equality.
class Q5 {
public:
    Q5() = default;

    template <std::integral I>
    Q5(I a) : a_(a) {}  // NOLINT(google-explicit-constructor)

    Q5(BigRational a) : a_(std::move(a)) {}  // NOLINT
    Q5(BigRational a, BigRational b) : a_(std::move(a)), b_(std::move(b)) {}

    static Q5 sqrt5() { return {BigRational(0), BigRational(1)}; }

    /// q* = phi^-2 = (3 - sqrt 5)/2, root of q^2 - 3q + 1.
    static Q5 golden_point() { return {BigRational(3, 2), BigRational(-1, 2)}; }

    const BigRational& rational_part() const noexcept { return a_; }
    const BigRational& sqrt5_part() const noexcept { return b_; }

    bool is_zero() const noexcept { return a_.is_zero() && b_.is_zero(); }
    bool is_rational() const noexcept { return b_.is_zero(); }

    Q5 conjugate() const { return {a_, -b_}; }

    /// Field norm (a + b sqrt5)(a - b sqrt5) = a^2 - 5 b^2.
    BigRational norm() const { return a_ * a_ - BigRational(5) * b_ * b_; }

    Q5 inverse() const {
        if (is_zero()) throw std::domain_error("Q5: inverse of zero");
        BigRational n = norm();
        return {a_ / n, -b_ / n};
    }

    /// Exact sign by rational case analysis on the signs of a and b.
    int sign() const {
        int sa = a_.sign();
        int sb = b_.sign();
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // Opposite signs: compare a^2 against 5 b^2.
        auto c = (a_ * a_) <=> (BigRational(5) * b_ * b_);
        if (c == 0) return 0;  // unreachable for b != 0 since sqrt 5 is irrational
        int dominant = (c > 0) ? sa : sb;
        return dominant;
    }

    double to_double() const;

    std::string to_string() const {
        if (b_.is_zero()) return a_.to_string();
        std::string out;
        if (!a_.is_zero()) out = a_.to_string() + (b_.sign() < 0 ? " - " : " + ");
        else if (b_.sign() < 0) out = "-";
        out += abs(b_).to_string() + "*sqrt5";
        return out;
    }

    Q5 operator-() const { return {-a_, -b_}; }

    Q5& operator+=(const Q5& o) {
        a_ += o.a_;
        b_ += o.b_;
        return *this;
    }
    Q5& operator-=(const Q5& o) {
        a_ -= o.a_;
        b_ -= o.b_;
        return *this;
    }
    Q5& operator*=(const Q5& o) {
        BigRational a = a_ * o.a_ + BigRational(5) * b_ * o.b_;
        BigRational b = a_ * o.b_ + b_ * o.a_;
        a_ = std::move(a);
        b_ = std::move(b);
        return *this;
    }
    Q5& operator/=(const Q5& o) {
        if (o.is_zero()) throw std::domain_error("Q5: division by zero");
        // x / y = x * conj(y) / N(y)
        BigRational n = o.norm();
        *this *= o.conjugate();
        a_ /= n;
        b_ /= n;
        return *this;
    }

    friend Q5 operator+(Q5 x, const Q5& y) { return x += y; }
    friend Q5 operator-(Q5 x, const Q5& y) { return x -= y; }
    friend Q5 operator*(Q5 x, const Q5& y) { return x *= y; }
    friend Q5 operator/(Q5 x, const Q5& y) { return x /= y; }

    friend bool operator==(const Q5& x, const Q5& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

    friend bool operator<(const Q5& x, const Q5& y) { return (x - y).sign() < 0; }
    friend bool operator>(const Q5& x, const Q5& y) { return (x - y).sign() > 0; }
    friend bool operator<=(const Q5& x, const Q5& y) { return (x - y).sign() <= 0; }
    friend bool operator>=(const Q5& x, const Q5& y) { return (x - y).sign() >= 0; }

    friend std::ostream& operator<<(std::ostream& os, const Q5& x) { return os << x.to_string(); }

private:
    BigRational a_;
    BigRational b_;
};

inline int q5_sign(const Q5& x) { return x.sign(); }

/// Element c0 + c1*q* in the basis {1, q*}.
struct GoldenBasis {
    BigRational c0;
    BigRational c1;

    friend bool operator==(const GoldenBasis&, const GoldenBasis&) = default;

    friend GoldenBasis operator+(const GoldenBasis& x, const GoldenBasis& y) {
        return {x.c0 + y.c0, x.c1 + y.c1};
    }
    friend GoldenBasis operator-(const GoldenBasis& x, const GoldenBasis& y) {
        return {x.c0 - y.c0, x.c1 - y.c1};
    }
    /// Uses q*^2 = 3q* - 1.
    friend GoldenBasis operator*(const GoldenBasis& x, const GoldenBasis& y) {
        BigRational quad = x.c1 * y.c1;
        return {x.c0 * y.c0 - quad, x.c0 * y.c1 + x.c1 * y.c0 + BigRational(3) * quad};
    }

    std::string to_string() const {
        std::string out = c0.to_string();
        out += c1.sign() < 0 ? " - " : " + ";
        out += abs(c1).to_string() + "*q*";
        return out;
    }
};

/// sqrt5 = 3 - 2q*, so a + b sqrt5 = (a + 3b) - 2b q*.
inline GoldenBasis to_golden_basis(const Q5& x) {
    const auto& a = x.rational_part();
    const auto& b = x.sqrt5_part();
    return {a + BigRational(3) * b, BigRational(-2) * b};
}

/// q* = 3/2 - sqrt5/2, so c0 + c1 q* = (c0 + 3c1/2) - (c1/2) sqrt5.
inline Q5 from_golden_basis(const GoldenBasis& g) {
    return {g.c0 + BigRational(3, 2) * g.c1, -g.c1 / BigRational(2)};
}

namespace detail {

/// floor(sqrt(5) * 10^k) as an integer.
inline BigInt scaled_sqrt5_floor(unsigned k) {
    BigInt radicand = 5 * boost::multiprecision::pow(BigInt(10), 2 * k);
    return boost::multiprecision::sqrt(radicand);
}

}  // namespace detail

/// Correctly rounded decimal rendering with `digits` places after the point.
/// sqrt5 is enclosed in an integer interval of width 10^-k; k grows until
/// both ends of the enclosing interval round to the same digits.
inline std::string q5_to_decimal(const Q5& x, int digits) {
    if (digits < 1) throw std::invalid_argument("q5_to_decimal: precision must be >= 1");
    if (x.is_rational()) return to_decimal(x.rational_part(), digits);

    const BigRational& a = x.rational_part();
    const BigRational& b = x.sqrt5_part();
    BigRational scale(boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(digits)));
    for (unsigned guard = 8;; guard += 8) {
        unsigned k = static_cast<unsigned>(digits) + guard;
        BigInt s = detail::scaled_sqrt5_floor(k);
        BigRational unit(BigInt(1), boost::multiprecision::pow(BigInt(10), k));
        BigRational lo_root = BigRational(s) * unit;
        BigRational hi_root = BigRational(s + 1) * unit;
        BigRational lo = (b.sign() > 0) ? a + b * lo_root : a + b * hi_root;
        BigRational hi = (b.sign() > 0) ? a + b * hi_root : a + b * lo_root;
        BigInt rlo = round_half_away(lo * scale);
        BigInt rhi = round_half_away(hi * scale);
        if (rlo == rhi) {
            if (rlo == 0) return format_fixed(BigInt(0), digits);
            return format_fixed(rlo, digits);
        }
        if (guard > 4096) throw std::runtime_error("q5_to_decimal: rounding did not stabilize");
    }
}

inline double Q5::to_double() const {
    // 20 certified digits are more than a double can hold.
    return std::stod(q5_to_decimal(*this, 20));
}

}  // namespace schurlock

#endif  // SCHURLOCK_Q5_HPP
