#ifndef SCHURLOCK_RATIONAL_HPP
#define SCHURLOCK_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace schurlock {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational kept in lowest terms with a positive
/// denominator, so equal values are structurally equal.
class BigRational {
public:
    BigRational() : num_(0), den_(1) {}

    template <std::integral I>
    BigRational(I n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)

    BigRational(BigInt n) : num_(std::move(n)), den_(1) {}  // NOLINT

    BigRational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_ == 0) throw std::domain_error("BigRational: zero denominator");
        normalize();
    }

    /// Accepts "p", "p/q" and plain decimals such as "-0.125".
    static BigRational parse(std::string_view text) {
        auto trim = [](std::string_view s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
                s.remove_suffix(1);
            return s;
        };
        text = trim(text);
        if (text.empty()) throw std::invalid_argument("BigRational: empty string");
        if (auto slash = text.find('/'); slash != std::string_view::npos) {
            return BigRational(parse_integer(trim(text.substr(0, slash))),
                               parse_integer(trim(text.substr(slash + 1))));
        }
        if (auto dot = text.find('.'); dot != std::string_view::npos) {
            std::string digits(text.substr(0, dot));
            std::string_view frac = text.substr(dot + 1);
            digits += frac;
            if (digits == "-" || digits == "+" || digits.empty())
                throw std::invalid_argument("BigRational: malformed decimal '" + std::string(text) + "'");
            BigInt den = 1;
            for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
            return BigRational(parse_integer(digits), den);
        }
        return BigRational(parse_integer(text));
    }

    const BigInt& num() const noexcept { return num_; }
    const BigInt& den() const noexcept { return den_; }

    int sign() const noexcept { return num_.sign(); }
    bool is_zero() const noexcept { return num_ == 0; }
    bool is_integer() const noexcept { return den_ == 1; }

    BigRational inverse() const {
        if (is_zero()) throw std::domain_error("BigRational: inverse of zero");
        return BigRational(den_, num_);
    }

    double to_double() const {
        boost::multiprecision::cpp_rational r(num_, den_);
        return r.convert_to<double>();
    }

    std::string to_string() const {
        if (den_ == 1) return num_.str();
        return num_.str() + "/" + den_.str();
    }

    BigRational operator-() const {
        BigRational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    BigRational& operator+=(const BigRational& o) {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    BigRational& operator-=(const BigRational& o) {
        num_ = num_ * o.den_ - o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    BigRational& operator*=(const BigRational& o) {
        num_ *= o.num_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    BigRational& operator/=(const BigRational& o) {
        if (o.is_zero()) throw std::domain_error("BigRational: division by zero");
        num_ *= o.den_;
        den_ *= o.num_;
        normalize();
        return *this;
    }

    friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
    friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
    friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
    friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

    friend bool operator==(const BigRational& a, const BigRational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
        BigInt lhs = a.num_ * b.den_;
        BigInt rhs = b.num_ * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const BigRational& r) {
        return os << r.to_string();
    }

private:
    static BigInt parse_integer(std::string_view s) {
        if (s.empty()) throw std::invalid_argument("BigRational: empty integer");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw std::invalid_argument("BigRational: malformed integer '" + std::string(s) + "'");
        for (std::size_t j = i; j < s.size(); ++j) {
            if (s[j] < '0' || s[j] > '9')
                throw std::invalid_argument("BigRational: malformed integer '" + std::string(s) + "'");
        }
        // cpp_int reads a leading 0 as an octal prefix.
        std::size_t first = s.find_first_not_of('0', i);
        BigInt v = first == std::string_view::npos ? BigInt(0) : BigInt(std::string(s.substr(first)));
        return s[0] == '-' ? BigInt(-v) : v;
    }

    void normalize() {
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        BigInt g = boost::multiprecision::gcd(num_, den_);
        if (g != 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_;
    BigInt den_;
};

inline BigRational abs(const BigRational& r) { return r.sign() < 0 ? -r : r; }

/// Rounds n/d to the nearest integer, ties away from zero.
inline BigInt round_half_away(const BigRational& r) {
    BigInt n = boost::multiprecision::abs(r.num());
    BigInt q = (2 * n + r.den()) / (2 * r.den());
    return r.sign() < 0 ? BigInt(-q) : q;
}

/// Integer part toward negative infinity.
inline BigInt floor(const BigRational& r) {
    BigInt q = r.num() / r.den();  // truncates toward zero
    if (r.sign() < 0 && q * r.den() != r.num()) q -= 1;
    return q;
}

/// Fixed-point decimal rendering of an integer count of 10^-digits units.
inline std::string format_fixed(const BigInt& scaled, int digits) {
    bool negative = scaled.sign() < 0;
    std::string s = BigInt(boost::multiprecision::abs(scaled)).str();
    if (digits > 0) {
        if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits + 1) - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), 1, '.');
    }
    return negative ? "-" + s : s;
}

/// Correctly rounded decimal with `digits` places after the point.
inline std::string to_decimal(const BigRational& r, int digits) {
    if (digits < 1) throw std::invalid_argument("to_decimal: precision must be >= 1");
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(digits));
    return format_fixed(round_half_away(r * BigRational(scale)), digits);
}

}  // namespace schurlock

#endif  // SCHURLOCK_RATIONAL_HPP
