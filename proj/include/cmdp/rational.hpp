#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cmdp {

/// Exact rational number in canonical form (denominator > 0, reduced).
///
/// Thin value wrapper over GMP's mpq_class. Every analytic quantity in the
/// library is a Rational; floating point appears only inside the simulator.
class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}
    Rational(int value) : value_(value) {}
    Rational(long numerator, long denominator);
    explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

    /// Parses "p/q", an integer, or a decimal literal such as "-0.125".
    /// Decimals are read as exact decimal fractions. Throws std::invalid_argument.
    static Rational parse(std::string_view text);

    /// Canonical "p/q" form; integers keep the "/1" suffix.
    std::string str() const;

    const mpq_class& raw() const { return value_; }
    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }

    int sign() const { return sgn(value_); }
    bool is_zero() const { return sign() == 0; }
    double to_double() const { return value_.get_d(); }

    Rational& operator+=(const Rational& rhs) { value_ += rhs.value_; return *this; }
    Rational& operator-=(const Rational& rhs) { value_ -= rhs.value_; return *this; }
    Rational& operator*=(const Rational& rhs) { value_ *= rhs.value_; return *this; }
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    friend Rational operator-(const Rational& v) { return Rational(mpq_class(-v.value_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& v) { return os << v.str(); }

private:
    mpq_class value_{0};
};

using RationalVector = std::vector<Rational>;

/// Inner product; vectors must have equal length.
Rational dot(const RationalVector& a, const RationalVector& b);

/// True iff every component is >= 0 (vacuously true for empty vectors).
bool nonnegative(const RationalVector& v);

std::vector<std::string> to_strings(const RationalVector& v);

} // namespace cmdp
