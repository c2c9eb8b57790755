#include "cmdp/rational.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace cmdp {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

[[noreturn]] void bad_literal(std::string_view text) {
    throw std::invalid_argument("invalid rational literal '" + std::string(text) + "'");
}

} // namespace

Rational::Rational(long numerator, long denominator) {
    if (denominator == 0)
        throw std::domain_error("rational with zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero())
        throw std::domain_error("rational division by zero");
    value_ /= rhs.value_;
    return *this;
}

Rational Rational::parse(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    mpq_class value;
    if (const auto slash = body.find('/'); slash != std::string_view::npos) {
        const auto num = body.substr(0, slash);
        const auto den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            bad_literal(text);
        mpz_class d(std::string(den), 10);
        if (d == 0)
            bad_literal(text);
        value = mpq_class(mpz_class(std::string(num), 10), d);
    } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
        const auto whole = body.substr(0, dot);
        const auto frac = body.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac)))
            bad_literal(text);
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        const std::string digits = std::string(whole.empty() ? "0" : whole) + std::string(frac);
        value = mpq_class(mpz_class(digits, 10), scale);
    } else {
        if (!all_digits(body))
            bad_literal(text);
        value = mpq_class(mpz_class(std::string(body), 10));
    }
    value.canonicalize();
    if (negative)
        value = -value;
    return Rational(std::move(value));
}

std::string Rational::str() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational dot(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dot: length mismatch");
    Rational sum;
    for (std::size_t i = 0; i < a.size(); ++i)
        sum += a[i] * b[i];
    return sum;
}

bool nonnegative(const RationalVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.sign() >= 0; });
}

std::vector<std::string> to_strings(const RationalVector& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& x : v)
        out.push_back(x.str());
    return out;
}

} // namespace cmdp
