#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

namespace bz {

// Exact rationals without expression templates so they compose cleanly with
// Eigen and with auto.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;

/// Parses "p", "p/q" or "-p/q". Decimal points and exponents are rejected.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers are written without a denominator.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

Rational make_rational(long long num, long long den = 1);

/// A nonnegative rational or the symbolic value +infinity.
class ExtendedRational {
public:
    ExtendedRational() = default;
    ExtendedRational(Rational value) : value_(std::move(value)) {}  // NOLINT(implicit)

    static ExtendedRational infinity() {
        ExtendedRational r;
        r.infinite_ = true;
        return r;
    }

    bool is_infinite() const { return infinite_; }
    bool is_finite() const { return !infinite_; }

    // Precondition: is_finite().
    const Rational& value() const;

    friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.value_ == b.value_;
    }

private:
    Rational value_{0};
    bool infinite_ = false;
};

std::string to_string(const ExtendedRational& value);
std::ostream& operator<<(std::ostream& os, const ExtendedRational& value);

/// 1/(l + r), which is exactly 0 when r is infinite.
Rational inverse_sum(const Rational& length, const ExtendedRational& resistance);

}  // namespace bz
