#include "bz/rational.hpp"

#include "bz/error.hpp"

#include <cctype>

namespace bz {

namespace {

Integer parse_integer(std::string_view digits, std::string_view whole) {
    bool negative = false;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
        negative = digits.front() == '-';
        digits.remove_prefix(1);
    }
    if (digits.empty()) throw InvalidInput("malformed rational '" + std::string(whole) + "'");
    Integer value = 0;
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw InvalidInput("malformed rational '" + std::string(whole) + "'");
        value = value * 10 + (c - '0');
    }
    return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
    const Integer num = parse_integer(text.substr(0, slash), text);
    const auto den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+'))
        throw InvalidInput("malformed rational '" + std::string(text) + "'");
    const Integer den = parse_integer(den_text, text);
    if (den == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

std::string to_string(const Rational& value) {
    const Integer num = boost::multiprecision::numerator(value);
    const Integer den = boost::multiprecision::denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational make_rational(long long num, long long den) {
    if (den == 0) throw InvalidInput("zero denominator");
    // The backend rejects negative denominators.
    if (den < 0) return Rational(-Integer(num), -Integer(den));
    return Rational(Integer(num), Integer(den));
}

const Rational& ExtendedRational::value() const {
    if (infinite_) throw Error("value() called on an infinite ExtendedRational");
    return value_;
}

std::string to_string(const ExtendedRational& value) {
    return value.is_infinite() ? std::string("inf") : to_string(value.value());
}

std::ostream& operator<<(std::ostream& os, const ExtendedRational& value) { return os << to_string(value); }

Rational inverse_sum(const Rational& length, const ExtendedRational& resistance) {
    if (resistance.is_infinite()) return Rational(0);
    return Rational(1) / (length + resistance.value());
}

}  // namespace bz
