#include "prl/rational.hpp"

#include "prl/errors.hpp"

#include <cctype>

namespace prl {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

BigInt parse_integer(std::string_view s) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw ParseError(0, "not an integer: '" + std::string(s) + "'");
    BigInt value{std::string(s)};
    return negative ? BigInt(-value) : value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw ParseError(0, "empty rational");
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_integer(trim(text.substr(0, slash)));
        std::string_view den_text = trim(text.substr(slash + 1));
        if (!den_text.empty() && den_text.front() == '+') den_text.remove_prefix(1);
        BigInt den = parse_integer(den_text);
        if (den == 0) throw ParseError(0, "zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        bool negative = !whole.empty() && whole.front() == '-';
        if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac))) {
            throw ParseError(0, "not a decimal: '" + std::string(text) + "'");
        }
        BigInt den = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
        BigInt num = (whole.empty() ? BigInt(0) : BigInt(std::string(whole))) * den +
                     (frac.empty() ? BigInt(0) : BigInt(std::string(frac)));
        Rational r(num, den);
        return negative ? Rational(-r) : r;
    }
    return Rational(parse_integer(text));
}

std::string format_rational(const Rational& value) {
    const BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace prl
