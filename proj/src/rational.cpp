#include "tcrisk/rational.hpp"

#include <stdexcept>

namespace tcrisk {

namespace {

bool is_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) return false;
    for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

// cpp_int's string constructor rejects an explicit plus sign.
std::string strip_plus(const std::string& s) {
    return (!s.empty() && s[0] == '+') ? s.substr(1) : s;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!is_integer_token(text)) {
            throw std::invalid_argument("not a rational: '" + text + "'");
        }
        return Rational(BigInt(strip_plus(text)));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den)) {
        throw std::invalid_argument("not a rational: '" + text + "'");
    }
    BigInt d(strip_plus(den));
    if (d <= 0) {
        throw std::invalid_argument("denominator must be positive: '" + text + "'");
    }
    return Rational(BigInt(strip_plus(num)), d);
}

std::string format_rational(const Rational& value) {
    const BigInt num = numerator(value);
    const BigInt den = denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace tcrisk
