#include "skewflow/numeric.hpp"

#include <cmath>
#include <limits>

namespace skewflow {

Int floor_div(const Int& a, const Int& b) {
    if (b == 0) throw ValidationError("floor_div: division by zero");
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Rational mod1(const Rational& q) {
    const Int f = floor_div(numerator(q), denominator(q));
    return q - Rational(f);
}

double frac(double x) {
    if (!std::isfinite(x)) throw ValidationError("frac: non-finite value");
    double r = x - std::floor(x);
    if (r >= 1.0) r = 0.0;  // x slightly below an integer can round up
    if (r < 0.0) r = 0.0;
    return r;
}

Rational rational_of_double(double x) {
    if (!std::isfinite(x)) throw ValidationError("rational_of_double: non-finite value");
    return Rational(x);  // exact binary expansion
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

long long to_int64(const Int& n) {
    if (n > std::numeric_limits<long long>::max() || n < std::numeric_limits<long long>::min())
        throw ValidationError("integer out of 64-bit range: " + n.str());
    return n.convert_to<long long>();
}

bool is_integer(const Rational& q) { return denominator(q) == 1; }

std::uint64_t fixed64_of_double(double x) {
    if (!(x >= 0.0 && x < 1.0)) throw ValidationError("fixed64_of_double: value outside [0,1)");
    const double scaled = std::ldexp(x, 64);  // exact: power-of-two scaling
    // Doubles below 2^-11 carry mantissa bits beyond 2^-64; round those once.
    if (scaled >= 18446744073709551615.0) return UINT64_C(0xFFFFFFFFFFFFFFFF);
    return static_cast<std::uint64_t>(scaled);
}

std::uint64_t fixed64_of_rational(const Rational& q) {
    if (q < 0 || q >= 1) throw ValidationError("fixed64_of_rational: value outside [0,1)");
    const Int num = numerator(q) << 64;
    const Int den = denominator(q);
    Int r = (num + den / 2) / den;  // round to nearest, half up
    if (r >> 64 != 0) r = 0;       // values rounding to 1 wrap to 0
    return r.convert_to<std::uint64_t>();
}

double fixed64_to_double(std::uint64_t v) { return std::ldexp(static_cast<double>(v), -64); }

std::uint64_t wrap64(const Int& n) {
    static const Int two64 = Int(1) << 64;
    Int r = n % two64;
    if (r < 0) r += two64;
    return r.convert_to<std::uint64_t>();
}

std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += UINT64_C(0x9E3779B97F4A7C15);
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * UINT64_C(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)) * UINT64_C(0x94D049BB133111EB);
    return z ^ (z >> 31);
}

Int int_of_decimal(const std::string& s) {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    if (i >= s.size() || s.find_first_not_of("0123456789", i) != std::string::npos)
        throw ValidationError("not a base-10 integer: '" + s + "'");
    while (i + 1 < s.size() && s[i] == '0') ++i;
    const Int v(s.substr(i));
    return neg ? -v : v;
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw ValidationError("parse_rational: empty string");
    const auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            const Int num = int_of_decimal(text.substr(0, slash));
            const Int den = int_of_decimal(text.substr(slash + 1));
            if (den == 0) throw ValidationError("parse_rational: zero denominator");
            return Rational(num, den);
        }
        std::string digits = text;
        bool neg = false;
        if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) {
            neg = digits[0] == '-';
            digits.erase(0, 1);
        }
        long exp10 = 0;
        const auto epos = digits.find_first_of("eE");
        if (epos != std::string::npos) {
            exp10 = std::stol(digits.substr(epos + 1));
            digits.erase(epos);
        }
        const auto dot = digits.find('.');
        if (dot != std::string::npos) {
            exp10 -= static_cast<long>(digits.size() - dot - 1);
            digits.erase(dot, 1);
        }
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw ValidationError("parse_rational: malformed number '" + text + "'");
        Rational q{int_of_decimal(digits)};
        Int p10 = 1;
        for (long i = 0; i < std::labs(exp10); ++i) p10 *= 10;
        if (exp10 >= 0)
            q *= Rational(p10);
        else
            q /= Rational(p10);
        return neg ? -q : q;
    } catch (const std::invalid_argument&) {
        throw ValidationError("parse_rational: malformed number '" + text + "'");
    }
}

std::string rational_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

Int binomial_int(const Int& n, int j) {
    if (j < 0) return 0;
    Int num = 1, den = 1;
    for (int t = 0; t < j; ++t) {
        num *= n - t;
        den *= t + 1;
    }
    return num / den;  // product of j consecutive integers is divisible by j!
}

}  // namespace skewflow
