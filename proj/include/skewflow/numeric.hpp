#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace skewflow {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Input or data that violates a documented precondition.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structurally malformed serialized data (CSV rows, report files).
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A declared experiment bound that the computed result violates.
struct AssertionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Int floor_div(const Int& a, const Int& b);

// Reduction into the fundamental domain [0, 1).
Rational mod1(const Rational& q);
double frac(double x);

// Exact binary value of a double; inverse is rounded to nearest.
Rational rational_of_double(double x);
double to_double(const Rational& q);

long long to_int64(const Int& n);
bool is_integer(const Rational& q);

// 2^-64 fixed point on the circle: a uint64_t numerator over 2^64, so native
// wrapping addition and multiplication are exact mod 1.  Doubles in [2^-11, 1)
// convert without rounding.
std::uint64_t fixed64_of_double(double x);
std::uint64_t fixed64_of_rational(const Rational& q);  // q in [0,1), round to nearest
double fixed64_to_double(std::uint64_t v);

// Residue of an arbitrary integer mod 2^64, as the wrapping multiplier it
// acts by on the fixed-point grid.
std::uint64_t wrap64(const Int& n);

// Deterministic stream for seeded experiment grids (splitmix64).
std::uint64_t splitmix64_next(std::uint64_t& state);

// Accepts "0.25", "1/3", "-3", "2.5e-3".  Exact.
// Strict base-10 integer: optional sign, digits only.  Guards against the
// bigint constructor reading a leading 0 as an octal prefix.
Int int_of_decimal(const std::string& s);

Rational parse_rational(const std::string& text);
std::string rational_string(const Rational& q);  // "num/den", or "num" when den = 1

// C(n, j) for arbitrary integer n and j >= 0.
Int binomial_int(const Int& n, int j);

}  // namespace skewflow
