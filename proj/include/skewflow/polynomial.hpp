#pragma once

#include "skewflow/numeric.hpp"

#include <vector>

namespace skewflow {

// Dense univariate polynomial over the rationals, coefficient of n^i at
// index i, no trailing zeros.
class Poly {
public:
    Poly() = default;
    explicit Poly(const Rational& c);
    explicit Poly(std::vector<Rational> coeffs);
    static Poly monomial(int deg, const Rational& c = Rational(1));

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    Rational coeff(int i) const;
    const std::vector<Rational>& coeffs() const { return c_; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly scaled(const Rational& c) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }

    Rational eval(const Rational& n) const;
    Rational eval_int(const Int& n) const;

    // p(n + a)
    Poly shifted(const Rational& a) const;

    // D with D(n) = sum_{t=0}^{n-1} p(t) for n >= 0, as a polynomial identity.
    Poly discrete_sum() const;

    // Coefficients b_r with p(n) = sum_r b_r C(n, r); b_r = (forward difference)^r p(0).
    // Integral b_r for all r is exactly integer-valuedness of p on the integers.
    std::vector<Rational> binomial_coeffs() const;

    std::string str(const std::string& var = "n") const;

private:
    void trim();
    std::vector<Rational> c_;
};

// C(n, r) as a polynomial in n: n(n-1)...(n-r+1)/r!.
Poly binomial_poly(int r);

}  // namespace skewflow
