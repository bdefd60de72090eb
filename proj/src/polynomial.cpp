#include "skewflow/polynomial.hpp"

#include <sstream>

namespace skewflow {

Poly::Poly(const Rational& c) {
    if (c != 0) c_.push_back(c);
}

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(int deg, const Rational& c) {
    if (c == 0) return Poly();
    std::vector<Rational> v(deg + 1, Rational(0));
    v[deg] = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Rational(0);
    return c_[i];
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rational> v(std::max(c_.size(), o.c_.size()), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return Poly(std::move(v));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    std::vector<Rational> v = c_;
    for (auto& c : v) c = -c;
    return Poly(std::move(v));
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Rational> v(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(v));
}

Poly Poly::scaled(const Rational& c) const {
    if (c == 0) return Poly();
    std::vector<Rational> v = c_;
    for (auto& x : v) x *= c;
    return Poly(std::move(v));
}

Rational Poly::eval(const Rational& n) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * n + *it;
    return acc;
}

Rational Poly::eval_int(const Int& n) const { return eval(Rational(n)); }

Poly Poly::shifted(const Rational& a) const {
    // Horner over the shifted variable: fold top coefficients through (n + a).
    Poly result;
    const Poly lin(std::vector<Rational>{a, Rational(1)});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) result = result * lin + Poly(*it);
    return result;
}

std::vector<Rational> Poly::binomial_coeffs() const {
    const int d = std::max(degree(), 0);
    std::vector<Rational> row(d + 1);
    for (int t = 0; t <= d; ++t) row[t] = eval(Rational(t));
    std::vector<Rational> out;
    out.reserve(d + 1);
    for (int r = 0; r <= d; ++r) {
        out.push_back(row[0]);
        for (int t = 0; t + r < d; ++t) row[t] = row[t + 1] - row[t];
    }
    return out;
}

Poly Poly::discrete_sum() const {
    // In the binomial basis, sum_{t=0}^{n-1} C(t, r) = C(n, r+1).
    const auto b = binomial_coeffs();
    Poly out;
    for (std::size_t r = 0; r < b.size(); ++r)
        out = out + binomial_poly(static_cast<int>(r) + 1).scaled(b[r]);
    return out;
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        if (coeff(i) == 0) continue;
        if (!first) os << " + ";
        os << rational_string(coeff(i));
        if (i >= 1) os << "*" << var;
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return os.str();
}

Poly binomial_poly(int r) {
    Poly p(Rational(1));
    Rational fact = 1;
    for (int t = 0; t < r; ++t) {
        p = p * Poly(std::vector<Rational>{Rational(-t), Rational(1)});
        fact *= t + 1;
    }
    return p.scaled(Rational(1) / fact);
}

}  // namespace skewflow
