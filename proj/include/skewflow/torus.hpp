#pragma once

#include "skewflow/numeric.hpp"

#include <complex>
#include <variant>
#include <vector>

namespace skewflow {

enum class Mode { exact, floating };

// One circle coordinate, reduced to [0,1).  Exact mode stores a rational with
// 0 <= num < den; floating mode stores a double fractional part.
class Scalar {
public:
    static Scalar exact(const Rational& q) { return Scalar(mod1(q)); }
    static Scalar floating(double x) { return Scalar(frac(x)); }

    Mode mode() const { return std::holds_alternative<Rational>(v_) ? Mode::exact : Mode::floating; }
    const Rational& rat() const;
    double fp() const;
    double as_double() const;

    bool operator==(const Scalar& o) const { return v_ == o.v_; }

private:
    explicit Scalar(Rational q) : v_(std::move(q)) {}
    explicit Scalar(double x) : v_(x) {}
    std::variant<Rational, double> v_;
};

// A point of the d-torus with all coordinates in one mode.
class TorusPoint {
public:
    TorusPoint() = default;
    static TorusPoint exact(const std::vector<Rational>& coords);
    static TorusPoint floating(const std::vector<double>& coords);

    std::size_t dim() const { return coords_.size(); }
    Mode mode() const;
    const Scalar& operator[](std::size_t i) const { return coords_[i]; }
    const std::vector<Scalar>& coords() const { return coords_; }

    bool operator==(const TorusPoint& o) const { return coords_ == o.coords_; }

private:
    explicit TorusPoint(std::vector<Scalar> c) : coords_(std::move(c)) {}
    std::vector<Scalar> coords_;
};

// Integer exponent vector indexing a character x -> e(2 pi i <eta, x>).
struct CharacterVector {
    std::vector<Int> exps;

    CharacterVector() = default;
    explicit CharacterVector(std::vector<Int> e) : exps(std::move(e)) {}
    static CharacterVector of(const std::vector<long long>& e);

    std::size_t dim() const { return exps.size(); }
    bool trivial() const;
    bool operator==(const CharacterVector& o) const { return exps == o.exps; }
};

TorusPoint torus_add(const TorusPoint& a, const TorusPoint& b);
TorusPoint torus_scale(const Int& n, const TorusPoint& x);

// Product-metric distance: max over coordinates of min(|d|, 1-|d|).
// Exact mode compares exactly, so the result is zero iff the points are equal.
double torus_distance(const TorusPoint& a, const TorusPoint& b);

// exp(2 pi i sum eta_j x_j); the phase is reduced mod 1 exactly in both modes.
std::complex<double> char_eval(const CharacterVector& eta, const TorusPoint& x);

// Integral of the character over Haar measure: 1 for the trivial character, else 0.
std::complex<double> haar_character_integral(const CharacterVector& eta);

}  // namespace skewflow
