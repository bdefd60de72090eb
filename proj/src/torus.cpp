#include "skewflow/torus.hpp"

#include <cmath>
#include <numbers>

namespace skewflow {

const Rational& Scalar::rat() const {
    if (mode() != Mode::exact) throw ValidationError("Scalar::rat: floating-mode scalar");
    return std::get<Rational>(v_);
}

double Scalar::fp() const {
    if (mode() != Mode::floating) throw ValidationError("Scalar::fp: exact-mode scalar");
    return std::get<double>(v_);
}

double Scalar::as_double() const {
    return mode() == Mode::exact ? to_double(std::get<Rational>(v_)) : std::get<double>(v_);
}

TorusPoint TorusPoint::exact(const std::vector<Rational>& coords) {
    std::vector<Scalar> c;
    c.reserve(coords.size());
    for (const auto& q : coords) c.push_back(Scalar::exact(q));
    return TorusPoint(std::move(c));
}

TorusPoint TorusPoint::floating(const std::vector<double>& coords) {
    std::vector<Scalar> c;
    c.reserve(coords.size());
    for (double x : coords) c.push_back(Scalar::floating(x));
    return TorusPoint(std::move(c));
}

Mode TorusPoint::mode() const {
    if (coords_.empty()) return Mode::exact;
    const Mode m = coords_[0].mode();
    for (const auto& s : coords_)
        if (s.mode() != m) throw ValidationError("TorusPoint: mixed coordinate modes");
    return m;
}

CharacterVector CharacterVector::of(const std::vector<long long>& e) {
    std::vector<Int> v(e.begin(), e.end());
    return CharacterVector(std::move(v));
}

bool CharacterVector::trivial() const {
    for (const auto& e : exps)
        if (e != 0) return false;
    return true;
}

namespace {

void require_compatible(const TorusPoint& a, const TorusPoint& b, const char* op) {
    if (a.dim() != b.dim())
        throw ValidationError(std::string(op) + ": dimension mismatch");
    if (a.dim() > 0 && a.mode() != b.mode())
        throw ValidationError(std::string(op) + ": mode mismatch");
}

std::complex<double> unit_phase(double phase01) {
    const double ang = 2.0 * std::numbers::pi * phase01;
    return {std::cos(ang), std::sin(ang)};
}

}  // namespace

TorusPoint torus_add(const TorusPoint& a, const TorusPoint& b) {
    require_compatible(a, b, "torus_add");
    if (a.dim() == 0) return a;
    if (a.mode() == Mode::exact) {
        std::vector<Rational> out;
        out.reserve(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) out.push_back(a[i].rat() + b[i].rat());
        return TorusPoint::exact(out);
    }
    std::vector<double> out;
    out.reserve(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) out.push_back(a[i].fp() + b[i].fp());
    return TorusPoint::floating(out);
}

TorusPoint torus_scale(const Int& n, const TorusPoint& x) {
    if (x.dim() == 0) return x;
    if (x.mode() == Mode::exact) {
        std::vector<Rational> out;
        out.reserve(x.dim());
        for (std::size_t i = 0; i < x.dim(); ++i) out.push_back(Rational(n) * x[i].rat());
        return TorusPoint::exact(out);
    }
    // Reduce n*x mod 1 through the exact binary value of x; a plain double
    // product loses the fractional part entirely once n*x exceeds 2^53.
    std::vector<double> out;
    out.reserve(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i)
        out.push_back(to_double(mod1(Rational(n) * rational_of_double(x[i].fp()))));
    return TorusPoint::floating(out);
}

double torus_distance(const TorusPoint& a, const TorusPoint& b) {
    require_compatible(a, b, "torus_distance");
    if (a.dim() == 0) return 0.0;
    if (a.mode() == Mode::exact) {
        Rational best = 0;
        for (std::size_t i = 0; i < a.dim(); ++i) {
            const Rational d = mod1(a[i].rat() - b[i].rat());
            const Rational circ = d <= Rational(1, 2) ? d : Rational(1) - d;
            if (circ > best) best = circ;
        }
        return to_double(best);
    }
    double best = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const double d = std::fabs(a[i].fp() - b[i].fp());
        best = std::max(best, std::min(d, 1.0 - d));
    }
    return best;
}

std::complex<double> char_eval(const CharacterVector& eta, const TorusPoint& x) {
    if (eta.dim() != x.dim()) throw ValidationError("char_eval: dimension mismatch");
    if (eta.trivial()) return {1.0, 0.0};
    Rational phase = 0;
    for (std::size_t i = 0; i < x.dim(); ++i) {
        if (eta.exps[i] == 0) continue;
        const Rational xi =
            x[i].mode() == Mode::exact ? x[i].rat() : rational_of_double(x[i].fp());
        phase += Rational(eta.exps[i]) * xi;
    }
    return unit_phase(to_double(mod1(phase)));
}

std::complex<double> haar_character_integral(const CharacterVector& eta) {
    return eta.trivial() ? std::complex<double>{1.0, 0.0} : std::complex<double>{0.0, 0.0};
}

}  // namespace skewflow
