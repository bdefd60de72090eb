#include "skewflow/factor_map.hpp"

#include <cmath>
#include <numbers>

namespace skewflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInvTwo64 = 1.0 / 18446744073709551616.0;

std::uint64_t npow_wrapped(const Int& n, int p) {
    Int v = 1;
    for (int t = 0; t < p; ++t) v *= n;
    return wrap64(v);
}

std::uint64_t coord_fx(const Scalar& s) {
    return s.mode() == Mode::floating ? fixed64_of_double(s.fp()) : fixed64_of_rational(s.rat());
}

}  // namespace

double gamma_eval(const TorusPoint& x, const Int& n, double lam) {
    const int k = static_cast<int>(x.dim());
    if (k < 1) throw ValidationError("gamma_eval: point must have at least one coordinate");
    std::uint64_t acc = npow_wrapped(n, k) * fixed64_of_double(frac(lam));
    for (int j = 1; j <= k; ++j) acc += npow_wrapped(n, k - j) * coord_fx(x[j - 1]);
    return fixed64_to_double(acc);
}

GammaValue gamma_eval_sym(const std::vector<Rational>& x, const Int& n) {
    const int k = static_cast<int>(x.size());
    if (k < 1) throw ValidationError("gamma_eval_sym: point must have at least one coordinate");
    GammaValue out;
    Int npow = 1;
    Rational fr = 0;
    for (int j = k; j >= 1; --j) {
        fr += Rational(npow) * x[j - 1];
        npow *= n;
    }
    out.frac = mod1(fr);
    out.lam_coeff = npow;  // n^k
    return out;
}

PhasePolySym gamma_poly(const std::vector<Rational>& x) {
    const int k = static_cast<int>(x.size());
    if (k < 1) throw ValidationError("gamma_poly: point must have at least one coordinate");
    PhasePolySym p(k + 1);
    for (auto& c : p) c.xs.assign(k, Rational(0));
    for (int t = 0; t < k; ++t) p[t].r = x[k - t - 1];
    p[k].lam = 1;
    return p;
}

namespace {

PhasePolySym zero_sym(int k) {
    PhasePolySym p(k + 1);
    for (auto& c : p) c.xs.assign(k, Rational(0));
    return p;
}

}  // namespace

HomomorphismReport homomorphism_check(int k, const AffineCoeffs& step) {
    if (k < 1) throw ValidationError("homomorphism_check: k must be >= 1");
    if (static_cast<int>(step.c.size()) != k || static_cast<int>(step.a.size()) != k)
        throw ValidationError("homomorphism_check: one-step data has wrong depth");
    for (int i = 1; i <= k; ++i)
        if (static_cast<int>(step.a[i - 1].size()) != i)
            throw ValidationError("homomorphism_check: one-step row has wrong length");

    HomomorphismReport rep;
    rep.k = k;
    rep.lhs = zero_sym(k);
    rep.rhs = zero_sym(k);

    // Sequence phase at n+1: (n+1)^k lam + sum_j (n+1)^{k-j} x_j.
    for (int t = 0; t <= k; ++t) rep.lhs[t].lam = Rational(binomial_int(Int(k), t));
    for (int j = 1; j <= k; ++j)
        for (int t = 0; t <= k - j; ++t)
            rep.lhs[t].xs[j - 1] = Rational(binomial_int(Int(k - j), t));

    // Phase at n of the image point: n^k lam + sum_j n^{k-j} (image)_j with
    // (image)_j = c_j lam + sum_s a_{j,s} x_s.
    rep.rhs[k].lam = 1;
    for (int j = 1; j <= k; ++j) {
        rep.rhs[k - j].lam += step.c[j - 1];
        for (int s = 1; s <= j; ++s) rep.rhs[k - j].xs[s - 1] += Rational(step.a[j - 1][s - 1]);
    }

    for (int t = 0; t <= k; ++t)
        if (!(rep.lhs[t] == rep.rhs[t])) rep.mismatches.push_back({t, rep.lhs[t], rep.rhs[t]});
    return rep;
}

HomomorphismReport homomorphism_check(int k) {
    if (k < 1) throw ValidationError("homomorphism_check: k must be >= 1");
    const SkewSystem s = milnes_system(k, 1, std::nullopt);
    return homomorphism_check(k, power_coeffs(s, 1));
}

KernelReport kernel_witness_check(const std::vector<Rational>& x, const std::vector<Rational>& y) {
    const int k = static_cast<int>(x.size());
    if (k < 1) throw ValidationError("kernel_witness_check: empty point");
    if (y.size() != x.size())
        throw ValidationError("kernel_witness_check: points have different dimensions");

    // Difference of the two phases: the lam terms cancel, leaving
    // sum_j (x_j - y_j) n^{k-j}.  The sequences coincide exactly when this
    // polynomial is an integer at every integer n.
    std::vector<Rational> coeffs(k);
    for (int j = 1; j <= k; ++j) coeffs[k - j] = x[j - 1] - y[j - 1];
    const Poly diff{coeffs};

    KernelReport rep;
    rep.basis_gap = diff.binomial_coeffs();
    rep.equal = true;
    for (const auto& b : rep.basis_gap)
        if (!is_integer(b)) {
            rep.equal = false;
            break;
        }
    return rep;
}

FunctionWindow gamma_window(const TorusPoint& x, long long n0, long long W, double lam) {
    if (W < 1) throw ValidationError("gamma_window: window length must be >= 1");
    FunctionWindow win;
    win.n0 = n0;
    win.values.reserve(W);
    const int k = static_cast<int>(x.dim());
    if (k < 1) throw ValidationError("gamma_window: point must have at least one coordinate");
    std::vector<std::uint64_t> fx(k);
    for (int j = 0; j < k; ++j) fx[j] = coord_fx(x[j]);
    const std::uint64_t lam_fx = fixed64_of_double(frac(lam));
    for (long long n = n0; n < n0 + W; ++n) {
        std::uint64_t acc = npow_wrapped(Int(n), k) * lam_fx;
        for (int j = 1; j <= k; ++j) acc += npow_wrapped(Int(n), k - j) * fx[j - 1];
        const double ang = kTwoPi * (static_cast<double>(acc) * kInvTwo64);
        win.values.emplace_back(std::cos(ang), std::sin(ang));
    }
    return win;
}

namespace {

SalehiReport salehi_common(long long mult, int k, double lam,
                           const std::vector<long long>& shifts, long long N, bool parallel) {
    if (mult == 0) throw ValidationError("salehi_average: multiplier must be nonzero");
    if (k < 1) throw ValidationError("salehi_average: k must be >= 1");
    if (N < 1) throw ValidationError("salehi_average: N must be >= 1");
    if (shifts.empty()) throw ValidationError("salehi_average: no shifts given");

    const Rational coeff = Rational(mult) * rational_of_double(lam);
    const PhasePlan plan = plan_from_coeffs(Poly::monomial(k, coeff).coeffs());

    SalehiReport rep;
    rep.shifts = shifts;
    rep.averages.reserve(shifts.size());
    for (long long a : shifts) {
        const auto sum = parallel ? phase_sum(plan, a, a + N) : phase_sum_serial(plan, a, a + N);
        const auto avg = sum / static_cast<double>(N);
        rep.averages.push_back(avg);
        rep.max_abs = std::max(rep.max_abs, std::abs(avg));
    }
    return rep;
}

}  // namespace

SalehiReport salehi_average(long long mult, int k, double lam,
                            const std::vector<long long>& shifts, long long N) {
    return salehi_common(mult, k, lam, shifts, N, true);
}

SalehiReport salehi_average_serial(long long mult, int k, double lam,
                                   const std::vector<long long>& shifts, long long N) {
    return salehi_common(mult, k, lam, shifts, N, false);
}

}  // namespace skewflow
