#pragma once

#include "skewflow/dynamics.hpp"
#include "skewflow/phase_engine.hpp"

#include <complex>
#include <vector>

namespace skewflow {

// The orbit-to-sequence map on a depth-k tower over the circle: the sequence
// point at time n has additive phase
//   n^k lam + n^{k-1} x_1 + ... + n x_{k-1} + x_k   (mod 1),
// so the whole image of the map lives inside the shift-orbit closure of the
// pure sequence n -> n^k lam.  Everything here is m = 1.

// Floating value of the phase, computed on the 2^-64 grid; exact-mode
// coordinates round onto the grid first.
double gamma_eval(const TorusPoint& x, const Int& n, double lam);

// Exact value with the top coefficient kept symbolic: frac + lam_coeff * lam.
struct GammaValue {
    Rational frac;  // in [0,1)
    Int lam_coeff;  // always n^k
    bool operator==(const GammaValue&) const = default;
};

GammaValue gamma_eval_sym(const std::vector<Rational>& x, const Int& n);

// Coefficient of one power of n in a symbolic phase: a rational constant, a
// multiple of the generator lam, and a linear combination of the tower
// coordinates, all exact.
struct LinExpr {
    Rational r;
    Rational lam;
    std::vector<Rational> xs;  // coefficient of x_1..x_k
    bool operator==(const LinExpr&) const = default;
};

// Dense polynomial in n with LinExpr coefficients, index = power of n.
using PhasePolySym = std::vector<LinExpr>;

// The phase polynomial of the sequence attached to a rational point, with
// lam symbolic; coefficient of n^t is x_{k-t} for t < k and lam at t = k.
PhasePolySym gamma_poly(const std::vector<Rational>& x);

// Coefficientwise comparison of the two routes around the square: advance the
// sequence index by one versus apply the tower map first.  Both sides are
// expanded symbolically over (1, lam, x_1..x_k).
struct CoeffMismatch {
    int power = 0;
    LinExpr lhs, rhs;
};

struct HomomorphismReport {
    int k = 0;
    PhasePolySym lhs;  // phase of the sequence at n+1
    PhasePolySym rhs;  // phase at n of the sequence attached to the image point
    std::vector<CoeffMismatch> mismatches;
    bool ok() const { return mismatches.empty(); }
};

// Checks the exchange identity for the power preset at depth k.
HomomorphismReport homomorphism_check(int k);

// The same expansion with explicit one-step coefficients for the image point;
// lets a deliberately damaged map show up as a localized mismatch.
HomomorphismReport homomorphism_check(int k, const AffineCoeffs& step);

// Decides whether two rational points yield the same sequence: their phase
// difference is a polynomial in n that must vanish mod 1 at every integer,
// which holds exactly when its coefficients over the binomial basis C(n,r)
// are all integers.
struct KernelReport {
    bool equal = false;
    std::vector<Rational> basis_gap;  // binomial-basis coefficients of the difference
};

KernelReport kernel_witness_check(const std::vector<Rational>& x, const std::vector<Rational>& y);

// Window of unit-circle sequence values e(phase(n)) for n in [n0, n0 + W).
struct FunctionWindow {
    long long n0 = 0;
    std::vector<std::complex<double>> values;
};

FunctionWindow gamma_window(const TorusPoint& x, long long n0, long long W, double lam);

// Shift averages A_a = (1/N) sum_{n<N} e(mult * (n+a)^k * lam); unique
// ergodicity of the pure sequence predicts uniformly small values.
struct SalehiReport {
    std::vector<long long> shifts;
    std::vector<std::complex<double>> averages;
    double max_abs = 0.0;
};

SalehiReport salehi_average(long long mult, int k, double lam,
                            const std::vector<long long>& shifts, long long N);
SalehiReport salehi_average_serial(long long mult, int k, double lam,
                                   const std::vector<long long>& shifts, long long N);

}  // namespace skewflow
