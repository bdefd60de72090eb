#pragma once

#include "skewflow/polynomial.hpp"

#include <complex>
#include <vector>

namespace skewflow {

// Exact evaluation of n -> p(n) mod 1 along consecutive integers.
//
// The values of p at integers are rationals whose denominator divides
// D = 2^64 * odd_scale; the cursor keeps the degree+1 finite differences of p
// as residues mod D and advances by additions only, so the whole orbit of
// phases is computed exactly.  Rounding happens once per step, in the final
// division when the residue becomes a double phase.
struct PhasePlan {
    Poly p;
    Int scale = 1;  // smallest s with every value denominator dividing 2^64 * s
};

// Plan for a polynomial given by monomial coefficients.  The scale comes from
// the value denominators at degree+1 consecutive integers, which bound the
// denominator of every integer value (difference-table closure); polynomials
// with dyadic values keep scale = 1 and the plain 2^64 modulus.
PhasePlan plan_from_coeffs(const std::vector<Rational>& coeffs);

class PhaseCursor {
public:
    static constexpr int kMaxDegree = 32;

    PhaseCursor(const PhasePlan& plan, long long n0);

    double phase() const { return static_cast<double>(d_[0]) * inv_modulus_; }
    void step();

private:
    using u128 = unsigned __int128;
    u128 modulus_ = 0;
    int deg_ = 0;
    u128 d_[kMaxDegree + 1] = {};
    double inv_modulus_ = 0.0;
};

// Compensated (Neumaier) accumulator.
struct Neumaier {
    double s = 0.0, c = 0.0;
    void add(double x);
    double total() const { return s + c; }
};

// sum_{n in [n0, n1)} exp(2 pi i p(n)).  The parallel version splits the range
// into fixed chunks seeded independently from the closed form and combines the
// per-chunk compensated sums in index order, so the result does not depend on
// the thread count.
std::complex<double> phase_sum(const PhasePlan& plan, long long n0, long long n1);
std::complex<double> phase_sum_serial(const PhasePlan& plan, long long n0, long long n1);

// Prefix sums over [0, cut) for an ascending list of cuts.
std::vector<std::complex<double>> phase_prefix_sums(const PhasePlan& plan,
                                                    const std::vector<long long>& cuts);
std::vector<std::complex<double>> phase_prefix_sums_serial(const PhasePlan& plan,
                                                           const std::vector<long long>& cuts);

// Worker-thread budget: SKEWFLOW_THREADS caps the OpenMP default.
int thread_cap();

}  // namespace skewflow
