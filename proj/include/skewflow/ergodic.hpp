#pragma once

#include "skewflow/dynamics.hpp"
#include "skewflow/phase_engine.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace skewflow {

// N/100, N/10, N with zeros dropped and duplicates merged.
std::vector<long long> default_checkpoints(long long N);

// Orbit averages of one character against its Haar target.
struct BirkhoffReport {
    long long N = 0;
    std::vector<long long> checkpoints;
    std::vector<std::complex<double>> averages;  // A_{N'} per checkpoint
    std::complex<double> target;                 // Haar integral of the character
};

// A_{N'} = (1/N') sum_{n<N'} char(T^n x) with compensated summation.  The
// parallel version evaluates the closed-form phase polynomial chunk by chunk;
// the serial reference walks the orbit one step at a time and pairs the state
// with the character directly.  Both see the same 2^-64 phase grid.
BirkhoffReport birkhoff_average(const SkewSystem& s, const TorusPoint& x,
                                const CharacterVector& eta, long long N,
                                std::vector<long long> checkpoints = {});
BirkhoffReport birkhoff_average_serial(const SkewSystem& s, const TorusPoint& x,
                                       const CharacterVector& eta, long long N,
                                       std::vector<long long> checkpoints = {});

// Normalized exponential sums S_{N'} = sum_{n=0}^{N'} e(p(n)), reported as
// |S_{N'}|/N'.  A degree >= 1 polynomial with an irrational leading phase
// should drive the ratios toward zero; constants keep ratio about 1.
struct WeylReport {
    std::vector<long long> checkpoints;
    std::vector<std::complex<double>> sums;
    std::vector<double> ratios;
};

WeylReport weyl_sum(const Poly& p, const std::vector<long long>& checkpoints);
WeylReport weyl_sum_serial(const Poly& p, const std::vector<long long>& checkpoints);

// Spread of per-start averages over a grid of starts: the diameter
// max |A_i - A_j| of the set of averages.  A small spread is the finite-N
// shadow of the uniform-in-x convergence hypothesis.
struct UniformityReport {
    long long N = 0;
    std::vector<std::complex<double>> averages;  // one per start
    double spread = 0.0;
};

UniformityReport oxtoby_uniformity(const SkewSystem& s, const CharacterVector& eta,
                                   const std::vector<Fx64Point>& starts, long long N);
UniformityReport oxtoby_uniformity_serial(const SkewSystem& s, const CharacterVector& eta,
                                          const std::vector<Fx64Point>& starts, long long N);

// Deterministic grid of start points: dim() raw 64-bit draws per start.
std::vector<Fx64Point> seeded_starts(const SkewSystem& s, int count, std::uint64_t seed);

// Closest approach of two orbits over the probe window, plus an exact
// certificate that the first differing coordinate keeps a constant gap: with
// x, y equal below coordinate l, the l-th row of the n-th power moves both
// points by the same amount, so (T^n x)_l - (T^n y)_l never changes.
struct DistalityReport {
    double min_distance = 0.0;
    long long argmin = 0;
    int first_diff = -1;        // flat coordinate index of the first differing entry
    std::uint64_t gap = 0;      // its wrapped initial gap on the 2^-64 grid
    bool gap_constant = false;  // exact equality of the gap for all |n| <= 50
};

DistalityReport distality_probe(const SkewSystem& s, const Fx64Point& x, const Fx64Point& y,
                                long long N);
DistalityReport distality_probe(const SkewSystem& s, const TorusPoint& x, const TorusPoint& y,
                                long long N);

// Brute-force search for nontrivial characters fixed by some power of the
// dual map.  A character is counted as fixed when the exponent vector returns
// to itself and the generator phase vanishes identically (the generator is
// treated as irrational, so a nonzero integer phase coefficient cannot cancel).
// An empty hit list over the box is finite evidence for ergodicity.
struct ScanHit {
    CharacterVector eta;
    long long n = 0;  // smallest fixing power
};

struct ScanReport {
    long long characters_checked = 0;
    long long n_max = 0;
    std::vector<ScanHit> hits;
};

// Injectable dual map, used to sanity-check the scan against a transform with
// known fixed characters; defaults to the system's own dual action.
using DualMap = std::function<DualPower(const CharacterVector&, const Int&)>;

ScanReport ergodicity_scan(const SkewSystem& s, long long B, long long n_max, DualMap dual = {});

}  // namespace skewflow
