#pragma once

#include "skewflow/qfamily.hpp"
#include "skewflow/torus.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace skewflow {

enum class SystemKind { hahn, milnes, general };

const char* kind_name(SystemKind k);

// Skew product on T^(m*k) driven by a generator gamma0 in T^m:
//   y_i = J(k,i) Q_i(1) gamma0 + sum_{j=1}^{i} J(k-j, i-j) Q_{i-j}(1) x_j,
// acting blockwise on each of the m base coordinates.  The n-th power has the
// same affine shape with Q(1) replaced by Q(n); all linear coefficients are
// integers whenever the one-step integrality condition holds.
struct SkewSystem {
    SystemKind kind = SystemKind::general;
    int k = 0;  // tower depth
    int m = 1;  // base torus dimension

    // Numeric generator (floating orbits) or a formal symbol (exact identity
    // work tracks its integer coefficient instead of a value).
    bool symbolic_gamma = false;
    std::vector<double> gamma0;           // length m when numeric
    std::vector<std::uint64_t> gamma0_fx; // same values on the 2^-64 grid

    JSequence jseq;
    JTable jtab;
    QFamily family;

    // Coefficients as polynomials in the step count n:
    //   cpoly[i-1]       = c_i(n)     = J(k,i) Q_i(n)
    //   apoly[i-1][j-1]  = a_{i,j}(n) = J(k-j, i-j) Q_{i-j}(n),  j <= i.
    std::vector<Poly> cpoly;
    std::vector<std::vector<Poly>> apoly;

    // One-step values, cached as integers and as wrapped 64-bit multipliers.
    std::vector<Int> c1;
    std::vector<std::vector<Int>> a1;
    std::vector<std::uint64_t> c1w;
    std::vector<std::vector<std::uint64_t>> a1w;

    int dim() const { return m * k; }
};

// Validates, solves the polynomial family, and rejects non-integral one-step
// coefficients with the failing slot in the message.
SkewSystem build_system(const JSequence& j, const std::vector<Rational>& profile, int k, int m,
                        std::optional<std::vector<double>> gamma0);

// Same construction with the generator given exactly; each coordinate is
// rounded to the nearest 2^-64 grid point.
SkewSystem build_system(const JSequence& j, const std::vector<Rational>& profile, int k, int m,
                        const std::vector<Rational>& gamma0);

SkewSystem milnes_system(int k, int m, std::optional<std::vector<double>> gamma0);
SkewSystem hahn_system(int k, int m, std::optional<std::vector<double>> gamma0);
SkewSystem milnes_system(int k, double gamma0);  // m = 1
SkewSystem hahn_system(int k, double gamma0);    // m = 1

// Affine data of the n-th power: translation coefficients c_i(n) and the
// integer linear part a_{i,j}(n).
struct AffineCoeffs {
    Int n;
    std::vector<Rational> c;          // c[i-1]
    std::vector<std::vector<Int>> a;  // a[i-1][j-1], j <= i
};

AffineCoeffs power_coeffs(const SkewSystem& s, const Int& n);

// ---- Floating orbits (exact 2^-64 fixed point) ----------------------------
//
// Coordinates live on the 2^-64 grid, so every map application is exact mod 1
// and orbit_stream equals power_apply bit for bit.  Doubles convert to the
// grid without rounding, exact rationals round to the nearest grid point; the
// grid is the engine's resolution.

struct Fx64Point {
    std::vector<std::uint64_t> v;  // index (i-1)*m + b
    bool operator==(const Fx64Point&) const = default;
};

Fx64Point to_fixed(const SkewSystem& s, const TorusPoint& x);
TorusPoint to_floating(const SkewSystem& s, const Fx64Point& p);

void apply_in_place(const SkewSystem& s, Fx64Point& p);
void apply_inverse_in_place(const SkewSystem& s, Fx64Point& p);
Fx64Point power_apply_fx(const SkewSystem& s, const Int& n, const Fx64Point& x);

TorusPoint apply(const SkewSystem& s, const TorusPoint& x);
TorusPoint apply_inverse(const SkewSystem& s, const TorusPoint& x);
TorusPoint power_apply(const SkewSystem& s, const Int& n, const TorusPoint& x);

// Incremental forward orbit; confined to one thread.
class OrbitCursor {
public:
    OrbitCursor(const SkewSystem& s, const TorusPoint& start);
    OrbitCursor(const SkewSystem& s, Fx64Point start);

    const Fx64Point& state() const { return state_; }
    long long index() const { return n_; }
    void advance();
    TorusPoint point() const;

private:
    const SkewSystem* s_;
    Fx64Point state_;
    long long n_ = 0;
};

// T^0 x, T^1 x, ..., T^(N-1) x; empty for N = 0.
std::vector<TorusPoint> orbit_stream(const SkewSystem& s, const TorusPoint& x, long long N);

// ---- Exact orbits with a formal generator ---------------------------------
//
// Each coordinate is frac + gamma * gamma0_b with frac a rational in [0,1)
// and gamma an unreduced rational coefficient; the closed-form identities are
// affine in the generator, so equality of pairs is exact equality of orbits.

struct GammaCoord {
    Rational frac;
    Rational gamma;
    bool operator==(const GammaCoord&) const = default;
};
using SymPoint = std::vector<GammaCoord>;

SymPoint sym_point(const SkewSystem& s, const std::vector<Rational>& coords);
SymPoint apply_sym(const SkewSystem& s, const SymPoint& x);
SymPoint apply_inverse_sym(const SkewSystem& s, const SymPoint& x);
SymPoint power_apply_sym(const SkewSystem& s, const Int& n, const SymPoint& x);

// ---- Dual action on characters --------------------------------------------

// Exponent transform of the linear part's n-th power together with the
// translation phase: for the power preset,
//   zeta_{j} = sum_{i=j}^{k} C(k-j, i-j) n^(i-j) eta_i        (per block)
//   phase_b(n) = sum_i eta_{i,b} C(k,i) n^i  (coefficient of gamma0_b).
struct DualPower {
    CharacterVector exponents;
    std::vector<Poly> phase;  // one integer-coefficient polynomial per block
};

DualPower dual_power(const SkewSystem& s, const CharacterVector& eta, const Int& n);

}  // namespace skewflow
