#include "skewflow/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace skewflow {

std::vector<long long> default_checkpoints(long long N) {
    std::vector<long long> cps;
    for (long long c : {N / 100, N / 10, N})
        if (c >= 1 && (cps.empty() || c > cps.back())) cps.push_back(c);
    return cps;
}

namespace {

void check_numeric(const SkewSystem& s, const char* op) {
    if (s.symbolic_gamma)
        throw ValidationError(std::string(op) + ": numeric generator required");
}

void check_character(const SkewSystem& s, const CharacterVector& eta, const char* op) {
    if (static_cast<int>(eta.dim()) != s.dim())
        throw ValidationError(std::string(op) + ": character has wrong dimension");
}

std::vector<long long> resolve_checkpoints(std::vector<long long> cps, long long N,
                                           const char* op) {
    if (N < 1) throw ValidationError(std::string(op) + ": N must be >= 1");
    if (cps.empty()) cps = default_checkpoints(N);
    for (std::size_t i = 0; i < cps.size(); ++i) {
        if (cps[i] < 1 || cps[i] > N)
            throw ValidationError(std::string(op) + ": checkpoints must lie in [1, N]");
        if (i > 0 && cps[i] <= cps[i - 1])
            throw ValidationError(std::string(op) + ": checkpoints must increase");
    }
    return cps;
}

// Phase of the character along the orbit of x, as a polynomial in the step
// count: each coordinate of T^n x is c_i(n) gamma0_b + sum_j a_{i,j}(n) x_{j,b}
// with all inputs on the 2^-64 grid, so the plan's modulus stays 2^64 and the
// cursor reproduces the wrapping orbit arithmetic exactly.
PhasePlan character_plan(const SkewSystem& s, const Fx64Point& x, const CharacterVector& eta) {
    static const Int two64 = Int(1) << 64;
    Poly p;
    for (int b = 0; b < s.m; ++b) {
        const Rational g0(Int(s.gamma0_fx[b]), two64);
        for (int i = 1; i <= s.k; ++i) {
            const Int& e = eta.exps[(i - 1) * s.m + b];
            if (e == 0) continue;
            p = p + s.cpoly[i - 1].scaled(Rational(e) * g0);
            for (int j = 1; j <= i; ++j) {
                const Rational xj(Int(x.v[(j - 1) * s.m + b]), two64);
                p = p + s.apoly[i - 1][j - 1].scaled(Rational(e) * xj);
            }
        }
    }
    return plan_from_coeffs(p.coeffs());
}

std::vector<std::uint64_t> wrapped_exponents(const CharacterVector& eta) {
    std::vector<std::uint64_t> w;
    w.reserve(eta.dim());
    for (const Int& e : eta.exps) w.push_back(wrap64(e));
    return w;
}

std::uint64_t state_phase(const std::vector<std::uint64_t>& etaw, const Fx64Point& p) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < etaw.size(); ++c) acc += etaw[c] * p.v[c];
    return acc;
}

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInvTwo64 = 1.0 / 18446744073709551616.0;

std::complex<double> cursor_average(const PhasePlan& plan, long long N) {
    PhaseCursor cur(plan, 0);
    Neumaier re, im;
    for (long long n = 0; n < N; ++n) {
        const double ang = kTwoPi * cur.phase();
        re.add(std::cos(ang));
        im.add(std::sin(ang));
        cur.step();
    }
    return {re.total() / static_cast<double>(N), im.total() / static_cast<double>(N)};
}

std::complex<double> orbit_average(const SkewSystem& s, const Fx64Point& start,
                                   const std::vector<std::uint64_t>& etaw, long long N) {
    OrbitCursor cur(s, start);
    Neumaier re, im;
    for (long long n = 0; n < N; ++n) {
        const double ang =
            kTwoPi * (static_cast<double>(state_phase(etaw, cur.state())) * kInvTwo64);
        re.add(std::cos(ang));
        im.add(std::sin(ang));
        if (n + 1 < N) cur.advance();
    }
    return {re.total() / static_cast<double>(N), im.total() / static_cast<double>(N)};
}

double diameter(const std::vector<std::complex<double>>& vals) {
    double d = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i)
        for (std::size_t j = i + 1; j < vals.size(); ++j)
            d = std::max(d, std::abs(vals[i] - vals[j]));
    return d;
}

double fx_distance(const Fx64Point& a, const Fx64Point& b) {
    std::uint64_t worst = 0;
    for (std::size_t c = 0; c < a.v.size(); ++c) {
        const std::uint64_t du = a.v[c] - b.v[c];
        worst = std::max(worst, std::min(du, 0 - du));
    }
    return static_cast<double>(worst) * kInvTwo64;
}

}  // namespace

BirkhoffReport birkhoff_average(const SkewSystem& s, const TorusPoint& x,
                                const CharacterVector& eta, long long N,
                                std::vector<long long> checkpoints) {
    check_numeric(s, "birkhoff_average");
    check_character(s, eta, "birkhoff_average");
    BirkhoffReport rep;
    rep.N = N;
    rep.checkpoints = resolve_checkpoints(std::move(checkpoints), N, "birkhoff_average");
    rep.target = haar_character_integral(eta);

    const PhasePlan plan = character_plan(s, to_fixed(s, x), eta);
    const auto sums = phase_prefix_sums(plan, rep.checkpoints);
    rep.averages.reserve(sums.size());
    for (std::size_t i = 0; i < sums.size(); ++i)
        rep.averages.push_back(sums[i] / static_cast<double>(rep.checkpoints[i]));
    return rep;
}

BirkhoffReport birkhoff_average_serial(const SkewSystem& s, const TorusPoint& x,
                                       const CharacterVector& eta, long long N,
                                       std::vector<long long> checkpoints) {
    check_numeric(s, "birkhoff_average");
    check_character(s, eta, "birkhoff_average");
    BirkhoffReport rep;
    rep.N = N;
    rep.checkpoints = resolve_checkpoints(std::move(checkpoints), N, "birkhoff_average");
    rep.target = haar_character_integral(eta);

    const auto etaw = wrapped_exponents(eta);
    OrbitCursor cur(s, to_fixed(s, x));
    Neumaier re, im;
    std::size_t next = 0;
    for (long long n = 0; n < N && next < rep.checkpoints.size(); ++n) {
        const double ang =
            kTwoPi * (static_cast<double>(state_phase(etaw, cur.state())) * kInvTwo64);
        re.add(std::cos(ang));
        im.add(std::sin(ang));
        while (next < rep.checkpoints.size() && rep.checkpoints[next] == n + 1) {
            const double inv = 1.0 / static_cast<double>(rep.checkpoints[next]);
            rep.averages.emplace_back(re.total() * inv, im.total() * inv);
            ++next;
        }
        cur.advance();
    }
    return rep;
}

WeylReport weyl_sum(const Poly& p, const std::vector<long long>& checkpoints) {
    WeylReport rep;
    rep.checkpoints = resolve_checkpoints(checkpoints, std::numeric_limits<long long>::max() - 1,
                                          "weyl_sum");
    const PhasePlan plan = plan_from_coeffs(p.coeffs());
    std::vector<long long> cuts;
    cuts.reserve(rep.checkpoints.size());
    for (long long cp : rep.checkpoints) cuts.push_back(cp + 1);  // n runs through 0..N'
    rep.sums = phase_prefix_sums(plan, cuts);
    for (std::size_t i = 0; i < rep.sums.size(); ++i)
        rep.ratios.push_back(std::abs(rep.sums[i]) / static_cast<double>(rep.checkpoints[i]));
    return rep;
}

WeylReport weyl_sum_serial(const Poly& p, const std::vector<long long>& checkpoints) {
    WeylReport rep;
    rep.checkpoints = resolve_checkpoints(checkpoints, std::numeric_limits<long long>::max() - 1,
                                          "weyl_sum");
    const PhasePlan plan = plan_from_coeffs(p.coeffs());
    std::vector<long long> cuts;
    cuts.reserve(rep.checkpoints.size());
    for (long long cp : rep.checkpoints) cuts.push_back(cp + 1);
    rep.sums = phase_prefix_sums_serial(plan, cuts);
    for (std::size_t i = 0; i < rep.sums.size(); ++i)
        rep.ratios.push_back(std::abs(rep.sums[i]) / static_cast<double>(rep.checkpoints[i]));
    return rep;
}

UniformityReport oxtoby_uniformity(const SkewSystem& s, const CharacterVector& eta,
                                   const std::vector<Fx64Point>& starts, long long N) {
    check_numeric(s, "oxtoby_uniformity");
    check_character(s, eta, "oxtoby_uniformity");
    if (starts.empty()) throw ValidationError("oxtoby_uniformity: empty start grid");
    if (N < 1) throw ValidationError("oxtoby_uniformity: N must be >= 1");
    for (const auto& st : starts)
        if (static_cast<int>(st.v.size()) != s.dim())
            throw ValidationError("oxtoby_uniformity: start has wrong dimension");

    UniformityReport rep;
    rep.N = N;
    rep.averages.resize(starts.size());
    const long long count = static_cast<long long>(starts.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(thread_cap())
#endif
    for (long long i = 0; i < count; ++i)
        rep.averages[i] = cursor_average(character_plan(s, starts[i], eta), N);
    rep.spread = diameter(rep.averages);
    return rep;
}

UniformityReport oxtoby_uniformity_serial(const SkewSystem& s, const CharacterVector& eta,
                                          const std::vector<Fx64Point>& starts, long long N) {
    check_numeric(s, "oxtoby_uniformity");
    check_character(s, eta, "oxtoby_uniformity");
    if (starts.empty()) throw ValidationError("oxtoby_uniformity: empty start grid");
    if (N < 1) throw ValidationError("oxtoby_uniformity: N must be >= 1");
    for (const auto& st : starts)
        if (static_cast<int>(st.v.size()) != s.dim())
            throw ValidationError("oxtoby_uniformity: start has wrong dimension");

    UniformityReport rep;
    rep.N = N;
    rep.averages.reserve(starts.size());
    const auto etaw = wrapped_exponents(eta);
    for (const auto& st : starts) rep.averages.push_back(orbit_average(s, st, etaw, N));
    rep.spread = diameter(rep.averages);
    return rep;
}

std::vector<Fx64Point> seeded_starts(const SkewSystem& s, int count, std::uint64_t seed) {
    if (count < 0) throw ValidationError("seeded_starts: negative count");
    std::uint64_t state = seed;
    std::vector<Fx64Point> out(count);
    for (auto& p : out) {
        p.v.resize(s.dim());
        for (auto& v : p.v) v = splitmix64_next(state);
    }
    return out;
}

DistalityReport distality_probe(const SkewSystem& s, const Fx64Point& x, const Fx64Point& y,
                                long long N) {
    check_numeric(s, "distality_probe");
    if (static_cast<int>(x.v.size()) != s.dim() || static_cast<int>(y.v.size()) != s.dim())
        throw ValidationError("distality_probe: point has wrong dimension");
    if (N < 1) throw ValidationError("distality_probe: N must be >= 1");
    if (x == y) throw ValidationError("distality_probe: points coincide on the 2^-64 grid");

    DistalityReport rep;
    for (std::size_t c = 0; c < x.v.size(); ++c) {
        if (x.v[c] != y.v[c]) {
            rep.first_diff = static_cast<int>(c);
            rep.gap = x.v[c] - y.v[c];
            break;
        }
    }

    OrbitCursor cx(s, x), cy(s, y);
    rep.min_distance = std::numeric_limits<double>::infinity();
    for (long long n = 0; n < N; ++n) {
        const double d = fx_distance(cx.state(), cy.state());
        if (d < rep.min_distance) {
            rep.min_distance = d;
            rep.argmin = n;
        }
        if (n + 1 < N) {
            cx.advance();
            cy.advance();
        }
    }

    rep.gap_constant = true;
    for (long long n = -50; n <= 50; ++n) {
        const Fx64Point px = power_apply_fx(s, Int(n), x);
        const Fx64Point py = power_apply_fx(s, Int(n), y);
        if (px.v[rep.first_diff] - py.v[rep.first_diff] != rep.gap) {
            rep.gap_constant = false;
            break;
        }
    }
    return rep;
}

DistalityReport distality_probe(const SkewSystem& s, const TorusPoint& x, const TorusPoint& y,
                                long long N) {
    return distality_probe(s, to_fixed(s, x), to_fixed(s, y), N);
}

ScanReport ergodicity_scan(const SkewSystem& s, long long B, long long n_max, DualMap dual) {
    if (B < 1 || n_max < 1)
        throw ValidationError("ergodicity_scan: B and n_max must be >= 1");
    if (!dual) {
        if (s.kind != SystemKind::milnes)
            throw ValidationError("ergodicity_scan: dual action is defined for the power preset");
        dual = [&s](const CharacterVector& eta, const Int& n) { return dual_power(s, eta, n); };
    }

    const int d = s.dim();
    double est = 1.0;
    for (int c = 0; c < d; ++c) est *= static_cast<double>(2 * B + 1);
    if (est * static_cast<double>(n_max) > 2e7)
        throw ValidationError("ergodicity_scan: character box too large");

    ScanReport rep;
    rep.n_max = n_max;
    std::vector<long long> digits(d, -B);
    while (true) {
        const bool zero = std::all_of(digits.begin(), digits.end(),
                                      [](long long v) { return v == 0; });
        if (!zero) {
            ++rep.characters_checked;
            const CharacterVector eta = CharacterVector::of(digits);
            for (long long n = 1; n <= n_max; ++n) {
                const DualPower dp = dual(eta, Int(n));
                if (!(dp.exponents == eta)) continue;
                bool phase_zero = true;
                for (const Poly& ph : dp.phase)
                    if (ph.eval_int(Int(n)) != 0) {
                        phase_zero = false;
                        break;
                    }
                if (phase_zero) {
                    rep.hits.push_back({eta, n});
                    break;
                }
            }
        }
        int pos = 0;
        while (pos < d && digits[pos] == B) {
            digits[pos] = -B;
            ++pos;
        }
        if (pos == d) break;
        ++digits[pos];
    }
    return rep;
}

}  // namespace skewflow
