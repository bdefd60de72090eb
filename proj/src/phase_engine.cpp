#include "skewflow/phase_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace skewflow {

namespace {

using u128 = unsigned __int128;

constexpr long long kChunk = 1 << 14;

u128 u128_of(const Int& n) {
    const Int lo = n & Int(UINT64_C(0xFFFFFFFFFFFFFFFF));
    const Int hi = n >> 64;
    return (static_cast<u128>(hi.convert_to<std::uint64_t>()) << 64) |
           static_cast<u128>(lo.convert_to<std::uint64_t>());
}

}  // namespace

PhasePlan plan_from_coeffs(const std::vector<Rational>& coeffs) {
    PhasePlan plan;
    plan.p = Poly(coeffs);
    const int d = std::max(plan.p.degree(), 0);
    Int L = 1;
    for (int t = 0; t <= d; ++t)
        L = boost::multiprecision::lcm(L, denominator(plan.p.eval_int(Int(t))));
    const Int scale = L / boost::multiprecision::gcd(L, Int(1) << 64);
    if (scale > (Int(1) << 62))
        throw ValidationError("phase plan: value denominators exceed the 2^126 modulus budget");
    plan.scale = scale;
    return plan;
}

PhaseCursor::PhaseCursor(const PhasePlan& plan, long long n0) {
    deg_ = std::max(plan.p.degree(), 0);
    if (deg_ > kMaxDegree) throw ValidationError("phase cursor: polynomial degree too large");
    if (plan.scale <= 0 || plan.scale > (Int(1) << 62))
        throw ValidationError("phase cursor: invalid modulus scale");

    const Int D = (Int(1) << 64) * plan.scale;
    modulus_ = u128_of(D);
    inv_modulus_ = 1.0 / static_cast<double>(modulus_);

    // Residues of p(n0), ..., p(n0 + deg) mod D, then the difference table.
    std::vector<u128> row(deg_ + 1);
    for (int t = 0; t <= deg_; ++t) {
        const Rational v = plan.p.eval_int(Int(n0) + t);
        const Int den = denominator(v);
        if (D % den != 0)
            throw ValidationError("phase cursor: value denominator does not divide the modulus");
        Int r = (numerator(v) * (D / den)) % D;
        if (r < 0) r += D;
        row[t] = u128_of(r);
    }
    for (int j = 0; j <= deg_; ++j) {
        d_[j] = row[0];
        for (int t = 0; t + j < deg_; ++t)
            row[t] = row[t + 1] >= row[t] ? row[t + 1] - row[t]
                                          : modulus_ - (row[t] - row[t + 1]);
    }
}

void PhaseCursor::step() {
    for (int j = 0; j < deg_; ++j) {
        d_[j] += d_[j + 1];
        if (d_[j] >= modulus_) d_[j] -= modulus_;
    }
}

void Neumaier::add(double x) {
    const double t = s + x;
    c += std::fabs(s) >= std::fabs(x) ? (s - t) + x : (x - t) + s;
    s = t;
}

int thread_cap() {
    static const int cap = [] {
        int n = 1;
#ifdef _OPENMP
        n = omp_get_max_threads();
#endif
        if (const char* env = std::getenv("SKEWFLOW_THREADS")) {
            const int v = std::atoi(env);
            if (v >= 1) n = std::min(n, v);
        }
        return std::max(n, 1);
    }();
    return cap;
}

namespace {

std::complex<double> run_chunk(const PhasePlan& plan, long long lo, long long hi) {
    PhaseCursor cur(plan, lo);
    Neumaier re, im;
    for (long long n = lo; n < hi; ++n) {
        const double ang = 2.0 * std::numbers::pi * cur.phase();
        re.add(std::cos(ang));
        im.add(std::sin(ang));
        cur.step();
    }
    return {re.total(), im.total()};
}

struct Segmented {
    std::vector<std::pair<long long, long long>> chunks;
    std::vector<std::size_t> seg_end;  // chunks-per-prefix boundary
};

Segmented make_chunks(const std::vector<long long>& cuts) {
    Segmented out;
    long long lo = 0;
    for (long long cut : cuts) {
        for (long long a = lo; a < cut; a += kChunk)
            out.chunks.emplace_back(a, std::min(a + kChunk, cut));
        out.seg_end.push_back(out.chunks.size());
        lo = cut;
    }
    return out;
}

}  // namespace

std::vector<std::complex<double>> phase_prefix_sums(const PhasePlan& plan,
                                                    const std::vector<long long>& cuts) {
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        if (cuts[i] < 0 || (i > 0 && cuts[i] < cuts[i - 1]))
            throw ValidationError("phase sums: cuts must be ascending and nonnegative");
    }
    const Segmented seg = make_chunks(cuts);
    std::vector<std::complex<double>> partial(seg.chunks.size());

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(thread_cap())
#endif
    for (long long t = 0; t < static_cast<long long>(seg.chunks.size()); ++t)
        partial[t] = run_chunk(plan, seg.chunks[t].first, seg.chunks[t].second);

    std::vector<std::complex<double>> out;
    out.reserve(cuts.size());
    Neumaier re, im;
    std::size_t next = 0;
    for (std::size_t s = 0; s < cuts.size(); ++s) {
        for (; next < seg.seg_end[s]; ++next) {
            re.add(partial[next].real());
            im.add(partial[next].imag());
        }
        out.emplace_back(re.total(), im.total());
    }
    return out;
}

std::vector<std::complex<double>> phase_prefix_sums_serial(const PhasePlan& plan,
                                                           const std::vector<long long>& cuts) {
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        if (cuts[i] < 0 || (i > 0 && cuts[i] < cuts[i - 1]))
            throw ValidationError("phase sums: cuts must be ascending and nonnegative");
    }
    std::vector<std::complex<double>> out;
    out.reserve(cuts.size());
    PhaseCursor cur(plan, 0);
    Neumaier re, im;
    long long n = 0;
    for (long long cut : cuts) {
        for (; n < cut; ++n) {
            const double ang = 2.0 * std::numbers::pi * cur.phase();
            re.add(std::cos(ang));
            im.add(std::sin(ang));
            cur.step();
        }
        out.emplace_back(re.total(), im.total());
    }
    return out;
}

std::complex<double> phase_sum(const PhasePlan& plan, long long n0, long long n1) {
    if (n1 <= n0) return {0.0, 0.0};
    if (n0 == 0) return phase_prefix_sums(plan, {n1})[0];
    // Shift the range to start at zero so chunking stays uniform.
    PhasePlan shifted{plan.p.shifted(Rational(n0)), plan.scale};
    return phase_prefix_sums(shifted, {n1 - n0})[0];
}

std::complex<double> phase_sum_serial(const PhasePlan& plan, long long n0, long long n1) {
    if (n1 <= n0) return {0.0, 0.0};
    PhaseCursor cur(plan, n0);
    Neumaier re, im;
    for (long long n = n0; n < n1; ++n) {
        const double ang = 2.0 * std::numbers::pi * cur.phase();
        re.add(std::cos(ang));
        im.add(std::sin(ang));
        cur.step();
    }
    return {re.total(), im.total()};
}

}  // namespace skewflow
