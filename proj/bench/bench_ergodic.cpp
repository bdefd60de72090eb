// Times the chunked parallel averaging kernels against their serial
// reference implementations and reports the numerical gap between the two.
// Usage: bench-ergodic [N]   (default 2000000 terms)
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "skewflow/dynamics.hpp"
#include "skewflow/ergodic.hpp"
#include "skewflow/phase_engine.hpp"
#include "skewflow/polynomial.hpp"
#include "skewflow/torus.hpp"

using namespace skewflow;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, double serial_s, double parallel_s, double delta) {
    std::printf("%-22s %10.3fs %12.3fs %9.2fx %12.3e\n", name, serial_s, parallel_s,
                serial_s / parallel_s, delta);
}

}  // namespace

int main(int argc, char** argv) {
    const long long N = argc > 1 ? std::atoll(argv[1]) : 2000000;
    std::printf("N = %lld, threads = %d\n", N, thread_cap());
    std::printf("%-22s %11s %13s %10s %12s\n", "kernel", "serial", "parallel", "speedup",
                "|delta|");

    const SkewSystem s = milnes_system(4, (std::sqrt(5.0) - 1.0) / 2.0);
    std::vector<Int> e(4, Int(0));
    e[3] = 1;
    const CharacterVector eta(std::move(e));
    const TorusPoint x = TorusPoint::exact(std::vector<Rational>(4, Rational(0)));

    auto t0 = std::chrono::steady_clock::now();
    const BirkhoffReport bs = birkhoff_average_serial(s, x, eta, N, {N});
    const double bs_t = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    const BirkhoffReport bp = birkhoff_average(s, x, eta, N, {N});
    const double bp_t = seconds_since(t0);
    row("orbit average", bs_t, bp_t, std::abs(bs.averages.back() - bp.averages.back()));

    const Poly p = Poly::monomial(3, rational_of_double(std::sqrt(2.0) - 1.0));
    t0 = std::chrono::steady_clock::now();
    const WeylReport ws = weyl_sum_serial(p, {N});
    const double ws_t = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    const WeylReport wp = weyl_sum(p, {N});
    const double wp_t = seconds_since(t0);
    row("exponential sum", ws_t, wp_t, std::abs(ws.sums.back() - wp.sums.back()));

    const int starts_n = 32;
    const auto starts = seeded_starts(s, starts_n, 7);
    const long long per_start = std::max<long long>(N / starts_n, 1);
    t0 = std::chrono::steady_clock::now();
    const UniformityReport us = oxtoby_uniformity_serial(s, eta, starts, per_start);
    const double us_t = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    const UniformityReport up = oxtoby_uniformity(s, eta, starts, per_start);
    const double up_t = seconds_since(t0);
    row("start uniformity", us_t, up_t, std::abs(us.spread - up.spread));
    return 0;
}
