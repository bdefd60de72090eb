#include "skewflow/ergodic.hpp"

#include "doctest.h"

#include <cmath>
#include <complex>

using namespace skewflow;

namespace {

double golden() { return frac((std::sqrt(5.0) - 1.0) / 2.0); }

}  // namespace

TEST_CASE("default checkpoints are the three decades of N") {
    CHECK(default_checkpoints(1000000) == std::vector<long long>{10000, 100000, 1000000});
    CHECK(default_checkpoints(50) == std::vector<long long>{5, 50});
    CHECK(default_checkpoints(1) == std::vector<long long>{1});
}

TEST_CASE("the trivial character averages to one exactly") {
    const SkewSystem s = milnes_system(3, golden());
    const TorusPoint x = TorusPoint::floating({0.1, 0.2, 0.3});
    const CharacterVector eta = CharacterVector::of({0, 0, 0});
    for (const BirkhoffReport& r :
         {birkhoff_average(s, x, eta, 1000), birkhoff_average_serial(s, x, eta, 1000)}) {
        CHECK(r.target == std::complex<double>(1.0));
        for (const auto& a : r.averages) {
            CHECK(a.real() == 1.0);
            CHECK(a.imag() == 0.0);
        }
    }
}

TEST_CASE("equidistribution averages match the regression-pinned values") {
    const SkewSystem s = milnes_system(4, golden());
    const TorusPoint zero = TorusPoint::floating({0, 0, 0, 0});
    const CharacterVector eta = CharacterVector::of({0, 0, 0, 1});
    const BirkhoffReport r = birkhoff_average(s, zero, eta, 100000, {10000, 100000});
    REQUIRE(r.averages.size() == 2);
    CHECK(std::abs(r.averages[0]) == doctest::Approx(0.0053443547502916404).epsilon(1e-10));
    CHECK(std::abs(r.averages[1]) == doctest::Approx(0.0017262755937652691).epsilon(1e-10));
    CHECK(r.target == std::complex<double>(0.0));
    for (const auto& a : r.averages) CHECK(std::abs(a) <= 1.0 + 1e-12);
}

TEST_CASE("orbit-walking and closed-form summation agree") {
    const SkewSystem s = milnes_system(3, golden());
    const TorusPoint x = TorusPoint::floating({0.37, 0.11, 0.93});
    const CharacterVector eta = CharacterVector::of({1, -2, 1});
    const BirkhoffReport par = birkhoff_average(s, x, eta, 30000);
    const BirkhoffReport ser = birkhoff_average_serial(s, x, eta, 30000);
    REQUIRE(par.averages.size() == ser.averages.size());
    for (std::size_t i = 0; i < par.averages.size(); ++i)
        CHECK(std::abs(par.averages[i] - ser.averages[i]) < 1e-9);
}

TEST_CASE("rational generator of order three defeats equidistribution") {
    const SkewSystem s =
        build_system(JSequence::hahn(2), {Rational(1), Rational(0)}, 2, 1,
                     std::vector<Rational>{Rational(1, 3)});
    const TorusPoint zero = TorusPoint::floating({0, 0});
    const CharacterVector eta = CharacterVector::of({0, 1});
    const BirkhoffReport r = birkhoff_average(s, zero, eta, 9999, {9999});
    // the phase cycles 0, 0, 1/3, so the average locks onto (2 + e(1/3))/3
    CHECK(std::abs(r.averages[0]) == doctest::Approx(0.5773502691896258).epsilon(1e-9));
    CHECK(std::abs(r.averages[0]) > 0.5);
    const BirkhoffReport ser = birkhoff_average_serial(s, zero, eta, 9999, {9999});
    CHECK(std::abs(r.averages[0] - ser.averages[0]) < 1e-9);
}

TEST_CASE("seeded starts are deterministic in the seed") {
    const SkewSystem s = milnes_system(4, golden());
    const auto a = seeded_starts(s, 7, 1069);
    const auto b = seeded_starts(s, 7, 1069);
    const auto c = seeded_starts(s, 7, 1070);
    REQUIRE(a.size() == 7);
    CHECK(a == b);
    CHECK(a != c);
    for (const auto& p : a) CHECK(p.v.size() == 4);
}

TEST_CASE("uniformity spread over seeded starts stays under the pinned bound") {
    const SkewSystem s = milnes_system(4, golden());
    const CharacterVector eta = CharacterVector::of({0, 0, 0, 1});
    const auto starts = seeded_starts(s, 100, 1069);
    const UniformityReport r = oxtoby_uniformity(s, eta, starts, 100000);
    CHECK(r.spread == doctest::Approx(0.011275722397742978).epsilon(1e-9));
    CHECK(r.averages.size() == 100);
    for (const auto& a : r.averages) CHECK(std::abs(a) <= 1.0 + 1e-12);

    const UniformityReport ser = oxtoby_uniformity_serial(s, eta, starts, 100000);
    CHECK(std::abs(r.spread - ser.spread) < 1e-9);
}

TEST_CASE("uniformity depth three stays under the same bound") {
    const SkewSystem s = milnes_system(3, golden());
    const CharacterVector eta = CharacterVector::of({0, 0, 1});
    const auto starts = seeded_starts(s, 100, 1069);
    const UniformityReport r = oxtoby_uniformity(s, eta, starts, 100000);
    CHECK(r.spread < 0.02);
    CHECK(r.spread > 0.0);
}

TEST_CASE("degenerate uniformity grids have zero spread") {
    const SkewSystem s = milnes_system(2, golden());
    const auto starts = seeded_starts(s, 1, 5);
    CHECK(oxtoby_uniformity(s, CharacterVector::of({0, 1}), starts, 1000).spread == 0.0);
    const auto many = seeded_starts(s, 5, 5);
    CHECK(oxtoby_uniformity(s, CharacterVector::of({0, 0}), many, 1000).spread == 0.0);
}

TEST_CASE("cubic irrational phase sums decay through the pinned checkpoints") {
    const Poly p = Poly::monomial(3, rational_of_double(frac(std::sqrt(2.0))));
    const WeylReport r = weyl_sum(p, {10000, 100000, 1000000});
    REQUIRE(r.ratios.size() == 3);
    CHECK(r.ratios[0] > r.ratios[1]);
    CHECK(r.ratios[1] > r.ratios[2]);
    CHECK(r.ratios[2] == doctest::Approx(0.0016091167364142742).epsilon(1e-9));

    const WeylReport ser = weyl_sum_serial(p, {10000, 100000, 1000000});
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(r.ratios[i] - ser.ratios[i]) < 1e-9);
}

TEST_CASE("alternating phase cancels in pairs") {
    const WeylReport r = weyl_sum(Poly(std::vector<Rational>{Rational(0), Rational(1, 2)}), {1000});
    // inclusive sum over n = 0..1000 leaves a single surviving term
    CHECK(r.ratios[0] == doctest::Approx(0.001).epsilon(1e-9));
}

TEST_CASE("linear phases obey the closed geometric bound") {
    const double lam = golden();
    const Poly p(std::vector<Rational>{Rational(0), rational_of_double(lam)});
    const double bound = 1.0 / std::abs(std::sin(std::numbers::pi * lam));
    const WeylReport r = weyl_sum(p, {100, 1000, 10000});
    for (std::size_t i = 0; i < r.checkpoints.size(); ++i)
        CHECK(std::abs(r.sums[i]) <= bound + 1e-9);
}

TEST_CASE("distality: a last-coordinate offset is carried rigidly") {
    const SkewSystem s = milnes_system(2, golden());
    const TorusPoint x = TorusPoint::floating({0.0, 0.0});
    const TorusPoint y = TorusPoint::floating({0.0, 0.5});
    const DistalityReport r = distality_probe(s, x, y, 4096);
    CHECK(r.min_distance == 0.5);
    CHECK(r.argmin == 0);
    CHECK(r.first_diff == 1);
    CHECK(r.gap == (UINT64_C(1) << 63));
    CHECK(r.gap_constant);
}

TEST_CASE("distality: an interior offset shows through the max metric") {
    const SkewSystem s = milnes_system(3, golden());
    const TorusPoint x = TorusPoint::exact({Rational(1, 3), Rational(1, 4), Rational(0)});
    const TorusPoint y = TorusPoint::exact({Rational(1, 3), Rational(3, 4), Rational(1, 5)});
    const DistalityReport r = distality_probe(s, x, y, 2048);
    CHECK(r.first_diff == 1);
    CHECK(r.gap == (UINT64_C(1) << 63));
    CHECK(r.gap_constant);
    CHECK(r.min_distance >= 0.5 - 1e-12);
}

TEST_CASE("distality: random pairs keep positive distance with a located argmin") {
    const SkewSystem s = milnes_system(4, golden());
    std::uint64_t state = 604;
    Fx64Point x, y;
    for (int i = 0; i < 4; ++i) x.v.push_back(splitmix64_next(state));
    for (int i = 0; i < 4; ++i) y.v.push_back(splitmix64_next(state));
    const DistalityReport r = distality_probe(s, x, y, 10000);
    CHECK(r.min_distance > 0.0);
    CHECK(r.argmin >= 0);
    CHECK(r.argmin < 10000);
    CHECK(r.gap_constant);
}

TEST_CASE("distality rejects coinciding points") {
    const SkewSystem s = milnes_system(2, golden());
    const TorusPoint x = TorusPoint::floating({0.25, 0.75});
    CHECK_THROWS_AS(distality_probe(s, x, x, 100), ValidationError);
}

TEST_CASE("no nontrivial character in the box is fixed by any small power") {
    const SkewSystem s2 = milnes_system(2, golden());
    const ScanReport r2 = ergodicity_scan(s2, 5, 6);
    CHECK(r2.characters_checked == 120);
    CHECK(r2.hits.empty());

    const SkewSystem s3 = milnes_system(3, golden());
    const ScanReport r3 = ergodicity_scan(s3, 5, 6);
    CHECK(r3.characters_checked == 1330);
    CHECK(r3.hits.empty());
}

TEST_CASE("an identity dual action lights up the whole box") {
    const SkewSystem s = milnes_system(2, golden());
    const DualMap identity = [](const CharacterVector& eta, const Int&) {
        return DualPower{eta, {}};
    };
    const ScanReport r = ergodicity_scan(s, 1, 3, identity);
    CHECK(r.characters_checked == 8);
    CHECK(r.hits.size() == 8);
    for (const auto& h : r.hits) CHECK(h.n == 1);
}

TEST_CASE("the scan rejects towers without a dual action") {
    CHECK_THROWS_AS(ergodicity_scan(hahn_system(3, golden()), 2, 2), ValidationError);
    CHECK_THROWS_AS(ergodicity_scan(milnes_system(2, golden()), 0, 3), ValidationError);
    CHECK_THROWS_AS(ergodicity_scan(milnes_system(2, golden()), 4000, 3), ValidationError);
}
