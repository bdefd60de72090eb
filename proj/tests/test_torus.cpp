#include "skewflow/torus.hpp"

#include "doctest.h"

#include <cmath>
#include <complex>

using namespace skewflow;

namespace {

Rational next_rat(std::uint64_t& state) {
    const std::uint64_t num = splitmix64_next(state) % 19;
    const std::uint64_t den = 1 + splitmix64_next(state) % 9;
    return mod1(Rational(Int(num), Int(den)));
}

TorusPoint random_exact(std::uint64_t& state, std::size_t d) {
    std::vector<Rational> c;
    for (std::size_t i = 0; i < d; ++i) c.push_back(next_rat(state));
    return TorusPoint::exact(c);
}

}  // namespace

TEST_CASE("scalars reduce to [0,1) on construction") {
    CHECK(Scalar::exact(Rational(-1, 3)).rat() == Rational(2, 3));
    CHECK(Scalar::exact(Rational(7, 3)).rat() == Rational(1, 3));
    CHECK(Scalar::floating(1.25).fp() == 0.25);
    CHECK(Scalar::floating(-0.25).fp() == 0.75);
    CHECK(Scalar::exact(Rational(1, 2)).as_double() == 0.5);
    CHECK_THROWS_AS(Scalar::exact(Rational(1, 3)).fp(), ValidationError);
    CHECK_THROWS_AS(Scalar::floating(0.5).rat(), ValidationError);
}

TEST_CASE("torus_add is a group law with torus_scale inverses") {
    const auto a = TorusPoint::exact({Rational(1, 2)});
    const auto b = TorusPoint::exact({Rational(2, 3)});
    CHECK(torus_add(a, b) == TorusPoint::exact({Rational(1, 6)}));
    CHECK(torus_scale(Int(-1), TorusPoint::exact({Rational(1, 3)})) ==
          TorusPoint::exact({Rational(2, 3)}));

    std::uint64_t state = 7;
    for (int trial = 0; trial < 20; ++trial) {
        const auto x = random_exact(state, 3);
        const auto y = random_exact(state, 3);
        const auto z = random_exact(state, 3);
        CHECK(torus_add(x, y) == torus_add(y, x));
        CHECK(torus_add(torus_add(x, y), z) == torus_add(x, torus_add(y, z)));
        const auto zero = TorusPoint::exact({Rational(0), Rational(0), Rational(0)});
        CHECK(torus_add(x, zero) == x);
        CHECK(torus_add(x, torus_scale(Int(-1), x)) == zero);
    }
}

TEST_CASE("torus_scale is additive in the multiplier") {
    std::uint64_t state = 11;
    for (int trial = 0; trial < 20; ++trial) {
        const auto x = random_exact(state, 2);
        const Int m = Int(splitmix64_next(state) % 21) - 10;
        const Int n = Int(splitmix64_next(state) % 21) - 10;
        CHECK(torus_scale(m + n, x) == torus_add(torus_scale(m, x), torus_scale(n, x)));
    }
}

TEST_CASE("torus_distance is the max of circle distances") {
    const auto x = TorusPoint::exact({Rational(1, 3), Rational(1, 5)});
    CHECK(torus_distance(x, x) == 0.0);
    CHECK(torus_distance(TorusPoint::exact({Rational(0)}),
                         TorusPoint::exact({Rational(1, 2)})) == 0.5);
    // wrap-around: the short way between 0.1 and 0.9 is 0.2
    const auto a = TorusPoint::floating({0.1, 0.9});
    const auto b = TorusPoint::floating({0.2, 0.1});
    CHECK(torus_distance(a, b) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(torus_distance(a, b) == torus_distance(b, a));
    CHECK_THROWS_AS(torus_distance(x, TorusPoint::exact({Rational(1, 3)})), ValidationError);
}

TEST_CASE("exact-mode distance is zero only for equal points") {
    const auto x = TorusPoint::exact({Rational(1, 3)});
    const auto close = TorusPoint::exact({Rational(333333333, 1000000000)});
    CHECK(torus_distance(x, close) > 0.0);

    std::uint64_t state = 23;
    for (int trial = 0; trial < 30; ++trial) {
        const auto p = random_exact(state, 2);
        const auto q = random_exact(state, 2);
        CHECK((torus_distance(p, q) == 0.0) == (p == q));
    }
}

TEST_CASE("torus_distance satisfies the triangle inequality") {
    std::uint64_t state = 31;
    for (int trial = 0; trial < 50; ++trial) {
        const auto x = random_exact(state, 3);
        const auto y = random_exact(state, 3);
        const auto z = random_exact(state, 3);
        CHECK(torus_distance(x, z) <= torus_distance(x, y) + torus_distance(y, z) + 1e-12);
    }
}

TEST_CASE("char_eval matches hand-computed phases") {
    const auto one = char_eval(CharacterVector::of({0, 0}),
                               TorusPoint::floating({0.37, 0.91}));
    CHECK(one.real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(one.imag() == doctest::Approx(0.0).epsilon(1e-15));

    const auto minus = char_eval(CharacterVector::of({1}), TorusPoint::exact({Rational(1, 2)}));
    CHECK(minus.real() == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(std::abs(minus.imag()) < 1e-15);

    // 2*(1/4) + 1*(1/2) = 1, a full turn
    const auto full = char_eval(CharacterVector::of({2, 1}),
                                TorusPoint::exact({Rational(1, 4), Rational(1, 2)}));
    CHECK(full.real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(full.imag()) < 1e-15);

    CHECK_THROWS_AS(char_eval(CharacterVector::of({1}), TorusPoint::floating({0.1, 0.2})),
                    ValidationError);
}

TEST_CASE("char_eval has unit modulus and is multiplicative") {
    std::uint64_t state = 41;
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<long long> e(3);
        std::vector<double> xc(3), yc(3);
        for (int i = 0; i < 3; ++i) {
            e[i] = static_cast<long long>(splitmix64_next(state) % 9) - 4;
            xc[i] = static_cast<double>(splitmix64_next(state) >> 11) * 0x1p-53;
            yc[i] = static_cast<double>(splitmix64_next(state) >> 11) * 0x1p-53;
        }
        const auto eta = CharacterVector::of(e);
        const auto x = TorusPoint::floating(xc);
        const auto y = TorusPoint::floating(yc);
        CHECK(std::abs(std::abs(char_eval(eta, x)) - 1.0) < 1e-12);
        const auto lhs = char_eval(eta, torus_add(x, y));
        const auto rhs = char_eval(eta, x) * char_eval(eta, y);
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("haar_character_integral is the trivial-character indicator") {
    CHECK(haar_character_integral(CharacterVector::of({0, 0, 0})) == std::complex<double>(1.0));
    CHECK(haar_character_integral(CharacterVector::of({1, 0, 0})) == std::complex<double>(0.0));
    CHECK(haar_character_integral(CharacterVector::of({3, -2})) == std::complex<double>(0.0));
    CHECK(CharacterVector::of({0, 0}).trivial());
    CHECK_FALSE(CharacterVector::of({0, -1}).trivial());
}
