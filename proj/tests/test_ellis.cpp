#include "skewflow/ellis.hpp"

#include "doctest.h"

#include <set>
#include <string>

using namespace skewflow;

namespace {

SkewSystem general_13() {
    // J = (1, 3), unit profile: Q_1(n) = n, Q_2(n) = (3n^2 - n)/2
    return build_system(JSequence({Rational(1), Rational(3)}), {Rational(1), Rational(1)}, 2, 1,
                        std::nullopt);
}

EllisElement with_free_part(EllisElement e, const Rational& r) {
    e.u.r[0] = mod1(r);
    return e;
}

}  // namespace

TEST_CASE("power zero embeds as the identity tuple") {
    const SkewSystem s = milnes_system(4, 1, std::nullopt);
    const EllisElement id = embed_power(s, Int(0));
    for (const auto& th : id.thetas) {
        CHECK(th.is_scalar());
        CHECK(th.c == 0);
    }
    CHECK(id.u.c == 0);
    CHECK(id.u.r == std::vector<Rational>{Rational(0)});

    const EllisElement e = with_free_part(embed_power(s, Int(7)), Rational(2, 5));
    CHECK(multiply(id, e) == e);
    CHECK(multiply(e, id) == e);
}

TEST_CASE("embedded powers carry the family values") {
    const EllisElement em = embed_power(milnes_system(3, 1, std::nullopt), Int(2));
    REQUIRE(em.thetas.size() == 2);
    CHECK(em.thetas[0].c == 2);
    CHECK(em.thetas[1].c == 4);
    CHECK(em.u.c == 8);

    const EllisElement eh = embed_power(hahn_system(3, 1, std::nullopt), Int(4));
    CHECK(eh.thetas[0].c == 4);
    CHECK(eh.thetas[1].c == 6);
    CHECK(eh.u.c == 4);
}

TEST_CASE("generator coefficient of a product expands binomially") {
    const SkewSystem s = milnes_system(3, 1, std::nullopt);
    const EllisElement one = embed_power(s, Int(1));
    const EllisElement two = multiply(one, one);
    CHECK(two.u.c == 8);  // 1 + 3 + 3 + 1
    CHECK(two == embed_power(s, Int(2)));
}

TEST_CASE("products of embedded powers land on the embedded sum") {
    for (int k = 2; k <= 6; ++k) {
        for (const SkewSystem& s :
             {milnes_system(k, 1, std::nullopt), hahn_system(k, 1, std::nullopt)}) {
            for (long long a = -12; a <= 12; a += 3) {
                for (long long b = -11; b <= 12; b += 5) {
                    CHECK(multiply(embed_power(s, Int(a)), embed_power(s, Int(b))) ==
                          embed_power(s, Int(a + b)));
                }
            }
        }
    }
}

TEST_CASE("a general multiplier tower keeps the product law") {
    const SkewSystem s = general_13();
    for (long long n = -8; n <= 8; ++n) {
        const EllisElement e = embed_power(s, Int(n));
        CHECK(e.thetas[0].c == n);
        CHECK(e.u.c == (3 * n * n - n) / 2);
    }
    for (long long a = -10; a <= 10; ++a)
        for (long long b = -10; b <= 10; ++b)
            CHECK(multiply(embed_power(s, Int(a)), embed_power(s, Int(b))) ==
                  embed_power(s, Int(a + b)));
}

TEST_CASE("free parts add modulo one and do not disturb the pattern") {
    const SkewSystem s = milnes_system(3, 1, std::nullopt);
    const EllisElement a = with_free_part(embed_power(s, Int(2)), Rational(3, 4));
    const EllisElement b = with_free_part(embed_power(s, Int(5)), Rational(1, 2));
    const EllisElement ab = multiply(a, b);
    CHECK(ab.u.r == std::vector<Rational>{Rational(1, 4)});
    CHECK(ab.thetas == embed_power(s, Int(7)).thetas);
    CHECK(ab.u.c == embed_power(s, Int(7)).u.c);
}

TEST_CASE("multiplication is associative on centre elements") {
    const SkewSystem sm = milnes_system(4, 1, std::nullopt);
    const SkewSystem sh = hahn_system(5, 1, std::nullopt);
    for (const SkewSystem& s : {sm, sh}) {
        const EllisElement x = with_free_part(embed_power(s, Int(3)), Rational(1, 3));
        const EllisElement y = with_free_part(embed_power(s, Int(-5)), Rational(5, 7));
        const EllisElement z = with_free_part(embed_power(s, Int(11)), Rational(1, 2));
        CHECK(multiply(multiply(x, y), z) == multiply(x, multiply(y, z)));
    }
}

TEST_CASE("the embedding is injective across a wide power range") {
    for (const SkewSystem& s :
         {milnes_system(3, 1, std::nullopt), hahn_system(3, 1, std::nullopt)}) {
        std::set<std::string> seen;
        for (long long n = -50; n <= 50; ++n) seen.insert(ellis_str(embed_power(s, Int(n))));
        CHECK(seen.size() == 101);
    }
}

TEST_CASE("centre membership recovers the witness from the pattern") {
    const SkewSystem s = milnes_system(4, 1, std::nullopt);
    EllisElement e = embed_power(s, Int(3));
    e.u.c = 5;  // the free slot is unconstrained
    e.u.r[0] = Rational(1, 3);
    const CentreReport r = centre_membership(e);
    CHECK(r.member);
    REQUIRE(r.witness.has_value());
    CHECK(*r.witness == 3);

    for (const SkewSystem& sys :
         {milnes_system(2, 1, std::nullopt), milnes_system(5, 1, std::nullopt),
          hahn_system(4, 1, std::nullopt)}) {
        for (long long n = -50; n <= 50; ++n) {
            const CentreReport rep = centre_membership(embed_power(sys, Int(n)));
            CHECK(rep.member);
            REQUIRE(rep.witness.has_value());
            CHECK(*rep.witness == n);
        }
    }
}

TEST_CASE("off-pattern scalars are rejected") {
    const SkewSystem s = milnes_system(3, 1, std::nullopt);
    EllisElement e = embed_power(s, Int(2));
    e.thetas[1].c = 3;  // (2, 3) cannot be (n, n^2)
    const CentreReport r = centre_membership(e);
    CHECK_FALSE(r.member);
    CHECK_FALSE(r.witness.has_value());
}

TEST_CASE("formal endomorphisms are never central") {
    const SkewSystem s = milnes_system(3, 1, std::nullopt);
    EllisElement e = embed_power(s, Int(2));
    e.thetas[0] = EndoSymbol::formal_limit("q");
    CHECK_FALSE(centre_membership(e).member);
}

TEST_CASE("depth one has an empty pattern and full membership") {
    const SkewSystem s = milnes_system(1, 1, std::nullopt);
    const EllisElement e = embed_power(s, Int(9));
    CHECK(e.thetas.empty());
    const CentreReport r = centre_membership(e);
    CHECK(r.member);
    CHECK_FALSE(r.witness.has_value());
}

TEST_CASE("an identically-zero pattern admits exactly the zero tuple") {
    // zero profile: every Q_i vanishes identically for i <= k-1
    const SkewSystem s = build_system(JSequence::milnes(2), {Rational(0), Rational(2)}, 2, 1,
                                      std::nullopt);
    EllisElement zero = embed_power(s, Int(6));
    CHECK(zero.thetas[0].c == 0);
    const CentreReport r = centre_membership(zero);
    CHECK(r.member);
    CHECK_FALSE(r.witness.has_value());

    EllisElement off = zero;
    off.thetas[0].c = 1;
    CHECK_FALSE(centre_membership(off).member);
}

TEST_CASE("closure of the centre on products of powers") {
    CHECK(centre_closure_check(milnes_system(5, 1, std::nullopt), Int(7), Int(-3)));
    CHECK(centre_closure_check(hahn_system(4, 1, std::nullopt), Int(12), Int(13)));
    CHECK(centre_closure_check(milnes_system(2, 1, std::nullopt), Int(0), Int(0)));
    CHECK(centre_closure_check(general_13(), Int(9), Int(-4)));

    // witness bookkeeping behind the check
    const SkewSystem s = milnes_system(5, 1, std::nullopt);
    const EllisElement prod = multiply(embed_power(s, Int(7)), embed_power(s, Int(-3)));
    const CentreReport r = centre_membership(prod);
    CHECK(r.member);
    CHECK(*r.witness == 4);

    const SkewSystem h = hahn_system(4, 1, std::nullopt);
    const CentreReport rh =
        centre_membership(multiply(embed_power(h, Int(12)), embed_power(h, Int(13))));
    CHECK(*rh.witness == 25);
}

TEST_CASE("formal factors collapse to an opaque product supporting equality only") {
    const SkewSystem s = milnes_system(3, 1, std::nullopt);
    EllisElement f = embed_power(s, Int(1));
    f.thetas[0] = EndoSymbol::formal_limit("lim_a");
    const EllisElement g = embed_power(s, Int(2));

    const EllisElement fg = multiply(f, g);
    CHECK(fg.is_opaque());
    CHECK(fg.opaque == ellis_str(f) + " * " + ellis_str(g));
    CHECK(fg == multiply(f, g));
    CHECK_FALSE(fg == multiply(g, f));
    CHECK_THROWS_AS(multiply(fg, g), ValidationError);
    CHECK_THROWS_AS(multiply(g, fg), ValidationError);
}

TEST_CASE("elements from different towers do not compose") {
    const EllisElement a = embed_power(milnes_system(3, 1, std::nullopt), Int(1));
    const EllisElement b = embed_power(hahn_system(3, 1, std::nullopt), Int(1));
    CHECK_THROWS_AS(multiply(a, b), ValidationError);
    CHECK_FALSE(a == b);
}

TEST_CASE("the printable form distinguishes parts") {
    const SkewSystem s = milnes_system(3, 1, std::nullopt);
    const std::string plain = ellis_str(embed_power(s, Int(2)));
    CHECK(plain.find("2") != std::string::npos);
    const std::string with_r =
        ellis_str(with_free_part(embed_power(s, Int(2)), Rational(1, 3)));
    CHECK(plain != with_r);

    EllisElement f = embed_power(s, Int(0));
    f.thetas[1] = EndoSymbol::formal_limit("tag");
    CHECK(ellis_str(f).find("tag") != std::string::npos);
}

TEST_CASE("embedding through the context matches the system route") {
    const SkewSystem s = hahn_system(4, 1, std::nullopt);
    const EllisContext ctx = ellis_context(s);
    CHECK(ctx.kind == SystemKind::hahn);
    CHECK(ctx.k == 4);
    for (long long n : {-9LL, 0LL, 23LL}) CHECK(embed_power(ctx, Int(n)) == embed_power(s, Int(n)));
}
