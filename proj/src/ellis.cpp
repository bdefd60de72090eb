#include "skewflow/ellis.hpp"

namespace skewflow {

namespace {

Int require_int(const Rational& q, const std::string& what) {
    if (!is_integer(q)) {
        throw ValidationError(what + " is not an integer: " + rational_string(q));
    }
    return numerator(q);
}

void check_shape(const EllisElement& e) {
    if (e.is_opaque()) return;
    if (static_cast<int>(e.thetas.size()) != e.ctx.k - 1) {
        throw ValidationError("element carries " + std::to_string(e.thetas.size()) +
                              " endomorphism slots, tower depth " + std::to_string(e.ctx.k) +
                              " needs " + std::to_string(e.ctx.k - 1));
    }
    if (static_cast<int>(e.u.r.size()) != e.ctx.m) {
        throw ValidationError("free part has " + std::to_string(e.u.r.size()) +
                              " coordinates, base dimension is " + std::to_string(e.ctx.m));
    }
}

bool any_formal(const EllisElement& e) {
    for (const auto& t : e.thetas) {
        if (!t.is_scalar()) return true;
    }
    return false;
}

// theta_0 is always the identity.
Int theta_c(const EllisElement& e, int j) { return j == 0 ? Int(1) : e.thetas[j - 1].c; }

}  // namespace

EllisContext ellis_context(const SkewSystem& s) { return {s.kind, s.k, s.m, s.jtab, s.family}; }

bool operator==(const EllisElement& a, const EllisElement& b) {
    if (a.is_opaque() != b.is_opaque()) return false;
    if (a.is_opaque()) return a.ctx == b.ctx && a.opaque == b.opaque;
    return a.ctx == b.ctx && a.thetas == b.thetas && a.u == b.u;
}

std::string ellis_str(const EllisElement& e) {
    if (e.is_opaque()) return e.opaque;
    std::string out = "(";
    for (const auto& t : e.thetas) {
        out += t.is_scalar() ? t.c.str() : "{" + *t.formal + "}";
        out += ", ";
    }
    out += e.u.c.str() + "g";
    bool any = false;
    for (const auto& r : e.u.r) {
        if (r != 0) any = true;
    }
    if (any) {
        out += " + [";
        for (std::size_t b = 0; b < e.u.r.size(); ++b) {
            if (b) out += ", ";
            out += rational_string(e.u.r[b]);
        }
        out += "]";
    }
    out += ")";
    return out;
}

EllisElement embed_power(const EllisContext& ctx, const Int& n) {
    if (ctx.k < 1) throw ValidationError("tower depth must be at least 1");
    EllisElement e;
    e.ctx = ctx;
    e.thetas.reserve(ctx.k - 1);
    for (int j = 1; j < ctx.k; ++j) {
        e.thetas.push_back(EndoSymbol::scalar(require_int(
            ctx.family.at(j).eval_int(n), "Q" + std::to_string(j) + "(" + n.str() + ")")));
    }
    e.u.c = require_int(ctx.family.at(ctx.k).eval_int(n),
                        "Q" + std::to_string(ctx.k) + "(" + n.str() + ")");
    e.u.r.assign(ctx.m, Rational(0));
    return e;
}

EllisElement embed_power(const SkewSystem& s, const Int& n) {
    return embed_power(ellis_context(s), n);
}

EllisElement multiply(const EllisElement& lhs, const EllisElement& rhs) {
    if (lhs.is_opaque() || rhs.is_opaque()) {
        throw ValidationError("a formal product carries no tuple data and cannot be multiplied");
    }
    if (!(lhs.ctx == rhs.ctx)) throw ValidationError("elements belong to different towers");
    check_shape(lhs);
    check_shape(rhs);
    const int k = lhs.ctx.k;
    if (any_formal(lhs) || any_formal(rhs)) {
        EllisElement e;
        e.ctx = lhs.ctx;
        e.opaque = ellis_str(lhs) + " * " + ellis_str(rhs);
        return e;
    }
    EllisElement e;
    e.ctx = lhs.ctx;
    e.thetas.reserve(k - 1);
    for (int i = 1; i < k; ++i) {
        Rational phi = 0;
        for (int j = 0; j <= i; ++j) {
            phi += lhs.ctx.jtab.at(i, j) * Rational(theta_c(lhs, i - j)) * Rational(theta_c(rhs, j));
        }
        e.thetas.push_back(
            EndoSymbol::scalar(require_int(phi, "composed slot " + std::to_string(i))));
    }
    Rational z = Rational(lhs.u.c) + Rational(rhs.u.c);
    for (int j = 1; j < k; ++j) {
        z += lhs.ctx.jtab.at(k, j) * Rational(theta_c(lhs, k - j)) * Rational(theta_c(rhs, j));
    }
    e.u.c = require_int(z, "generator coefficient");
    e.u.r.reserve(lhs.ctx.m);
    for (int b = 0; b < lhs.ctx.m; ++b) e.u.r.push_back(mod1(lhs.u.r[b] + rhs.u.r[b]));
    return e;
}

CentreReport centre_membership(const EllisElement& e) {
    if (e.is_opaque()) return {false, std::nullopt};
    check_shape(e);
    if (any_formal(e)) return {false, std::nullopt};
    const int k = e.ctx.k;
    if (k == 1) return {true, std::nullopt};

    int j0 = 0;
    for (int j = 1; j < k; ++j) {
        if (e.ctx.family.profile_at(j) != 0) {
            j0 = j;
            break;
        }
    }
    if (j0 == 0) {
        // Every pattern polynomial vanishes identically, so the pattern is the
        // zero tuple at every n: membership without a distinguished witness.
        for (const auto& t : e.thetas) {
            if (t.c != 0) return {false, std::nullopt};
        }
        return {true, std::nullopt};
    }

    // Pattern values below j0 vanish, which forces Q_{j0}(n) = Q_{j0}(1) n and
    // pins the only candidate witness.
    const Rational cand = Rational(e.thetas[j0 - 1].c) / e.ctx.family.profile_at(j0);
    if (!is_integer(cand)) return {false, std::nullopt};
    const Int n = numerator(cand);
    for (int j = 1; j < k; ++j) {
        if (Rational(e.thetas[j - 1].c) != e.ctx.family.at(j).eval_int(n)) {
            return {false, std::nullopt};
        }
    }
    return {true, n};
}

bool centre_closure_check(const SkewSystem& s, const Int& a, const Int& b) {
    const EllisElement prod = multiply(embed_power(s, a), embed_power(s, b));
    const EllisElement direct = embed_power(s, a + b);
    if (!(prod == direct)) return false;
    const CentreReport rep = centre_membership(prod);
    if (!rep.member) return false;
    if (rep.witness && *rep.witness != a + b) return false;
    return true;
}

}  // namespace skewflow
