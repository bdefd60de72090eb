#include "skewflow/dynamics.hpp"

namespace skewflow {

const char* kind_name(SystemKind k) {
    switch (k) {
        case SystemKind::hahn: return "hahn";
        case SystemKind::milnes: return "milnes";
        default: return "general";
    }
}

namespace {

Int integer_value(const Rational& q, const char* what) {
    if (!is_integer(q))
        throw std::logic_error(std::string(what) + ": non-integral coefficient " + rational_string(q));
    return numerator(q);
}

SystemKind detect_kind(const JSequence& j, const std::vector<Rational>& profile, int k) {
    bool hahn_j = true, milnes_j = true;
    for (int i = 0; i < k; ++i) {
        if (j.at(i) != 1) hahn_j = false;
        if (j.at(i) != i + 1) milnes_j = false;
    }
    bool hahn_p = true, milnes_p = true;
    for (int i = 1; i <= k; ++i) {
        if (profile[i - 1] != (i == 1 ? 1 : 0)) hahn_p = false;
        if (profile[i - 1] != 1) milnes_p = false;
    }
    // k = 1 matches both presets; prefer the power preset, which keeps the
    // dual transform available.
    if (milnes_j && milnes_p) return SystemKind::milnes;
    if (hahn_j && hahn_p) return SystemKind::hahn;
    return SystemKind::general;
}

}  // namespace

SkewSystem build_system(const JSequence& j, const std::vector<Rational>& profile, int k, int m,
                        std::optional<std::vector<double>> gamma0) {
    if (k < 1) throw ValidationError("build_system: depth k must be >= 1");
    if (m < 1) throw ValidationError("build_system: base dimension m must be >= 1");

    SkewSystem s;
    s.k = k;
    s.m = m;
    s.jseq = j;
    s.jtab = build_j_table(j, k);
    s.family = solve_q_family(s.jtab, profile);

    const auto integ = integrality_check(s.jtab, s.family);
    if (!integ.ok)
        throw ValidationError("build_system: non-integral one-step coefficient " +
                              rational_string(integ.value) + " at (i,j) = (" +
                              std::to_string(integ.i) + "," + std::to_string(integ.j) + ")");

    s.kind = detect_kind(j, profile, k);

    if (gamma0.has_value()) {
        if (static_cast<int>(gamma0->size()) != m)
            throw ValidationError("build_system: gamma0 must have m coordinates");
        for (double g : *gamma0) {
            const double f = frac(g);
            s.gamma0.push_back(f);
            s.gamma0_fx.push_back(fixed64_of_double(f));
        }
    } else {
        s.symbolic_gamma = true;
    }

    s.cpoly.resize(k);
    s.apoly.resize(k);
    s.c1.resize(k);
    s.a1.resize(k);
    s.c1w.resize(k);
    s.a1w.resize(k);
    for (int i = 1; i <= k; ++i) {
        s.cpoly[i - 1] = s.family.at(i).scaled(s.jtab.at(k, i));
        s.c1[i - 1] = integer_value(s.cpoly[i - 1].eval(Rational(1)), "build_system");
        s.c1w[i - 1] = wrap64(s.c1[i - 1]);
        s.apoly[i - 1].resize(i);
        s.a1[i - 1].resize(i);
        s.a1w[i - 1].resize(i);
        for (int jj = 1; jj <= i; ++jj) {
            s.apoly[i - 1][jj - 1] = s.family.at(i - jj).scaled(s.jtab.at(k - jj, i - jj));
            s.a1[i - 1][jj - 1] =
                integer_value(s.apoly[i - 1][jj - 1].eval(Rational(1)), "build_system");
            s.a1w[i - 1][jj - 1] = wrap64(s.a1[i - 1][jj - 1]);
        }
    }
    return s;
}

SkewSystem build_system(const JSequence& j, const std::vector<Rational>& profile, int k, int m,
                        const std::vector<Rational>& gamma0) {
    SkewSystem s = build_system(j, profile, k, m, std::nullopt);
    if (static_cast<int>(gamma0.size()) != m)
        throw ValidationError("build_system: gamma0 must have m coordinates");
    s.symbolic_gamma = false;
    for (const auto& g : gamma0) {
        const std::uint64_t fx = fixed64_of_rational(mod1(g));
        s.gamma0_fx.push_back(fx);
        s.gamma0.push_back(fixed64_to_double(fx));
    }
    return s;
}

SkewSystem milnes_system(int k, int m, std::optional<std::vector<double>> gamma0) {
    std::vector<Rational> profile(k, Rational(1));
    SkewSystem s = build_system(JSequence::milnes(k), profile, k, m, std::move(gamma0));
    s.kind = SystemKind::milnes;
    return s;
}

SkewSystem hahn_system(int k, int m, std::optional<std::vector<double>> gamma0) {
    std::vector<Rational> profile(k, Rational(0));
    if (k >= 1) profile[0] = 1;
    SkewSystem s = build_system(JSequence::hahn(k), profile, k, m, std::move(gamma0));
    s.kind = k == 1 ? SystemKind::milnes : SystemKind::hahn;  // k = 1 is the same rotation
    return s;
}

SkewSystem milnes_system(int k, double gamma0) {
    return milnes_system(k, 1, std::vector<double>{gamma0});
}

SkewSystem hahn_system(int k, double gamma0) {
    return hahn_system(k, 1, std::vector<double>{gamma0});
}

AffineCoeffs power_coeffs(const SkewSystem& s, const Int& n) {
    AffineCoeffs out;
    out.n = n;
    out.c.resize(s.k);
    out.a.resize(s.k);
    const Rational nr(n);
    for (int i = 1; i <= s.k; ++i) {
        out.c[i - 1] = s.cpoly[i - 1].eval(nr);
        out.a[i - 1].resize(i);
        for (int j = 1; j <= i; ++j)
            out.a[i - 1][j - 1] = integer_value(s.apoly[i - 1][j - 1].eval(nr), "power_coeffs");
    }
    return out;
}

// ---- floating path ---------------------------------------------------------

namespace {

void require_numeric(const SkewSystem& s, const char* op) {
    if (s.symbolic_gamma)
        throw ValidationError(std::string(op) + ": floating orbit requires a numeric generator");
}

}  // namespace

Fx64Point to_fixed(const SkewSystem& s, const TorusPoint& x) {
    if (static_cast<int>(x.dim()) != s.dim())
        throw ValidationError("to_fixed: point has wrong dimension");
    Fx64Point p;
    p.v.reserve(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) {
        p.v.push_back(x[i].mode() == Mode::floating ? fixed64_of_double(x[i].fp())
                                                    : fixed64_of_rational(x[i].rat()));
    }
    return p;
}

TorusPoint to_floating(const SkewSystem& s, const Fx64Point& p) {
    if (static_cast<int>(p.v.size()) != s.dim())
        throw ValidationError("to_floating: point has wrong dimension");
    std::vector<double> out;
    out.reserve(p.v.size());
    for (std::uint64_t v : p.v) out.push_back(fixed64_to_double(v));
    return TorusPoint::floating(out);
}

void apply_in_place(const SkewSystem& s, Fx64Point& p) {
    require_numeric(s, "apply");
    // Descending rows use only untouched lower rows, so the update is in place.
    for (int i = s.k; i >= 1; --i) {
        for (int b = 0; b < s.m; ++b) {
            std::uint64_t acc = s.c1w[i - 1] * s.gamma0_fx[b];
            for (int j = 1; j <= i; ++j) acc += s.a1w[i - 1][j - 1] * p.v[(j - 1) * s.m + b];
            p.v[(i - 1) * s.m + b] = acc;
        }
    }
}

void apply_inverse_in_place(const SkewSystem& s, Fx64Point& p) {
    require_numeric(s, "apply_inverse");
    for (int i = 1; i <= s.k; ++i) {
        for (int b = 0; b < s.m; ++b) {
            std::uint64_t acc = p.v[(i - 1) * s.m + b] - s.c1w[i - 1] * s.gamma0_fx[b];
            for (int j = 1; j < i; ++j) acc -= s.a1w[i - 1][j - 1] * p.v[(j - 1) * s.m + b];
            p.v[(i - 1) * s.m + b] = acc;  // a_{i,i}(1) = 1
        }
    }
}

Fx64Point power_apply_fx(const SkewSystem& s, const Int& n, const Fx64Point& x) {
    require_numeric(s, "power_apply");
    if (static_cast<int>(x.v.size()) != s.dim())
        throw ValidationError("power_apply: point has wrong dimension");
    const AffineCoeffs co = power_coeffs(s, n);
    Fx64Point out;
    out.v.resize(x.v.size());
    for (int i = 1; i <= s.k; ++i) {
        const std::uint64_t cw = wrap64(integer_value(co.c[i - 1], "power_apply"));
        std::vector<std::uint64_t> aw(i);
        for (int j = 1; j <= i; ++j) aw[j - 1] = wrap64(co.a[i - 1][j - 1]);
        for (int b = 0; b < s.m; ++b) {
            std::uint64_t acc = cw * s.gamma0_fx[b];
            for (int j = 1; j <= i; ++j) acc += aw[j - 1] * x.v[(j - 1) * s.m + b];
            out.v[(i - 1) * s.m + b] = acc;
        }
    }
    return out;
}

TorusPoint apply(const SkewSystem& s, const TorusPoint& x) {
    Fx64Point p = to_fixed(s, x);
    apply_in_place(s, p);
    return to_floating(s, p);
}

TorusPoint apply_inverse(const SkewSystem& s, const TorusPoint& x) {
    Fx64Point p = to_fixed(s, x);
    apply_inverse_in_place(s, p);
    return to_floating(s, p);
}

TorusPoint power_apply(const SkewSystem& s, const Int& n, const TorusPoint& x) {
    return to_floating(s, power_apply_fx(s, n, to_fixed(s, x)));
}

OrbitCursor::OrbitCursor(const SkewSystem& s, const TorusPoint& start)
    : s_(&s), state_(to_fixed(s, start)) {
    require_numeric(s, "orbit_stream");
}

OrbitCursor::OrbitCursor(const SkewSystem& s, Fx64Point start) : s_(&s), state_(std::move(start)) {
    require_numeric(s, "orbit_stream");
}

void OrbitCursor::advance() {
    apply_in_place(*s_, state_);
    ++n_;
}

TorusPoint OrbitCursor::point() const { return to_floating(*s_, state_); }

std::vector<TorusPoint> orbit_stream(const SkewSystem& s, const TorusPoint& x, long long N) {
    std::vector<TorusPoint> out;
    if (N <= 0) return out;
    out.reserve(N);
    OrbitCursor cur(s, x);
    for (long long i = 0; i < N; ++i) {
        out.push_back(cur.point());
        if (i + 1 < N) cur.advance();
    }
    return out;
}

// ---- symbolic path ----------------------------------------------------------

SymPoint sym_point(const SkewSystem& s, const std::vector<Rational>& coords) {
    if (static_cast<int>(coords.size()) != s.dim())
        throw ValidationError("sym_point: wrong number of coordinates");
    SymPoint p;
    p.reserve(coords.size());
    for (const auto& q : coords) p.push_back({mod1(q), Rational(0)});
    return p;
}

SymPoint apply_sym(const SkewSystem& s, const SymPoint& x) {
    if (static_cast<int>(x.size()) != s.dim())
        throw ValidationError("apply_sym: point has wrong dimension");
    SymPoint y(x.size());
    for (int i = 1; i <= s.k; ++i) {
        for (int b = 0; b < s.m; ++b) {
            Rational fr = 0, ga = Rational(s.c1[i - 1]);
            for (int j = 1; j <= i; ++j) {
                const auto& xc = x[(j - 1) * s.m + b];
                fr += Rational(s.a1[i - 1][j - 1]) * xc.frac;
                ga += Rational(s.a1[i - 1][j - 1]) * xc.gamma;
            }
            y[(i - 1) * s.m + b] = {mod1(fr), ga};
        }
    }
    return y;
}

SymPoint apply_inverse_sym(const SkewSystem& s, const SymPoint& x) {
    if (static_cast<int>(x.size()) != s.dim())
        throw ValidationError("apply_inverse_sym: point has wrong dimension");
    SymPoint y(x.size());
    for (int i = 1; i <= s.k; ++i) {
        for (int b = 0; b < s.m; ++b) {
            const auto& xc = x[(i - 1) * s.m + b];
            Rational fr = xc.frac, ga = xc.gamma - Rational(s.c1[i - 1]);
            for (int j = 1; j < i; ++j) {
                const auto& yc = y[(j - 1) * s.m + b];
                fr -= Rational(s.a1[i - 1][j - 1]) * yc.frac;
                ga -= Rational(s.a1[i - 1][j - 1]) * yc.gamma;
            }
            y[(i - 1) * s.m + b] = {mod1(fr), ga};
        }
    }
    return y;
}

SymPoint power_apply_sym(const SkewSystem& s, const Int& n, const SymPoint& x) {
    if (static_cast<int>(x.size()) != s.dim())
        throw ValidationError("power_apply_sym: point has wrong dimension");
    const AffineCoeffs co = power_coeffs(s, n);
    SymPoint y(x.size());
    for (int i = 1; i <= s.k; ++i) {
        for (int b = 0; b < s.m; ++b) {
            Rational fr = 0, ga = co.c[i - 1];
            for (int j = 1; j <= i; ++j) {
                const auto& xc = x[(j - 1) * s.m + b];
                fr += Rational(co.a[i - 1][j - 1]) * xc.frac;
                ga += Rational(co.a[i - 1][j - 1]) * xc.gamma;
            }
            y[(i - 1) * s.m + b] = {mod1(fr), ga};
        }
    }
    return y;
}

// ---- dual action ------------------------------------------------------------

DualPower dual_power(const SkewSystem& s, const CharacterVector& eta, const Int& n) {
    if (s.kind != SystemKind::milnes)
        throw ValidationError("dual_power: transform is available for the power preset only");
    if (static_cast<int>(eta.dim()) != s.dim())
        throw ValidationError("dual_power: character has wrong dimension");

    DualPower out;
    out.exponents.exps.resize(eta.dim());
    out.phase.resize(s.m);
    for (int b = 0; b < s.m; ++b) {
        Poly ph;
        for (int i = 1; i <= s.k; ++i) {
            const Int& ei = eta.exps[(i - 1) * s.m + b];
            if (ei == 0) continue;
            ph = ph + Poly::monomial(i, Rational(binomial_int(Int(s.k), i) * ei));
        }
        out.phase[b] = ph;
        for (int j = 1; j <= s.k; ++j) {
            Int z = 0;
            Int npow = 1;
            for (int i = j; i <= s.k; ++i) {
                z += binomial_int(Int(s.k - j), i - j) * npow * eta.exps[(i - 1) * s.m + b];
                npow *= n;
            }
            out.exponents.exps[(j - 1) * s.m + b] = z;
        }
    }
    return out;
}

}  // namespace skewflow
