#pragma once

#include "skewflow/dynamics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace skewflow {

// Endomorphism symbol of the base group: either the integer action x -> c x,
// or an opaque placeholder for a limit endomorphism that only supports
// equality by tag.
struct EndoSymbol {
    Int c = 0;
    std::optional<std::string> formal;

    static EndoSymbol scalar(Int v) { return {std::move(v), std::nullopt}; }
    static EndoSymbol formal_limit(std::string tag) { return {0, std::move(tag)}; }

    bool is_scalar() const { return !formal.has_value(); }
    bool operator==(const EndoSymbol&) const = default;
};

// Group element written against the generator: c * gamma0 + r with r an
// exact point of the base torus.
struct GroupSymbol {
    Int c = 0;
    std::vector<Rational> r;  // length m, each in [0,1)

    bool operator==(const GroupSymbol&) const = default;
};

// The tuple data every compactified power carries, interpreted against a
// fixed tower: the coefficient table and polynomial family pin down the
// product law.
struct EllisContext {
    SystemKind kind = SystemKind::general;
    int k = 0;
    int m = 1;
    JTable jtab;
    QFamily family;

    bool operator==(const EllisContext&) const = default;
};

EllisContext ellis_context(const SkewSystem& s);

// (theta_1, ..., theta_{k-1}, u).  A nonempty opaque tag marks the formal
// product of elements involving limit endomorphisms; such an element carries
// no usable tuple data and supports equality only.
struct EllisElement {
    EllisContext ctx;
    std::vector<EndoSymbol> thetas;  // length k-1
    GroupSymbol u;
    std::string opaque;

    bool is_opaque() const { return !opaque.empty(); }
};

bool operator==(const EllisElement& a, const EllisElement& b);

// Compact printable form, also used as the tag of formal products.
std::string ellis_str(const EllisElement& e);

// The tuple of T^n: theta_j is the scalar Q_j(n) and u = Q_k(n) gamma0.
// Every scalar is checked to be an integer; the coefficient identities make
// that automatic for a validated system.
EllisElement embed_power(const SkewSystem& s, const Int& n);
EllisElement embed_power(const EllisContext& ctx, const Int& n);

// The semigroup product:
//   phi_i = sum_{j=0}^{i} J(i,j) theta'_{i-j} theta_j          (theta_0 = id)
//   z     = u' + sum_{j=1}^{k-1} J(k,j) theta'_{k-j}(theta_j(gamma0)) + u.
// A factor containing a formal endomorphism yields an opaque product;
// multiplying an opaque product further is an error.
EllisElement multiply(const EllisElement& lhs, const EllisElement& rhs);

// Membership in the set of elements acting continuously: all thetas must be
// integer scalars following the pattern (Q_1(n), ..., Q_{k-1}(n)) of a single
// integer n, with u unconstrained.  The witness n is solved from the first
// index whose polynomial is nonzero; if every pattern polynomial vanishes the
// pattern is the all-zero tuple and any n fits (no witness reported).
struct CentreReport {
    bool member = false;
    std::optional<Int> witness;
};

CentreReport centre_membership(const EllisElement& e);

// Product of two embedded powers lands back on the embedded sum with the
// matching witness: the centre contains all powers and is closed on them.
bool centre_closure_check(const SkewSystem& s, const Int& a, const Int& b);

}  // namespace skewflow
