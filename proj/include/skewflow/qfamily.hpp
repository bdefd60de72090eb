#pragma once

#include "skewflow/polynomial.hpp"

#include <vector>

namespace skewflow {

// Multiplier sequence J_0, J_1, ... with J_0 = 1 and no zero entry.
struct JSequence {
    std::vector<Rational> values;

    JSequence() = default;
    explicit JSequence(std::vector<Rational> v) : values(std::move(v)) {}

    static JSequence hahn(int k);    // all ones
    static JSequence milnes(int k);  // J_i = i + 1

    const Rational& at(int i) const;
    int size() const { return static_cast<int>(values.size()); }
};

// Lower-triangular table of the derived coefficients
//   J(i,0) = 1,  J(i,1) = J_{i-1},  J(i,l) = J_{i-1}...J_{i-l} / (J_1...J_{l-1}),
// which forces J(i,i) = 1.
class JTable {
public:
    JTable() = default;
    JTable(int k, std::vector<Rational> flat);

    int k() const { return k_; }
    const Rational& at(int i, int l) const;

    bool operator==(const JTable&) const = default;

private:
    int k_ = 0;
    std::vector<Rational> t_;  // row-major lower triangle, row i has i+1 entries
};

JTable build_j_table(const JSequence& j, int k);

// Polynomials Q_0 = 1, Q_1, ..., Q_k with Q_i(0) = 0 for i >= 1, together with
// the declared one-step profile values Q_1(1), ..., Q_k(1).
struct QFamily {
    std::vector<Poly> q;            // q[0..k]
    std::vector<Rational> profile;  // profile[i-1] = Q_i(1)

    int k() const { return static_cast<int>(q.size()) - 1; }
    const Poly& at(int i) const;
    // Declared value of Q_i(1); Q_0(1) = 1 by convention.
    Rational profile_at(int i) const;

    bool operator==(const QFamily&) const = default;
};

// Solve the family recursion as a first-order difference equation in n:
//   Q_i(n) - Q_i(n-1) = Q_i(1) + sum_{j=1}^{i-1} J(i,j) Q_{i-j}(1) Q_j(n-1),
// summed with Q_i(0) = 0.  deg Q_i <= i.
QFamily solve_q_family(const JTable& table, const std::vector<Rational>& profile);
QFamily solve_q_family(const JSequence& j, const std::vector<Rational>& profile, int k);

struct RecursionFailure {
    int i = 0, l = 0;
    Poly lhs, rhs;  // both sides as polynomials in n
};

struct QVerifyReport {
    int pairs_checked = 0;
    std::vector<RecursionFailure> failures;
    bool ok() const { return failures.empty(); }
};

// Symbolically expand, for every 0 <= l <= i <= k,
//   sum_{j=l}^{i} J(i-l, j-l) Q_{i-j}(1) Q_{j-l}(n-1)  ==  Q_{i-l}(n),
// taking the Q(1) factors from the declared profile and the n-dependent
// factors from the stored polynomials.
QVerifyReport verify_q_family(const JTable& table, const QFamily& family);

struct IntegralityReport {
    bool ok = true;
    int i = -1, j = -1;  // witness slot when !ok
    Rational value;
};

// One-step coefficient integrality: J(k-j, i-j) Q_{i-j}(1) in Z for 0 <= j <= i <= k.
IntegralityReport integrality_check(const JTable& table, const QFamily& family);

}  // namespace skewflow
