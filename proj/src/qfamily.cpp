#include "skewflow/qfamily.hpp"

namespace skewflow {

JSequence JSequence::hahn(int k) {
    std::vector<Rational> v(std::max(k, 1), Rational(1));
    return JSequence(std::move(v));
}

JSequence JSequence::milnes(int k) {
    std::vector<Rational> v;
    for (int i = 0; i < std::max(k, 1); ++i) v.emplace_back(i + 1);
    return JSequence(std::move(v));
}

const Rational& JSequence::at(int i) const {
    if (i < 0 || i >= size()) throw ValidationError("JSequence: index out of range");
    return values[i];
}

JTable::JTable(int k, std::vector<Rational> flat) : k_(k), t_(std::move(flat)) {
    if (static_cast<int>(t_.size()) != (k + 1) * (k + 2) / 2)
        throw ValidationError("JTable: wrong triangle size");
}

const Rational& JTable::at(int i, int l) const {
    if (i < 0 || i > k_ || l < 0 || l > i) throw ValidationError("JTable: index out of range");
    return t_[i * (i + 1) / 2 + l];
}

JTable build_j_table(const JSequence& j, int k) {
    if (k < 1) throw ValidationError("build_j_table: depth must be >= 1");
    if (j.size() < k) throw ValidationError("build_j_table: sequence shorter than depth");
    if (j.at(0) != 1) throw ValidationError("build_j_table: J_0 must be 1");
    for (int i = 0; i < j.size(); ++i)
        if (j.at(i) == 0) throw ValidationError("build_j_table: zero entry J_" + std::to_string(i));

    std::vector<Rational> flat;
    flat.reserve((k + 1) * (k + 2) / 2);
    for (int i = 0; i <= k; ++i) {
        for (int l = 0; l <= i; ++l) {
            if (l == 0) {
                flat.emplace_back(1);
                continue;
            }
            Rational num = 1, den = 1;
            for (int t = 1; t <= l; ++t) num *= j.at(i - t);
            for (int t = 1; t <= l - 1; ++t) den *= j.at(t);
            flat.push_back(num / den);
        }
    }
    return JTable(k, std::move(flat));
}

const Poly& QFamily::at(int i) const {
    if (i < 0 || i > k()) throw ValidationError("QFamily: index out of range");
    return q[i];
}

Rational QFamily::profile_at(int i) const {
    if (i == 0) return Rational(1);
    if (i < 1 || i > k()) throw ValidationError("QFamily: profile index out of range");
    return profile[i - 1];
}

QFamily solve_q_family(const JTable& table, const std::vector<Rational>& profile) {
    const int k = table.k();
    if (static_cast<int>(profile.size()) != k)
        throw ValidationError("solve_q_family: profile must have k entries");

    QFamily fam;
    fam.profile = profile;
    fam.q.resize(k + 1);
    fam.q[0] = Poly(Rational(1));
    for (int i = 1; i <= k; ++i) {
        // R_i(t) = Q_i(1) + sum_{j=1}^{i-1} J(i,j) Q_{i-j}(1) Q_j(t)
        Poly r(fam.profile_at(i));
        for (int j = 1; j <= i - 1; ++j)
            r = r + fam.q[j].scaled(table.at(i, j) * fam.profile_at(i - j));
        fam.q[i] = r.discrete_sum();
        if (fam.q[i].degree() > i)
            throw std::logic_error("solve_q_family: degree bound violated");
    }

    const auto report = verify_q_family(table, fam);
    if (!report.ok()) {
        const auto& f = report.failures.front();
        throw ValidationError("solve_q_family: recursion fails at (i,l) = (" +
                              std::to_string(f.i) + "," + std::to_string(f.l) + ")");
    }
    return fam;
}

QFamily solve_q_family(const JSequence& j, const std::vector<Rational>& profile, int k) {
    return solve_q_family(build_j_table(j, k), profile);
}

QVerifyReport verify_q_family(const JTable& table, const QFamily& family) {
    const int k = table.k();
    if (family.k() != k) throw ValidationError("verify_q_family: depth mismatch");

    QVerifyReport report;
    for (int i = 0; i <= k; ++i) {
        for (int l = 0; l <= i; ++l) {
            Poly lhs;
            for (int j = l; j <= i; ++j) {
                const Rational w = table.at(i - l, j - l) * family.profile_at(i - j);
                lhs = lhs + family.at(j - l).shifted(Rational(-1)).scaled(w);
            }
            const Poly& rhs = family.at(i - l);
            ++report.pairs_checked;
            if (!(lhs == rhs)) report.failures.push_back({i, l, lhs, rhs});
        }
    }
    return report;
}

IntegralityReport integrality_check(const JTable& table, const QFamily& family) {
    const int k = table.k();
    if (family.k() != k) throw ValidationError("integrality_check: depth mismatch");
    for (int i = 0; i <= k; ++i) {
        for (int j = 0; j <= i; ++j) {
            const Rational v = table.at(k - j, i - j) * family.profile_at(i - j);
            if (!is_integer(v)) return {false, i, j, v};
        }
    }
    return {};
}

}  // namespace skewflow
