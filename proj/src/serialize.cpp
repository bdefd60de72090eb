#include "skewflow/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace skewflow {

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const Int kDoubleExact = Int(1) << 53;

Json rat_pair(const Rational& q) { return Json::array({numerator(q).str(), denominator(q).str()}); }

Rational rat_of_pair(const Json& j) {
    const Int num(j.at(0).get<std::string>());
    const Int den(j.at(1).get<std::string>());
    if (den == 0) throw ValidationError("rational with zero denominator");
    return Rational(num, den);
}

// ["num", "den"] pair or a single rational string.
Rational rat_of_any(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    return rat_of_pair(j);
}

Json poly_json(const Poly& p) {
    Json a = Json::array();
    for (const auto& c : p.coeffs()) a.push_back(rat_pair(c));
    return a;
}

Poly poly_of_json(const Json& j) {
    std::vector<Rational> c;
    for (const auto& e : j) c.push_back(rat_of_pair(e));
    return Poly(std::move(c));
}

SystemKind kind_of_name(const std::string& name) {
    if (name == "hahn") return SystemKind::hahn;
    if (name == "milnes") return SystemKind::milnes;
    if (name == "general") return SystemKind::general;
    throw ValidationError("unknown system kind: " + name);
}

Json complex_row(const char* key, const Json& keyval, const std::complex<double>& z) {
    return Json{{key, keyval}, {"re_avg", z.real()}, {"im_avg", z.imag()}, {"abs_avg", std::abs(z)}};
}

Json linexpr_json(const LinExpr& e) {
    Json xs = Json::array();
    for (const auto& c : e.xs) xs.push_back(rational_string(c));
    return Json{{"const", rational_string(e.r)}, {"lambda", rational_string(e.lam)}, {"x", xs}};
}

}  // namespace

std::string json_pretty(const Json& j) { return j.dump(2) + "\n"; }

Json json_int(const Int& v) {
    if (v >= -kDoubleExact && v <= kDoubleExact) return Json(static_cast<long long>(v));
    return Json(v.str());
}

Int int_of_json(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_number_unsigned()) return Int(j.get<unsigned long long>());
    if (j.is_string()) {
        try {
            return int_of_decimal(j.get<std::string>());
        } catch (const std::runtime_error&) {
            throw ValidationError("not an integer: " + j.get<std::string>());
        }
    }
    throw ValidationError("expected an integer, got " + std::string(j.type_name()));
}

Json jtable_json(const JTable& t) {
    Json rows = Json::array();
    for (int i = 0; i <= t.k(); ++i) {
        Json row = Json::array();
        for (int l = 0; l <= i; ++l) row.push_back(rat_pair(t.at(i, l)));
        rows.push_back(std::move(row));
    }
    return Json{{"k", t.k()}, {"rows", rows}};
}

JTable jtable_of_json(const Json& j) {
    const int k = j.at("k").get<int>();
    if (k < 0) throw ValidationError("jtable: negative depth");
    const Json& rows = j.at("rows");
    if (static_cast<int>(rows.size()) != k + 1)
        throw ValidationError("jtable: expected " + std::to_string(k + 1) + " rows");
    std::vector<Rational> flat;
    for (int i = 0; i <= k; ++i) {
        const Json& row = rows.at(i);
        if (static_cast<int>(row.size()) != i + 1)
            throw ValidationError("jtable: row " + std::to_string(i) + " has wrong length");
        for (const auto& e : row) flat.push_back(rat_of_pair(e));
    }
    return JTable(k, std::move(flat));
}

Json qfamily_json(const QFamily& f) {
    Json q = Json::array();
    for (const auto& p : f.q) q.push_back(poly_json(p));
    Json profile = Json::array();
    for (const auto& v : f.profile) profile.push_back(rat_pair(v));
    return Json{{"k", f.k()}, {"q", q}, {"profile", profile}};
}

QFamily qfamily_of_json(const Json& j) {
    const int k = j.at("k").get<int>();
    QFamily f;
    for (const auto& e : j.at("q")) f.q.push_back(poly_of_json(e));
    for (const auto& e : j.at("profile")) f.profile.push_back(rat_of_pair(e));
    if (f.k() != k || static_cast<int>(f.profile.size()) != k)
        throw ValidationError("qfamily: lengths disagree with declared depth");
    return f;
}

Json system_json(const SkewSystem& s) {
    Json out{{"kind", kind_name(s.kind)}, {"k", s.k}, {"m", s.m}};

    if (s.symbolic_gamma) {
        out["gamma0"] = "symbolic";
    } else {
        bool faithful = true;
        for (int b = 0; b < s.m; ++b) {
            if (fixed64_of_double(s.gamma0[b]) != s.gamma0_fx[b]) faithful = false;
        }
        static const Int two64 = Int(1) << 64;
        Json g = Json::array();
        for (int b = 0; b < s.m; ++b) {
            if (faithful)
                g.push_back(g17(s.gamma0[b]));
            else
                g.push_back(rational_string(Rational(Int(s.gamma0_fx[b]), two64)));
        }
        out["gamma0"] = std::move(g);
    }

    Json jv = Json::array();
    for (const auto& v : s.jseq.values) jv.push_back(rat_pair(v));
    out["j"] = std::move(jv);

    Json profile = Json::array();
    for (const auto& v : s.family.profile) profile.push_back(rational_string(v));
    out["profile"] = std::move(profile);
    return out;
}

SkewSystem system_of_json(const Json& j) {
    const SystemKind declared = kind_of_name(j.at("kind").get<std::string>());
    const int k = j.at("k").get<int>();
    const int m = j.at("m").get<int>();

    std::vector<Rational> jvals;
    for (const auto& e : j.at("j")) jvals.push_back(rat_of_any(e));
    JSequence jseq(std::move(jvals));

    std::vector<Rational> profile;
    for (const auto& e : j.at("profile")) profile.push_back(rat_of_any(e));

    const Json& g = j.at("gamma0");
    SkewSystem s;
    if (g.is_string() && g.get<std::string>() == "symbolic") {
        s = build_system(jseq, profile, k, m, std::nullopt);
    } else {
        std::vector<std::string> coords;
        if (g.is_string()) {
            coords.push_back(g.get<std::string>());
        } else {
            for (const auto& e : g) coords.push_back(e.get<std::string>());
        }
        if (static_cast<int>(coords.size()) != m)
            throw ValidationError("gamma0 must have m = " + std::to_string(m) + " coordinates");

        bool exact = false;
        for (const auto& c : coords) {
            if (c.find('/') != std::string::npos) exact = true;
        }
        if (exact) {
            std::vector<Rational> vals;
            for (const auto& c : coords) {
                if (c == "golden" || c == "sqrt2")
                    throw ValidationError("named irrational '" + c +
                                          "' cannot appear in an exact-rational gamma0");
                vals.push_back(parse_rational(c));
            }
            s = build_system(jseq, profile, k, m, vals);
        } else {
            std::vector<double> vals;
            for (const auto& c : coords) {
                if (c == "golden") {
                    vals.push_back((std::sqrt(5.0) - 1.0) / 2.0);
                } else if (c == "sqrt2") {
                    vals.push_back(std::sqrt(2.0) - 1.0);
                } else {
                    vals.push_back(to_double(parse_rational(c)));
                }
            }
            s = build_system(jseq, profile, k, m, vals);
        }
    }

    if (declared != SystemKind::general && declared != s.kind)
        throw ValidationError(std::string("declared kind '") + kind_name(declared) +
                              "' does not match the coefficient data (detected '" +
                              kind_name(s.kind) + "')");
    return s;
}

Json ellis_json(const EllisElement& e) {
    Json out{{"kind", kind_name(e.ctx.kind)}, {"k", e.ctx.k}};
    if (e.is_opaque()) {
        out["opaque"] = e.opaque;
        return out;
    }
    Json thetas = Json::array();
    for (const auto& t : e.thetas) {
        if (t.is_scalar())
            thetas.push_back(json_int(t.c));
        else
            thetas.push_back(Json{{"formal", *t.formal}});
    }
    out["thetas"] = std::move(thetas);
    Json r = Json::array();
    for (const auto& v : e.u.r) r.push_back(rational_string(v));
    out["u"] = Json{{"c", json_int(e.u.c)}, {"r", r}};
    return out;
}

EllisElement ellis_of_json(const Json& j, const EllisContext& ctx) {
    EllisElement e;
    e.ctx = ctx;
    if (kind_of_name(j.at("kind").get<std::string>()) != ctx.kind ||
        j.at("k").get<int>() != ctx.k)
        throw ValidationError("element document does not match the supplied context");
    if (j.contains("opaque")) {
        e.opaque = j.at("opaque").get<std::string>();
        return e;
    }
    for (const auto& t : j.at("thetas")) {
        if (t.is_object())
            e.thetas.push_back(EndoSymbol::formal_limit(t.at("formal").get<std::string>()));
        else
            e.thetas.push_back(EndoSymbol::scalar(int_of_json(t)));
    }
    if (static_cast<int>(e.thetas.size()) != ctx.k - 1)
        throw ValidationError("element has wrong number of endomorphism slots");
    e.u.c = int_of_json(j.at("u").at("c"));
    for (const auto& v : j.at("u").at("r")) e.u.r.push_back(mod1(parse_rational(v.get<std::string>())));
    if (static_cast<int>(e.u.r.size()) != ctx.m)
        throw ValidationError("free part has wrong dimension");
    return e;
}

Json birkhoff_json(const BirkhoffReport& r) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < r.checkpoints.size(); ++i)
        rows.push_back(complex_row("n_checkpoint", r.checkpoints[i], r.averages[i]));
    return Json{{"N", r.N},
                {"rows", rows},
                {"target", Json{{"re", r.target.real()}, {"im", r.target.imag()}}}};
}

Json uniformity_json(const UniformityReport& r) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < r.averages.size(); ++i)
        rows.push_back(complex_row("start", static_cast<long long>(i), r.averages[i]));
    return Json{{"N", r.N}, {"rows", rows}, {"spread", r.spread}};
}

Json weyl_json(const WeylReport& r) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < r.checkpoints.size(); ++i) {
        rows.push_back(Json{{"n_checkpoint", r.checkpoints[i]},
                            {"re_sum", r.sums[i].real()},
                            {"im_sum", r.sums[i].imag()},
                            {"ratio", r.ratios[i]}});
    }
    return Json{{"rows", rows}};
}

Json scan_json(const ScanReport& r) {
    Json hits = Json::array();
    for (const auto& h : r.hits) {
        Json eta = Json::array();
        for (const auto& e : h.eta.exps) eta.push_back(json_int(e));
        hits.push_back(Json{{"eta", eta}, {"n", h.n}});
    }
    return Json{{"characters_checked", r.characters_checked}, {"n_max", r.n_max}, {"hits", hits}};
}

Json distality_json(const DistalityReport& r) {
    return Json{{"min_distance", r.min_distance},
                {"argmin", r.argmin},
                {"first_coordinate", r.first_diff},
                {"gap_fx", r.gap},
                {"gap", fixed64_to_double(r.gap)},
                {"gap_constant", r.gap_constant}};
}

Json salehi_json(const SalehiReport& r) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < r.shifts.size(); ++i)
        rows.push_back(complex_row("shift", r.shifts[i], r.averages[i]));
    return Json{{"rows", rows}, {"max_abs", r.max_abs}};
}

Json homomorphism_json(const HomomorphismReport& r) {
    Json lhs = Json::array(), rhs = Json::array(), mis = Json::array();
    for (const auto& e : r.lhs) lhs.push_back(linexpr_json(e));
    for (const auto& e : r.rhs) rhs.push_back(linexpr_json(e));
    for (const auto& m : r.mismatches)
        mis.push_back(
            Json{{"power", m.power}, {"lhs", linexpr_json(m.lhs)}, {"rhs", linexpr_json(m.rhs)}});
    return Json{{"k", r.k}, {"ok", r.ok()}, {"lhs", lhs}, {"rhs", rhs}, {"mismatches", mis}};
}

Json kernel_json(const KernelReport& r) {
    Json gap = Json::array();
    for (const auto& c : r.basis_gap) gap.push_back(rational_string(c));
    return Json{{"equal", r.equal}, {"basis_gap", gap}};
}

Json window_json(const FunctionWindow& w) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < w.values.size(); ++i) {
        rows.push_back(Json{{"n", w.n0 + static_cast<long long>(i)},
                            {"re", w.values[i].real()},
                            {"im", w.values[i].imag()}});
    }
    return Json{{"n0", w.n0}, {"rows", rows}};
}

std::string csv_averages(const std::vector<long long>& keys,
                         const std::vector<std::complex<double>>& averages) {
    if (keys.size() != averages.size())
        throw ValidationError("csv_averages: key and value counts differ");
    std::string out = "n_checkpoint,re_avg,im_avg,abs_avg\n";
    for (std::size_t i = 0; i < keys.size(); ++i) {
        out += std::to_string(keys[i]);
        out += ',';
        out += g17(averages[i].real());
        out += ',';
        out += g17(averages[i].imag());
        out += ',';
        out += g17(std::abs(averages[i]));
        out += '\n';
    }
    return out;
}

std::string csv_window(const FunctionWindow& w) {
    std::string out = "n,re,im\n";
    for (std::size_t i = 0; i < w.values.size(); ++i) {
        out += std::to_string(w.n0 + static_cast<long long>(i));
        out += ',';
        out += g17(w.values[i].real());
        out += ',';
        out += g17(w.values[i].imag());
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

CsvTable read_csv(std::istream& in, const std::string& name) {
    CsvTable t;
    std::string line;
    long long lineno = 0;

    if (!std::getline(in, line)) throw SchemaError(name + ": missing header row");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    t.columns = split_fields(line);
    for (const auto& c : t.columns) {
        if (c.empty())
            throw SchemaError(name + " line 1: empty column name in header");
    }

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto fields = split_fields(line);
        if (fields.size() != t.columns.size())
            throw SchemaError(name + " line " + std::to_string(lineno) + ": expected " +
                              std::to_string(t.columns.size()) + " fields, found " +
                              std::to_string(fields.size()));
        std::vector<double> row;
        row.reserve(fields.size());
        for (std::size_t i = 0; i < fields.size(); ++i) {
            const char* begin = fields[i].c_str();
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin || *end != '\0')
                throw SchemaError(name + " line " + std::to_string(lineno) + ": field '" +
                                  t.columns[i] + "' is not a number: '" + fields[i] + "'");
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError(path + ": cannot open");
    return read_csv(in, path);
}

Json summarize_tables(const std::vector<std::pair<std::string, CsvTable>>& tables) {
    Json files = Json::array();
    long long total = 0;
    for (const auto& [path, t] : tables) {
        Json cols = Json::object();
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            if (t.rows.empty()) continue;
            double lo = t.rows[0][c], hi = t.rows[0][c];
            Neumaier sum;
            for (const auto& row : t.rows) {
                lo = std::min(lo, row[c]);
                hi = std::max(hi, row[c]);
                sum.add(row[c]);
            }
            cols[t.columns[c]] = Json{
                {"min", lo}, {"max", hi}, {"mean", sum.total() / static_cast<double>(t.rows.size())}};
        }
        total += static_cast<long long>(t.rows.size());
        files.push_back(Json{
            {"path", path}, {"rows", static_cast<long long>(t.rows.size())}, {"columns", cols}});
    }
    return Json{{"files", files}, {"total_rows", total}};
}

}  // namespace skewflow
