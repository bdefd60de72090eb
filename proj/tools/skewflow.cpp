// Command-line front end: validate system configs, run the numbered
// experiments, and merge CSV reports.  Exit codes: 1 parse, 2 validation,
// 3 schema, 4 failed experiment assertion.

#include "skewflow/serialize.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace skewflow;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double golden() { return (std::sqrt(5.0) - 1.0) / 2.0; }
double sqrt2_frac() { return std::sqrt(2.0) - 1.0; }

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    return Json::parse(in);
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << content;
}

// A preset block {preset, k, m, gamma0} becomes a full descriptor; gamma0
// defaults to the golden rotation number in every base coordinate.
Json expand_preset(const Json& sys) {
    const std::string p = sys.at("preset").get<std::string>();
    const int k = sys.at("k").get<int>();
    const int m = sys.value("m", 1);
    JSequence js;
    std::vector<Rational> profile;
    if (p == "milnes") {
        js = JSequence::milnes(k);
        profile.assign(std::max(k, 1), Rational(1));
    } else if (p == "hahn") {
        js = JSequence::hahn(k);
        profile.assign(std::max(k, 1), Rational(0));
        profile[0] = 1;
    } else {
        throw ValidationError("unknown preset: " + p);
    }
    Json d{{"kind", "general"}, {"k", k}, {"m", m}};
    if (sys.contains("gamma0")) {
        d["gamma0"] = sys.at("gamma0");
    } else {
        Json g = Json::array();
        for (int b = 0; b < m; ++b) g.push_back("golden");
        d["gamma0"] = std::move(g);
    }
    Json jv = Json::array();
    for (const auto& v : js.values) jv.push_back(rational_string(v));
    d["j"] = std::move(jv);
    Json pr = Json::array();
    for (const auto& v : profile) pr.push_back(rational_string(v));
    d["profile"] = std::move(pr);
    return d;
}

SkewSystem system_from_config(const Json& cfg) {
    if (!cfg.contains("system"))
        throw ValidationError("config has no 'system' section");
    Json sys = cfg.at("system");
    if (sys.contains("preset")) sys = expand_preset(sys);
    return system_of_json(sys);
}

std::vector<Rational> rationals_from(const Json& arr) {
    std::vector<Rational> v;
    for (const auto& e : arr) v.push_back(parse_rational(e.get<std::string>()));
    return v;
}

TorusPoint point_from(const Json& params, const char* key, int dim) {
    if (!params.contains(key)) return TorusPoint::exact(std::vector<Rational>(dim, Rational(0)));
    auto v = rationals_from(params.at(key));
    if (static_cast<int>(v.size()) != dim)
        throw ValidationError(std::string(key) + " must have " + std::to_string(dim) +
                              " coordinates");
    return TorusPoint::exact(v);
}

// Default character: the deepest tower coordinate of the first block.
CharacterVector character_from(const Json& params, int dim) {
    std::vector<Int> e(dim, Int(0));
    if (params.contains("character")) {
        const Json& a = params.at("character");
        if (static_cast<int>(a.size()) != dim)
            throw ValidationError("character must have m*k entries");
        for (std::size_t i = 0; i < a.size(); ++i) e[i] = int_of_json(a.at(i));
    } else {
        e[dim - 1] = 1;
    }
    return CharacterVector(std::move(e));
}

double lambda_from(const Json& params) {
    const std::string s = params.value("lambda", "golden");
    if (s == "golden") return golden();
    if (s == "sqrt2") return sqrt2_frac();
    return to_double(parse_rational(s));
}

// Polynomial coefficients, ascending; the two named irrationals enter as the
// exact dyadic value of their double.
Poly poly_from(const Json& arr) {
    std::vector<Rational> c;
    for (const auto& e : arr) {
        const std::string s = e.get<std::string>();
        if (s == "golden")
            c.push_back(rational_of_double(golden()));
        else if (s == "sqrt2")
            c.push_back(rational_of_double(sqrt2_frac()));
        else
            c.push_back(parse_rational(s));
    }
    return Poly(std::move(c));
}

std::vector<long long> checkpoints_from(const Json& params) {
    std::vector<long long> cps;
    if (params.contains("checkpoints"))
        for (const auto& e : params.at("checkpoints")) cps.push_back(e.get<long long>());
    return cps;
}

std::vector<long long> shifts_from(const Json& params) {
    if (!params.contains("shifts")) {
        std::vector<long long> v(10);
        for (int i = 0; i < 10; ++i) v[i] = i;
        return v;
    }
    const Json& sh = params.at("shifts");
    std::vector<long long> v;
    if (sh.is_number_integer()) {
        for (long long i = 0; i < sh.get<long long>(); ++i) v.push_back(i);
    } else {
        for (const auto& e : sh) v.push_back(e.get<long long>());
    }
    return v;
}

void require_below(const Json& bounds, const char* key, double value, const std::string& what) {
    if (!bounds.contains(key)) return;
    const double b = bounds.at(key).get<double>();
    if (!(value < b))
        throw AssertionError(what + " = " + fmt(value) + ", bound " + fmt(b));
}

void require_at_least(const Json& bounds, const char* key, double value, const std::string& what) {
    if (!bounds.contains(key)) return;
    const double b = bounds.at(key).get<double>();
    if (value < b)
        throw AssertionError(what + " = " + fmt(value) + ", required at least " + fmt(b));
}

int cmd_build(const std::string& cfg_path) {
    const Json cfg = load_json_file(cfg_path);
    const SkewSystem s = system_from_config(cfg);

    const QVerifyReport vr = verify_q_family(s.jtab, s.family);
    if (!vr.ok())
        throw ValidationError("family recursion identity fails at (i,l) = (" +
                              std::to_string(vr.failures.front().i) + "," +
                              std::to_string(vr.failures.front().l) + ")");

    Json out = system_json(s);
    out["jtable"] = jtable_json(s.jtab);
    out["qfamily"] = qfamily_json(s.family);
    std::cout << json_pretty(out);
    return 0;
}

void run_iterate(const Json& cfg, const Json& params, const Json&, const fs::path& out) {
    const SkewSystem s = system_from_config(cfg);
    if (s.symbolic_gamma) throw ValidationError("iterate: numeric generator required");
    const long long N = params.value("N", 64LL);
    if (N < 1) throw ValidationError("iterate: N must be >= 1");
    const CharacterVector eta = character_from(params, s.dim());
    const TorusPoint x = point_from(params, "start", s.dim());

    FunctionWindow w;
    OrbitCursor cur(s, x);
    for (long long n = 0; n < N; ++n) {
        w.values.push_back(char_eval(eta, cur.point()));
        cur.advance();
    }
    write_file(out / "iterate.csv", csv_window(w));
    write_file(out / "iterate.json", json_pretty(window_json(w)));
    std::cout << "iterate: " << N << " character values written\n";
}

void run_power_check(const Json& cfg, const Json& params, const Json&, const fs::path& out) {
    const SkewSystem s = system_from_config(cfg);
    if (s.symbolic_gamma) throw ValidationError("power-check: numeric generator required");
    const long long R = params.value("range", 64LL);
    if (R < 0) throw ValidationError("power-check: range must be >= 0");
    const Fx64Point x = to_fixed(s, point_from(params, "start", s.dim()));

    long long count = 0;
    Fx64Point cur = x;
    for (long long n = 0; n <= R; ++n) {
        if (!(power_apply_fx(s, Int(n), x) == cur))
            throw AssertionError("power " + std::to_string(n) +
                                 " disagrees with the iterated orbit");
        ++count;
        apply_in_place(s, cur);
    }
    cur = x;
    for (long long n = 1; n <= R; ++n) {
        apply_inverse_in_place(s, cur);
        if (!(power_apply_fx(s, Int(-n), x) == cur))
            throw AssertionError("power " + std::to_string(-n) +
                                 " disagrees with the iterated orbit");
        ++count;
    }
    write_file(out / "power_check.json",
               json_pretty(Json{{"range", R}, {"powers", count}, {"ok", true}}));
    std::cout << "ok: " << count << " powers exact\n";
}

void run_equidist(const Json& cfg, const Json& params, const Json& bounds, const fs::path& out) {
    const SkewSystem s = system_from_config(cfg);
    const long long N = params.value("N", 100000LL);
    const CharacterVector eta = character_from(params, s.dim());
    const TorusPoint x = point_from(params, "start", s.dim());
    const auto cps = checkpoints_from(params);

    const BirkhoffReport rep = params.value("serial", false)
                                   ? birkhoff_average_serial(s, x, eta, N, cps)
                                   : birkhoff_average(s, x, eta, N, cps);
    write_file(out / "equidist.csv", csv_averages(rep.checkpoints, rep.averages));
    write_file(out / "equidist.json", json_pretty(birkhoff_json(rep)));
    const double last = std::abs(rep.averages.back());
    std::cout << "equidist: |A_N| = " << fmt(last) << " at N = " << rep.checkpoints.back()
              << "\n";
    require_below(bounds, "abs_avg", last, "final average magnitude");
}

void run_oxtoby(const Json& cfg, const Json& params, const Json& bounds, const fs::path& out) {
    const SkewSystem s = system_from_config(cfg);
    const long long N = params.value("N", 100000LL);
    const int count = params.value("starts", 100);
    if (!params.contains("seed"))
        throw ValidationError("oxtoby: seeded start grid requires an explicit 'seed'");
    const std::uint64_t seed = params.at("seed").get<std::uint64_t>();
    const CharacterVector eta = character_from(params, s.dim());

    const auto starts = seeded_starts(s, count, seed);
    const UniformityReport rep = params.value("serial", false)
                                     ? oxtoby_uniformity_serial(s, eta, starts, N)
                                     : oxtoby_uniformity(s, eta, starts, N);
    std::vector<long long> keys(rep.averages.size());
    for (std::size_t i = 0; i < keys.size(); ++i) keys[i] = static_cast<long long>(i);
    write_file(out / "oxtoby.csv", csv_averages(keys, rep.averages));
    write_file(out / "oxtoby.json", json_pretty(uniformity_json(rep)));
    std::cout << "oxtoby: spread = " << fmt(rep.spread) << " over " << count << " starts\n";
    require_below(bounds, "spread", rep.spread, "spread of the start averages");
}

void run_weyl(const Json& cfg, const Json& params, const Json& bounds, const fs::path& out) {
    (void)cfg;
    if (!params.contains("poly"))
        throw ValidationError("weyl: 'poly' coefficient list required");
    const Poly p = poly_from(params.at("poly"));
    auto cps = checkpoints_from(params);
    if (cps.empty()) cps = {1000, 10000, 100000};

    const WeylReport rep =
        params.value("serial", false) ? weyl_sum_serial(p, cps) : weyl_sum(p, cps);
    std::vector<std::complex<double>> avgs(rep.sums.size());
    for (std::size_t i = 0; i < rep.sums.size(); ++i)
        avgs[i] = rep.sums[i] / static_cast<double>(rep.checkpoints[i]);
    write_file(out / "weyl.csv", csv_averages(rep.checkpoints, avgs));
    write_file(out / "weyl.json", json_pretty(weyl_json(rep)));
    std::cout << "weyl: final |S_N|/N = " << fmt(rep.ratios.back()) << "\n";

    require_below(bounds, "ratio", rep.ratios.back(), "final normalized sum");
    if (bounds.value("decreasing", false)) {
        for (std::size_t i = 1; i < rep.ratios.size(); ++i)
            if (!(rep.ratios[i] < rep.ratios[i - 1]))
                throw AssertionError("normalized sums do not decrease at checkpoint " +
                                     std::to_string(rep.checkpoints[i]));
    }
}

void run_distal(const Json& cfg, const Json& params, const Json& bounds, const fs::path& out) {
    const SkewSystem s = system_from_config(cfg);
    const long long N = params.value("N", 4096LL);
    if (!params.contains("x") || !params.contains("y"))
        throw ValidationError("distal: point pair 'x', 'y' required");
    const TorusPoint x = point_from(params, "x", s.dim());
    const TorusPoint y = point_from(params, "y", s.dim());

    const DistalityReport rep = distality_probe(s, x, y, N);
    write_file(out / "distal.json", json_pretty(distality_json(rep)));
    std::cout << "distal: min distance " << fmt(rep.min_distance) << " at n = " << rep.argmin
              << ", gap constant: " << (rep.gap_constant ? "yes" : "no") << "\n";
    if (!rep.gap_constant)
        throw AssertionError("gap at the first differing coordinate is not constant");
    require_at_least(bounds, "min_distance", rep.min_distance, "orbit distance");
}

void run_scan(const Json& cfg, const Json& params, const Json& bounds, const fs::path& out) {
    const SkewSystem s = system_from_config(cfg);
    const long long B = params.value("B", 3LL);
    const long long n_max = params.value("n_max", 4LL);

    const ScanReport rep = ergodicity_scan(s, B, n_max);
    write_file(out / "scan.json", json_pretty(scan_json(rep)));
    std::cout << "scan: " << rep.characters_checked << " characters, " << rep.hits.size()
              << " fixed\n";
    if (bounds.contains("hits")) {
        const long long allowed = bounds.at("hits").get<long long>();
        if (static_cast<long long>(rep.hits.size()) > allowed)
            throw AssertionError("found " + std::to_string(rep.hits.size()) +
                                 " fixed characters, allowed " + std::to_string(allowed));
    }
}

void run_gamma(const Json& cfg, const Json& params, const Json&, const fs::path& out) {
    const double lam = lambda_from(params);
    std::vector<Rational> xr;
    if (params.contains("x")) {
        xr = rationals_from(params.at("x"));
    } else if (cfg.contains("system")) {
        const SkewSystem s = system_from_config(cfg);
        if (s.m != 1) throw ValidationError("gamma: sequence phases need base dimension m = 1");
        xr.assign(s.k, Rational(0));
    } else {
        throw ValidationError("gamma: provide 'x' or a system");
    }
    const long long n0 = params.value("n0", 0LL);
    const long long W = params.value("W", 8LL);
    if (W < 1) throw ValidationError("gamma: window length must be >= 1");

    const FunctionWindow w = gamma_window(TorusPoint::exact(xr), n0, W, lam);
    Json report = window_json(w);

    if (params.contains("y")) {
        const auto yr = rationals_from(params.at("y"));
        const KernelReport kr = kernel_witness_check(xr, yr);
        report["kernel"] = kernel_json(kr);
        if (params.contains("expect_equal") &&
            kr.equal != params.at("expect_equal").get<bool>())
            throw AssertionError(std::string("kernel test: sequences ") +
                                 (kr.equal ? "coincide" : "differ") + ", expected the opposite");
    }
    if (params.value("check_homomorphism", false)) {
        const HomomorphismReport hr = homomorphism_check(static_cast<int>(xr.size()));
        report["homomorphism"] = homomorphism_json(hr);
        if (!hr.ok())
            throw AssertionError("phase exchange identity failed at depth " +
                                 std::to_string(xr.size()));
    }
    write_file(out / "gamma.csv", csv_window(w));
    write_file(out / "gamma.json", json_pretty(report));
    std::cout << "gamma: window of " << W << " values from n = " << n0 << "\n";
}

void run_salehi(const Json& cfg, const Json& params, const Json& bounds, const fs::path& out) {
    (void)cfg;
    const long long mult = params.value("mult", 1LL);
    const int k = params.value("k", 3);
    const double lam = lambda_from(params);
    const auto shifts = shifts_from(params);
    const long long N = params.value("N", 100000LL);

    const SalehiReport rep = params.value("serial", false)
                                 ? salehi_average_serial(mult, k, lam, shifts, N)
                                 : salehi_average(mult, k, lam, shifts, N);
    write_file(out / "salehi.csv", csv_averages(rep.shifts, rep.averages));
    write_file(out / "salehi.json", json_pretty(salehi_json(rep)));
    std::cout << "salehi: max shifted |A| = " << fmt(rep.max_abs) << "\n";
    require_below(bounds, "max_abs", rep.max_abs, "max shifted average");
}

void run_ellis(const Json& cfg, const Json& params, const Json&, const fs::path& out) {
    const SkewSystem s = system_from_config(cfg);
    const EllisContext ctx = ellis_context(s);
    const long long R = params.value("range", 10LL);
    if (R < 0) throw ValidationError("ellis: range must be >= 0");

    Json failures = Json::array();
    long long checked = 0;
    for (long long a = -R; a <= R; ++a) {
        for (long long b = -R; b <= R; ++b) {
            ++checked;
            if (!centre_closure_check(s, Int(a), Int(b)))
                failures.push_back(Json{{"a", a}, {"b", b}});
        }
    }

    bool formal_rejected = true;
    if (ctx.k >= 2) {
        EllisElement e = embed_power(ctx, Int(1));
        e.thetas[0] = EndoSymbol::formal_limit("limit along a net");
        formal_rejected = !centre_membership(e).member;
    }
    bool scalar_rejected = true;
    if (ctx.k >= 3 && ctx.family.profile_at(1) != 0) {
        EllisElement e = embed_power(ctx, Int(2));
        e.thetas[1].c += 1;
        scalar_rejected = !centre_membership(e).member;
    }

    Json products = Json::array();
    const long long S = std::min<long long>(R, 2);
    for (long long a = -S; a <= S; ++a) {
        for (long long b = -S; b <= S; ++b) {
            products.push_back(
                Json{{"a", a},
                     {"b", b},
                     {"product", ellis_json(multiply(embed_power(ctx, Int(a)),
                                                     embed_power(ctx, Int(b))))}});
        }
    }

    write_file(out / "ellis.json",
               json_pretty(Json{{"kind", kind_name(ctx.kind)},
                                {"k", ctx.k},
                                {"range", R},
                                {"pairs_checked", checked},
                                {"failures", failures},
                                {"formal_rejected", formal_rejected},
                                {"scalar_rejected", scalar_rejected},
                                {"products", products}}));
    std::cout << "ellis: " << checked << " pairs, " << failures.size() << " mismatches\n";
    if (!failures.empty())
        throw AssertionError("products of embedded powers disagree with embedded sums");
    if (!formal_rejected || !scalar_rejected)
        throw AssertionError("centre membership accepted an element off the power pattern");
}

int cmd_run(const std::string& name, const std::string& cfg_path, const std::string& outdir) {
    const Json cfg = load_json_file(cfg_path);
    if (cfg.contains("experiment") && cfg.at("experiment").get<std::string>() != name)
        throw ValidationError("config is for experiment '" +
                              cfg.at("experiment").get<std::string>() + "', not '" + name + "'");
    const Json params = cfg.value("params", Json::object());
    const Json bounds = cfg.value("bounds", Json::object());

    const fs::path out(outdir);
    fs::create_directories(out);

    using Runner = void (*)(const Json&, const Json&, const Json&, const fs::path&);
    static const std::pair<const char*, Runner> table[] = {
        {"iterate", run_iterate}, {"power-check", run_power_check}, {"equidist", run_equidist},
        {"oxtoby", run_oxtoby},   {"weyl", run_weyl},               {"distal", run_distal},
        {"scan", run_scan},       {"gamma", run_gamma},             {"salehi", run_salehi},
        {"ellis", run_ellis},
    };
    for (const auto& [key, fn] : table) {
        if (name == key) {
            fn(cfg, params, bounds, out);
            return 0;
        }
    }
    throw ValidationError("unknown experiment: " + name);
}

int cmd_report(const std::vector<std::string>& paths) {
    std::vector<std::pair<std::string, CsvTable>> tables;
    for (const auto& p : paths) tables.emplace_back(p, read_csv_file(p));
    std::cout << json_pretty(summarize_tables(tables));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"skew product tower laboratory"};
    app.require_subcommand(1);

    std::string cfg_path, outdir = ".", experiment;
    std::vector<std::string> csv_paths;

    auto* build = app.add_subcommand("build", "validate a system config and print its descriptor");
    build->add_option("-c,--config", cfg_path, "config JSON")->required();

    auto* run = app.add_subcommand("run", "run an experiment and write its reports");
    run->add_option("experiment", experiment,
                    "iterate|power-check|equidist|oxtoby|weyl|distal|scan|gamma|salehi|ellis")
        ->required();
    run->add_option("-c,--config", cfg_path, "config JSON")->required();
    run->add_option("-o,--out", outdir, "output directory (default .)");

    auto* report = app.add_subcommand("report", "merge CSV reports into a summary");
    report->add_option("files", csv_paths, "CSV report files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (build->parsed()) return cmd_build(cfg_path);
        if (run->parsed()) return cmd_run(experiment, cfg_path, outdir);
        return cmd_report(csv_paths);
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 3;
    } catch (const AssertionError& e) {
        std::cerr << "assertion failed: " << e.what() << "\n";
        return 4;
    } catch (const Json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
