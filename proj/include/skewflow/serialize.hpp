#pragma once

#include "skewflow/dynamics.hpp"
#include "skewflow/ellis.hpp"
#include "skewflow/ergodic.hpp"
#include "skewflow/factor_map.hpp"

#include "json.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace skewflow {

using Json = nlohmann::json;

// dump(2) with the trailing newline; keys come out sorted, so identical data
// produces identical bytes.
std::string json_pretty(const Json& j);

// Integers inside the double-exact window emit as JSON numbers, wider ones as
// decimal strings; the reader accepts both.
Json json_int(const Int& v);
Int int_of_json(const Json& j);

// Rationals travel as ["num", "den"] string pairs.
Json jtable_json(const JTable& t);
JTable jtable_of_json(const Json& j);
Json qfamily_json(const QFamily& f);
QFamily qfamily_of_json(const Json& j);

// {kind, k, m, gamma0, j, profile}.  gamma0 is "symbolic" or an array of
// coordinate strings: decimals when the double value is grid-faithful, exact
// num/den otherwise; the reader additionally accepts the names "golden" and
// "sqrt2".  The kind tag is validated against the coefficient data.
Json system_json(const SkewSystem& s);
SkewSystem system_of_json(const Json& j);

// {kind, k, thetas: [integer or {formal: tag}], u: {c, r}}, or
// {kind, k, opaque: tag} for a formal product.
Json ellis_json(const EllisElement& e);
EllisElement ellis_of_json(const Json& j, const EllisContext& ctx);

Json birkhoff_json(const BirkhoffReport& r);
Json uniformity_json(const UniformityReport& r);
Json weyl_json(const WeylReport& r);
Json scan_json(const ScanReport& r);
Json distality_json(const DistalityReport& r);
Json salehi_json(const SalehiReport& r);
Json homomorphism_json(const HomomorphismReport& r);
Json kernel_json(const KernelReport& r);
Json window_json(const FunctionWindow& w);

// ---- CSV ------------------------------------------------------------------
//
// Header row, comma separators, '.' decimal point, %.17g values, '\n' line
// endings.  Identical inputs produce identical bytes.

// n_checkpoint,re_avg,im_avg,abs_avg; the key column carries checkpoints,
// start indices, or shifts depending on the experiment.
std::string csv_averages(const std::vector<long long>& keys,
                         const std::vector<std::complex<double>>& averages);

// n,re,im
std::string csv_window(const FunctionWindow& w);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// Throws SchemaError naming the file and 1-based line of the first
// malformed row.
CsvTable read_csv(std::istream& in, const std::string& name);
CsvTable read_csv_file(const std::string& path);

// Per-file, per-column min/max/mean over previously written reports.
Json summarize_tables(const std::vector<std::pair<std::string, CsvTable>>& tables);

}  // namespace skewflow
