#include "dvertex/io.hpp"
#include "dvertex/omega.hpp"
#include "dvertex/orientation.hpp"
#include "dvertex/series.hpp"
#include "dvertex/weights.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace dvertex;

namespace {

enum Exit { confirmed = 0, mismatch = 1, failed = 2 };

// Desk-scale budget: larger runs need --allow-large.
constexpr int kDeskBudget = 36;

struct Options {
    std::string kind;
    int d = 0;
    int order = 0;
    std::string ell = "symbolic";
    std::string orientation = "positive-omega";
    std::uint64_t seed = 1;
    int jobs = 0;
    std::string cache;
    bool no_cache = false;
    std::string format = "json";
    bool allow_large = false;
    std::size_t cap = 1u << 20;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EllRange {
    bool symbolic = true;
    long lo = 0, hi = 0;
};

EllRange parse_ell(const std::string& s)
{
    if (s == "symbolic") return {};
    auto to_long = [&](const std::string& t) {
        std::size_t pos = 0;
        long v = 0;
        try {
            v = std::stol(t, &pos);
        } catch (const std::exception&) {
            pos = std::string::npos;
        }
        if (pos != t.size()) throw UsageError("--ell expects an integer, a range a:b, or symbolic; got " + s);
        return v;
    };
    const auto colon = s.find(':');
    EllRange r{false, 0, 0};
    if (colon == std::string::npos) {
        r.lo = r.hi = to_long(s);
    } else {
        r.lo = to_long(s.substr(0, colon));
        r.hi = to_long(s.substr(colon + 1));
    }
    if (r.lo > r.hi) throw UsageError("--ell range is empty: " + s);
    return r;
}

ExecPolicy policy_of(const Options& o) { return o.jobs == 1 ? ExecPolicy::serial() : ExecPolicy::threads(o.jobs); }

std::unique_ptr<WeightCache> open_cache(const Options& o)
{
    if (o.no_cache) return nullptr;
    if (!o.cache.empty()) return std::make_unique<WeightCache>(o.cache);
    if (std::getenv("DVERTEX_CACHE_DIR")) return std::make_unique<WeightCache>(default_cache_path());
    return nullptr;
}

OrientationAssignment load_orientation(const Options& o, const WeightTable& symbolic)
{
    if (o.orientation == "positive-omega") return positive_omega_orientation(symbolic);
    std::ifstream in(o.orientation);
    if (!in) throw UsageError("cannot read orientation file " + o.orientation);
    auto a = orientation_from_json(json::parse(in));
    if (a.d != o.d) throw UsageError("orientation file is for d=" + std::to_string(a.d));
    return a;
}

void require(bool ok, const std::string& why)
{
    if (!ok) throw UsageError(why);
}

void check_budget(const Options& o)
{
    if (!o.allow_large && o.order * (o.d - 1) > kDeskBudget)
        throw UsageError("order " + std::to_string(o.order) + " at d=" + std::to_string(o.d) +
                         " exceeds the desk-scale budget; pass --allow-large to run it");
}

json header(const Options& o)
{
    return json{{"kind", o.kind}, {"dimension", o.d}, {"order", o.order}};
}

json series_json(const TruncatedSeries& s)
{
    json out = json::array();
    for (const auto& c : s.coefficients()) out.push_back(to_json(c));
    return out;
}

std::string csv_field(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

struct Report {
    json body;
    std::vector<std::string> csv;  // header first
    std::string table;
    int code = confirmed;
};

Report run_odd(const Options& o)
{
    require(o.d % 2 == 1 && o.d >= 3, "odd requires an odd dimension >= 3");
    check_budget(o);
    Report rep{header(o), {"key,size,key_conjecture,ratio,error"}, {}, confirmed};
    TruncatedSeries z(o.order);
    json rows = json::array();
    bool error = false;
    for (int n = 0; n <= o.order; ++n)
        for (const auto& r : compute_odd_ratios(o.d, n, policy_of(o))) {
            json row{{"partition", to_json(r.pi)}, {"size", n}, {"key_conjecture", to_string(r.verdict)}};
            if (r.error) {
                error = true;
                row["error"] = to_string(*r.error);
                row["message"] = r.error_message;
            } else {
                row["ratio"] = to_string(r.ratio);
                z[n] += QPoly(r.ratio);
            }
            rep.csv.push_back(csv_field(r.pi.key()) + "," + std::to_string(n) + "," + to_string(r.verdict) + "," +
                              (r.error ? "" : to_string(r.ratio)) + "," + (r.error ? to_string(*r.error) : ""));
            rows.push_back(std::move(row));
        }
    const auto target = m_series(o.d - 1, o.order).negate_q();
    const bool holds = !error && z == target;
    rep.body["identity_holds"] = holds;
    rep.body["series"] = series_json(z);
    rep.body["target"] = series_json(target);
    rep.body["records"] = std::move(rows);
    rep.table = "Z\n" + series_table(z) + "M_" + std::to_string(o.d - 1) + "(-q)\n" + series_table(target);
    rep.code = error ? failed : holds ? confirmed : mismatch;
    return rep;
}

json weight_row(const WeightRecord& r, int sign)
{
    json row{{"partition", to_json(r.pi)},
             {"size", r.pi.size()},
             {"corner_height", r.pi.corner_height()},
             {"orbit", r.orbit},
             {"key_conjecture", to_string(r.verdict)},
             {"sign", sign}};
    if (r.error) {
        row["error"] = to_string(*r.error);
        row["message"] = r.error_message;
        return row;
    }
    row["specialized"] = to_json(r.specialized);
    if (r.omega) row["omega"] = to_string(r.omega->omega);
    return row;
}

std::string weight_csv(const WeightRecord& r, int sign, const std::string& ell)
{
    std::string value = r.error ? "" : r.specialized.ok() ? r.oriented_value(sign).to_string() : "";
    std::string err = r.error ? to_string(*r.error) : r.specialized.ok() ? "" : to_string(r.specialized.kind);
    return csv_field(r.pi.key()) + "," + ell + "," + std::to_string(r.pi.size()) + "," +
           std::to_string(r.pi.corner_height()) + "," + std::to_string(r.orbit) + "," + std::to_string(sign) + "," +
           csv_field(value) + "," + err;
}

Report run_fourk(const Options& o)
{
    require(o.d % 4 == 0 && o.d >= 4, "fourk requires a dimension divisible by 4");
    check_budget(o);
    const auto range = parse_ell(o.ell);
    const auto policy = policy_of(o);
    auto cache = open_cache(o);
    Report rep{header(o), {"key,ell,size,corner_height,orbit,sign,value,error"}, {}, confirmed};
    rep.body["ell"] = o.ell;

    const auto symbolic = build_weight_table(o.d, o.order, TautShift::symbolic(o.d), policy, cache.get());
    if (const auto* e = symbolic.first_error()) {
        if (cache) cache->flush();
        rep.body["error"] = to_string(*e->error);
        rep.body["partition"] = to_json(e->pi);
        rep.body["message"] = e->error_message;
        rep.code = failed;
        return rep;
    }
    const auto orientation = load_orientation(o, symbolic);
    const auto m = m_series(o.d - 2, o.order).negate_q();
    const auto target = series_pow_ell(m, o.order);

    auto emit = [&](const WeightTable& table, const std::string& ell_label, const TruncatedSeries& expect) {
        json rows = json::array();
        for (const auto& row : table.by_size)
            for (const auto& r : row) {
                const int s = orientation.sign(r.pi);
                rows.push_back(weight_row(r, s));
                rep.csv.push_back(weight_csv(r, s, ell_label));
            }
        json run{{"ell", ell_label}};
        try {
            const auto z = build_z_4k(table, orientation);
            const bool holds = z == expect;
            run["identity_holds"] = holds;
            run["series"] = series_json(z);
            run["target"] = series_json(expect);
            rep.table += "l = " + ell_label + (holds ? "  holds\n" : "  MISMATCH\n") + series_table(z);
            if (!holds && rep.code == confirmed) rep.code = mismatch;
        } catch (const PipelineError& e) {
            run["error"] = to_string(e.kind());
            run["message"] = e.what();
            rep.code = failed;
        }
        run["records"] = std::move(rows);
        return run;
    };

    json runs = json::array();
    if (range.symbolic) {
        runs.push_back(emit(symbolic, "symbolic", target));
    } else {
        for (long k = range.lo; k <= range.hi; ++k) {
            const auto table = build_weight_table(o.d, o.order, TautShift::numeric(o.d, static_cast<int>(k)), policy,
                                                  cache.get());
            runs.push_back(emit(table, std::to_string(k), target.at_ell(Rational(k))));
        }
    }
    if (cache) cache->flush();
    rep.body["orientation"] = to_json(orientation);
    rep.body["runs"] = std::move(runs);
    rep.body["identity_holds"] = rep.code == confirmed;
    return rep;
}

Report run_keyconj(const Options& o)
{
    require(o.d >= 2, "keyconj requires a dimension >= 2");
    check_budget(o);
    Report rep{header(o), {"key,size,fixed_part,verdict"}, {}, confirmed};
    json rows = json::array();
    std::size_t bad = 0;
    const auto records = key_conjecture_sweep(o.d, o.order, policy_of(o));
    for (const auto& r : records) {
        if (r.verdict != KeyConjVerdict::ok) ++bad;
        rows.push_back(json{{"partition", to_json(r.pi)},
                            {"size", r.pi.size()},
                            {"fixed_part", r.fixed_part},
                            {"verdict", to_string(r.verdict)}});
        rep.csv.push_back(csv_field(r.pi.key()) + "," + std::to_string(r.pi.size()) + "," +
                          std::to_string(r.fixed_part) + "," + to_string(r.verdict));
    }
    rep.body["identity_holds"] = bad == 0;
    rep.body["checked"] = records.size();
    rep.body["violations"] = bad;
    rep.body["records"] = std::move(rows);
    rep.table = std::to_string(records.size()) + " partitions, " + std::to_string(bad) + " violations\n";
    rep.code = bad == 0 ? confirmed : mismatch;
    return rep;
}

Report run_remfail(const Options& o)
{
    require(o.order >= 2, "remfail needs order >= 2");
    require(o.d % 2 == 1 || o.d % 4 == 0, "remfail requires an odd dimension or one divisible by 4");
    check_budget(o);
    Report rep{header(o), {"point,coordinates,evidence"}, {}, confirmed};
    PowerLawVerdict v;
    if (o.d % 2 == 1) {
        rep.body["setting"] = "full torus";
        v = check_power_law(full_torus_z(o.d, o.order), m_series(o.d - 1, o.order).negate_q(), o.order, o.d, o.seed, 3);
    } else {
        rep.body["setting"] = "Calabi-Yau torus, L = O (x) t_1, all sign choices";
        TautShift shift{std::vector<int>(o.d, 0), 0};
        shift.u[0] = 1;
        std::vector<std::vector<FormProduct>> terms(o.order + 1);
        for (int n = 0; n <= o.order; ++n)
            for (const auto& pi : enumerate_partitions(o.d - 1, n))
                terms[n].push_back(taut_factor(pi, o.d, shift) * half_euler_weight(pi, o.d));
        v = check_power_law_oriented(terms, m_series(o.d - 2, o.order).negate_q(), o.order, o.d - 1, o.seed, 3);
    }
    auto point_json = [](const std::vector<Rational>& p) {
        json a = json::array();
        for (const auto& x : p) a.push_back(to_string(x));
        return a;
    };
    json pts = json::array();
    for (std::size_t i = 0; i < v.points.size(); ++i) {
        json e = i < v.evidence.size() ? point_json(v.evidence[i]) : json::array();
        pts.push_back(json{{"point", point_json(v.points[i])}, {"evidence", e}});
        rep.csv.push_back(std::to_string(i) + "," + csv_field(point_json(v.points[i]).dump()) + "," +
                          csv_field(e.dump()));
    }
    rep.body["seed"] = v.seed;
    rep.body["power_law_exists"] = v.fits;
    rep.body["certificate"] = v.fits ? "E fits at every sampled point" : "no E exists";
    rep.body["mismatch_order"] = v.mismatch_order;
    rep.body["detail"] = v.detail;
    rep.body["points"] = std::move(pts);
    rep.body["identity_holds"] = !v.fits;
    rep.table = std::string(v.fits ? "E fits" : "no E exists") + " (seed " + std::to_string(v.seed) +
                ", mismatch at q^" + std::to_string(v.mismatch_order) + ")\n" + v.detail + "\n";
    rep.code = v.fits ? mismatch : confirmed;
    return rep;
}

Report run_omega(const Options& o)
{
    require(o.d % 4 == 0 && o.d >= 4, "omega requires a dimension divisible by 4");
    check_budget(o);
    const auto policy = policy_of(o);
    Report rep{header(o), {}, {}, confirmed};
    const auto rows = omega_rows(o.d, o.order, true, policy);
    json out = json::array();
    std::size_t bad = 0, errors = 0;
    for (const auto& r : rows) {
        json row{{"partition", to_json(r.pi)},
                 {"size", r.pi.size()},
                 {"corner_height", r.pi.corner_height()},
                 {"orbit", r.orbit},
                 {"omega_c", to_string(r.omega_c)}};
        if (r.omega) {
            row["omega"] = to_string(*r.omega);
            row["match"] = *r.omega == r.omega_c;
            if (*r.omega != r.omega_c) ++bad;
        } else {
            row["error"] = r.error;
            ++errors;
        }
        out.push_back(std::move(row));
    }
    const auto exp = check_exp_identity(o.d - 1, o.order, o.order, policy);
    rep.body["identity_holds"] = bad == 0 && errors == 0 && exp.equal && exp.t1_equal;
    rep.body["mismatches"] = bad;
    rep.body["exp_identity"] = json{{"equal", exp.equal},
                                    {"t1_equal", exp.t1_equal},
                                    {"lhs", series_json(exp.lhs)},
                                    {"rhs", series_json(exp.rhs)}};
    rep.body["records"] = std::move(out);
    std::istringstream csv(omega_csv(rows));
    for (std::string line; std::getline(csv, line);) rep.csv.push_back(line);
    rep.table = "sum omega_c t^h q^n (columns are powers of t)\n" + series_table(exp.lhs);
    rep.code = errors ? failed : (bad == 0 && exp.equal && exp.t1_equal) ? confirmed : mismatch;
    return rep;
}

Report run_uniqueness(const Options& o)
{
    require(o.d % 4 == 0 && o.d >= 4, "uniqueness requires a dimension divisible by 4");
    check_budget(o);
    auto cache = open_cache(o);
    Report rep{header(o), {"kind,order,subsets_examined,flipped"}, {}, confirmed};
    const auto table = build_weight_table(o.d, o.order, TautShift::symbolic(o.d), policy_of(o), cache.get());
    if (cache) cache->flush();
    if (const auto* e = table.first_error()) {
        rep.body["error"] = to_string(*e->error);
        rep.body["partition"] = to_json(e->pi);
        rep.body["message"] = e->error_message;
        rep.code = failed;
        return rep;
    }
    const auto orientation = load_orientation(o, table);
    const auto target = series_pow_ell(m_series(o.d - 2, o.order).negate_q(), o.order);
    if (!(build_z_4k(table, orientation) == target))
        throw PipelineError(ErrorKind::ShapeMismatch, "the base orientation does not reproduce the target series");
    const auto v = verify_uniqueness(table, orientation, o.cap);
    json flipped = json::array();
    for (const auto& k : v.flipped) flipped.push_back(json::parse(k));
    rep.body["verdict"] = to_string(v.kind);
    rep.body["at_order"] = v.order;
    rep.body["subsets_examined"] = v.subsets_examined;
    rep.body["detail"] = v.detail;
    if (v.kind == UniquenessVerdict::Kind::alternative_found) {
        auto alt = orientation;
        for (const auto& k : v.flipped) alt.signs[k] = -orientation.sign(parse_partition_key(k));
        rep.body["certificate"] = json{{"flipped", flipped}, {"alternative", to_json(alt)}};
    }
    rep.body["identity_holds"] = v.kind == UniquenessVerdict::Kind::unique;
    rep.csv.push_back(std::string(to_string(v.kind)) + "," + std::to_string(v.order) + "," +
                      std::to_string(v.subsets_examined) + "," + csv_field(flipped.dump()));
    rep.table = std::string(to_string(v.kind)) + " up to q^" + std::to_string(o.order) + " (" +
                std::to_string(v.subsets_examined) + " subsets examined)\n";
    rep.code = v.kind == UniquenessVerdict::Kind::unique                ? confirmed
               : v.kind == UniquenessVerdict::Kind::alternative_found ? mismatch
                                                                       : failed;
    return rep;
}

int emit(const Report& rep, const std::string& format)
{
    if (format == "json") {
        std::cout << rep.body.dump(2) << "\n";
    } else if (format == "csv") {
        for (const auto& line : rep.csv) std::cout << line << "\n";
    } else {
        std::cout << rep.table;
    }
    return rep.code;
}

int run_check(const Options& o)
{
    Report rep;
    try {
        if (o.kind == "odd")
            rep = run_odd(o);
        else if (o.kind == "fourk")
            rep = run_fourk(o);
        else if (o.kind == "keyconj")
            rep = run_keyconj(o);
        else if (o.kind == "remfail")
            rep = run_remfail(o);
        else if (o.kind == "omega")
            rep = run_omega(o);
        else
            rep = run_uniqueness(o);
    } catch (const UsageError& e) {
        std::cerr << "dvertex: " << e.what() << "\n";
        return failed;
    } catch (const PipelineError& e) {
        json err = header(o);
        err["error"] = to_string(e.kind());
        err["message"] = e.what();
        std::cout << err.dump(2) << "\n";
        return failed;
    }
    return emit(rep, o.format);
}

int run_enumerate(int arity, int size, bool canonical)
{
    if (canonical) {
        for (const auto& c : canonical_classes(arity, size))
            std::cout << json{{"partition", to_json(c.rep)}, {"orbit", c.orbit}}.dump() << "\n";
    } else {
        for (const auto& pi : enumerate_partitions(arity, size)) std::cout << pi.key() << "\n";
    }
    return confirmed;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact equivariant vertex computations on C^d"};
    app.require_subcommand(1);

    int arity = 0, size = 0;
    bool canonical = false;
    auto* en = app.add_subcommand("enumerate", "List n-partitions of a given size as JSON lines");
    en->add_option("--arity,arity", arity, "Number of index coordinates n")->required()->check(CLI::Range(0, 64));
    en->add_option("--size,size", size, "Number of boxes")->required()->check(CLI::NonNegativeNumber);
    en->add_flag("--canonical", canonical, "One representative per axis-permutation orbit, with its orbit size");

    Options o;
    auto* ch = app.add_subcommand("check", "Run a verification and print a report");
    ch->add_option("kind", o.kind, "Which check")
        ->required()
        ->check(CLI::IsMember({"odd", "fourk", "keyconj", "remfail", "omega", "uniqueness"}));
    ch->add_option("--dimension,-d", o.d, "Dimension d of C^d")->required()->check(CLI::Range(2, 64));
    ch->add_option("--order,-N", o.order, "Truncation order in q")->required()->check(CLI::NonNegativeNumber);
    ch->add_option("--ell", o.ell, "Integer, range a:b, or symbolic")->capture_default_str();
    ch->add_option("--orientation", o.orientation, "positive-omega or a JSON file of signs")->capture_default_str();
    ch->add_option("--seed", o.seed, "Seed for random sample points")->capture_default_str();
    ch->add_option("--jobs,-j", o.jobs, "Worker threads (0: OpenMP default, 1: serial)")->check(CLI::NonNegativeNumber);
    ch->add_option("--cache", o.cache, "Weight cache file (default: $DVERTEX_CACHE_DIR/weights.jsonl when set)");
    ch->add_flag("--no-cache", o.no_cache, "Ignore any cache");
    ch->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "table"}))
        ->capture_default_str();
    ch->add_option("--cap", o.cap, "Subset budget for the uniqueness search")->capture_default_str();
    ch->add_flag("--allow-large", o.allow_large, "Permit orders beyond the desk-scale budget");

    std::string cache_path;
    auto* ca = app.add_subcommand("cache", "Weight cache maintenance");
    auto* compact = ca->add_subcommand("compact", "Rewrite the cache with one line per key");
    compact->add_option("--cache", cache_path, "Cache file (default: $DVERTEX_CACHE_DIR/weights.jsonl)");
    ca->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return failed;
    }

    try {
        if (*en) return run_enumerate(arity, size, canonical);
        if (*ch) return run_check(o);
        WeightCache cache(cache_path.empty() ? default_cache_path() : std::filesystem::path(cache_path));
        const auto before = cache.size();
        cache.compact();
        std::cout << json{{"path", cache.path().string()}, {"records", before}}.dump() << "\n";
        return confirmed;
    } catch (const std::exception& e) {
        std::cerr << "dvertex: " << e.what() << "\n";
        return failed;
    }
}
