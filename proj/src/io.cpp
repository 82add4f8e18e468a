#include "dvertex/io.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace dvertex {

json to_json(const Rational& q) { return to_string(q); }

json to_json(const QPoly& p)
{
    json a = json::array();
    for (const auto& c : p.coefficients()) a.push_back(to_string(c));
    return a;
}

json to_json(const MultiPartition& pi) { return json::parse(pi.key()); }

json to_json(const KClass& k) { return json::parse(k.serialize()); }

json to_json(const LinearForm& f) { return json{{"lambda", f.lambda}, {"ell", f.ell}}; }

json to_json(const FormProduct& p)
{
    if (p.is_zero()) return json{{"zero", true}};
    json factors = json::array();
    for (const auto& [f, e] : p.factors()) factors.push_back(json{{"lambda", f.lambda}, {"ell", f.ell}, {"exp", e}});
    return json{{"scalar", to_string(p.scalar())}, {"factors", std::move(factors)}};
}

json to_json(const SpecializedValue& v)
{
    json j{{"kind", to_string(v.kind)}};
    if (v.ok())
        j["value"] = to_json(v.value);
    else {
        j["direction"] = v.direction;
        j["detail"] = v.detail;
    }
    return j;
}

json to_json(const TruncatedSeries& s)
{
    json c = json::array();
    for (const auto& p : s.coefficients()) c.push_back(to_json(p));
    return json{{"order", s.order()}, {"coefficients", std::move(c)}};
}

json to_json(const OrientationAssignment& o)
{
    json signs = json::object();
    for (const auto& [k, s] : o.signs) signs[k] = s;
    return json{{"dimension", o.d},
                {"convention", o.convention == OrientationAssignment::Convention::positive_omega ? "positive_omega"
                                                                                               : "explicit"},
                {"signs", std::move(signs)}};
}

json to_json(const WeightRecord& r)
{
    json j{{"partition", to_json(r.pi)},
           {"size", r.pi.size()},
           {"corner_height", r.pi.corner_height()},
           {"orbit", r.orbit},
           {"fingerprint", r.fingerprint},
           {"key_conjecture", to_string(r.verdict)}};
    if (r.error) {
        j["error"] = to_string(*r.error);
        j["message"] = r.error_message;
        return j;
    }
    j["w"] = to_json(r.w);
    j["product"] = to_json(r.product);
    j["specialized"] = to_json(r.specialized);
    if (r.omega) j["omega"] = json{{"value", to_string(r.omega->omega)}, {"sign", r.omega->sign}};
    return j;
}

Rational rational_from_json(const json& j)
{
    if (j.is_number_integer()) return Rational(j.get<long>());
    return parse_rational(j.get<std::string>());
}

QPoly qpoly_from_json(const json& j)
{
    std::vector<Rational> c;
    for (const auto& x : j) c.push_back(rational_from_json(x));
    return QPoly(std::move(c));
}

MultiPartition partition_from_json(const json& j) { return parse_partition_key(j.dump()); }

FormProduct form_product_from_json(const json& j)
{
    if (j.value("zero", false)) return FormProduct::zero();
    FormProduct p = FormProduct::constant(rational_from_json(j.at("scalar")));
    for (const auto& f : j.at("factors")) {
        LinearForm lf{f.at("lambda").get<std::vector<std::int32_t>>(), f.at("ell").get<std::int32_t>()};
        p.multiply_form(lf, f.at("exp").get<int>());
    }
    return p;
}

SpecializedValue specialized_from_json(const json& j)
{
    SpecializedValue v;
    const auto kind = j.at("kind").get<std::string>();
    if (kind == to_string(SpecializedValue::Kind::polynomial)) {
        v.kind = SpecializedValue::Kind::polynomial;
        v.value = qpoly_from_json(j.at("value"));
        return v;
    }
    v.kind = kind == to_string(SpecializedValue::Kind::pole) ? SpecializedValue::Kind::pole
                                                             : SpecializedValue::Kind::not_constant;
    v.direction = j.value("direction", std::vector<int>{});
    v.detail = j.value("detail", std::string{});
    return v;
}

OrientationAssignment orientation_from_json(const json& j)
{
    OrientationAssignment o;
    o.d = j.at("dimension").get<int>();
    o.convention = j.value("convention", std::string("explicit")) == "positive_omega"
                       ? OrientationAssignment::Convention::positive_omega
                       : OrientationAssignment::Convention::explicit_signs;
    for (const auto& [k, v] : j.at("signs").items()) {
        const int s = v.get<int>();
        if (s != 1 && s != -1) throw std::invalid_argument("orientation sign must be +1 or -1: " + k);
        const auto pi = parse_partition_key(k);
        o.signs[canonicalize_axes(pi, o.d).rep.key()] = s;
    }
    return o;
}

std::optional<ErrorKind> parse_error_kind(const std::string& s)
{
    for (auto k : {ErrorKind::DimensionMismatch, ErrorKind::ZeroWeightDenominator, ErrorKind::NotAPerfectSquare,
                   ErrorKind::NotConstant, ErrorKind::ShapeMismatch, ErrorKind::LimitExceeded})
        if (s == to_string(k)) return k;
    return std::nullopt;
}

namespace {

KeyConjVerdict parse_verdict(const std::string& s)
{
    for (auto v : {KeyConjVerdict::ok, KeyConjVerdict::euler_vanishes, KeyConjVerdict::violated})
        if (s == to_string(v)) return v;
    throw std::invalid_argument("unknown verdict " + s);
}

}  // namespace

WeightRecord weight_record_from_json(const json& j)
{
    WeightRecord r;
    r.pi = partition_from_json(j.at("partition"));
    r.orbit = j.value("orbit", std::uint64_t{1});
    r.fingerprint = j.at("fingerprint").get<std::uint64_t>();
    r.verdict = parse_verdict(j.at("key_conjecture").get<std::string>());
    if (j.contains("error")) {
        r.error = parse_error_kind(j.at("error").get<std::string>());
        if (!r.error) throw std::invalid_argument("unknown error kind");
        r.error_message = j.value("message", std::string{});
        return r;
    }
    r.w = form_product_from_json(j.at("w"));
    r.product = form_product_from_json(j.at("product"));
    r.specialized = specialized_from_json(j.at("specialized"));
    if (j.contains("omega"))
        r.omega = OmegaValue{rational_from_json(j["omega"].at("value")), j["omega"].at("sign").get<int>()};
    return r;
}

std::string series_table(const TruncatedSeries& s)
{
    int deg = 0;
    for (const auto& c : s.coefficients()) deg = std::max(deg, c.degree());
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> header{"q^k"};
    for (int e = 0; e <= deg; ++e) header.push_back("l^" + std::to_string(e));
    cells.push_back(header);
    for (int k = 0; k <= s.order(); ++k) {
        std::vector<std::string> row{std::to_string(k)};
        for (int e = 0; e <= deg; ++e) row.push_back(to_string(s[k].coeff(e)));
        cells.push_back(std::move(row));
    }
    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& row : cells)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    std::ostringstream os;
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c)
            os << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << row[c];
        os << "\n";
    }
    return os.str();
}

std::filesystem::path default_cache_path()
{
    if (const char* dir = std::getenv("DVERTEX_CACHE_DIR"); dir && *dir)
        return std::filesystem::path(dir) / "weights.jsonl";
    return std::filesystem::path(".dvertex-cache") / "weights.jsonl";
}

WeightCache::WeightCache(std::filesystem::path path) : path_(std::move(path))
{
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error&) {
            continue;  // torn final line from an interrupted run
        }
        const auto key = j.at("key").get<std::string>();
        if (records_.find(key) == records_.end()) order_.push_back(key);
        records_[key] = std::move(j);
    }
}

std::string WeightCache::record_key(const MultiPartition& pi, int d, const TautShift& shift)
{
    return json{{"d", d}, {"u", shift.u}, {"ell", shift.ell_multiplier}, {"pi", to_json(pi)}}.dump();
}

std::optional<WeightRecord> WeightCache::lookup(const MultiPartition& pi, int d, const TautShift& shift,
                                                std::uint64_t fingerprint) const
{
    const auto it = records_.find(record_key(pi, d, shift));
    if (it == records_.end()) return std::nullopt;
    const json& rec = it->second.at("record");
    if (rec.at("fingerprint").get<std::uint64_t>() != fingerprint) return std::nullopt;
    try {
        auto r = weight_record_from_json(rec);
        ++hits_;
        return r;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void WeightCache::store(const WeightRecord& rec, int d, const TautShift& shift)
{
    const auto key = record_key(rec.pi, d, shift);
    json line{{"key", key}, {"record", to_json(rec)}};
    const auto it = records_.find(key);
    if (it != records_.end() && it->second == line) return;
    if (it == records_.end()) order_.push_back(key);
    records_[key] = line;
    pending_.push_back(std::move(line));
}

void WeightCache::flush()
{
    if (pending_.empty()) return;
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot write cache " + path_.string());
    for (const auto& j : pending_) out << j.dump() << "\n";
    pending_.clear();
}

void WeightCache::compact()
{
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
    const auto tmp = std::filesystem::path(path_.string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write cache " + tmp.string());
        for (const auto& key : order_) out << records_.at(key).dump() << "\n";
    }
    std::filesystem::rename(tmp, path_);
    pending_.clear();
}

}  // namespace dvertex
