#pragma once

#include "dvertex/forms.hpp"
#include "dvertex/kclass.hpp"
#include "dvertex/orientation.hpp"
#include "dvertex/partition.hpp"
#include "dvertex/rational.hpp"
#include "dvertex/series.hpp"
#include "dvertex/weights.hpp"

#include <json.hpp>

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace dvertex {

using json = nlohmann::ordered_json;

json to_json(const Rational& q);
json to_json(const QPoly& p);
json to_json(const MultiPartition& pi);
json to_json(const KClass& k);
json to_json(const LinearForm& f);
json to_json(const FormProduct& p);
json to_json(const SpecializedValue& v);
json to_json(const TruncatedSeries& s);
json to_json(const OrientationAssignment& o);
json to_json(const WeightRecord& r);

Rational rational_from_json(const json& j);
QPoly qpoly_from_json(const json& j);
MultiPartition partition_from_json(const json& j);
FormProduct form_product_from_json(const json& j);
SpecializedValue specialized_from_json(const json& j);
OrientationAssignment orientation_from_json(const json& j);
WeightRecord weight_record_from_json(const json& j);

std::optional<ErrorKind> parse_error_kind(const std::string& s);

/// Aligned text table: one row per q-order, one column per l-degree.
std::string series_table(const TruncatedSeries& s);

/// $DVERTEX_CACHE_DIR/weights.jsonl, or ./.dvertex-cache/weights.jsonl.
std::filesystem::path default_cache_path();

/// JSON-lines store of weight records keyed by (d, shift, partition key).
/// Later lines override earlier ones. Lookups re-check the vertex fingerprint,
/// so a stale record is ignored and recomputed. Lookups are safe to run
/// concurrently; store and flush must come from a single thread.
class WeightCache {
public:
    explicit WeightCache(std::filesystem::path path);

    std::optional<WeightRecord> lookup(const MultiPartition& pi, int d, const TautShift& shift,
                                       std::uint64_t fingerprint) const;
    void store(const WeightRecord& rec, int d, const TautShift& shift);
    /// Appends pending records to the file.
    void flush();
    /// Rewrites the file with one line per live key.
    void compact();

    std::size_t size() const { return records_.size(); }
    std::size_t hits() const { return hits_; }
    const std::filesystem::path& path() const { return path_; }

    static std::string record_key(const MultiPartition& pi, int d, const TautShift& shift);

private:
    std::filesystem::path path_;
    std::unordered_map<std::string, json> records_;
    std::vector<std::string> order_;
    std::vector<json> pending_;
    mutable std::atomic<std::size_t> hits_{0};
};

}  // namespace dvertex
