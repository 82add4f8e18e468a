#include "dvertex/weights.hpp"

#include "dvertex/io.hpp"

#include <algorithm>

namespace dvertex {

namespace {

WeightRecord finish_weight(const MultiPartition& pi, int d, const TautShift& shift, const KClass& v, WeightRecord rec)
{
    try {
        const std::int64_t c = cy_fixed_part(v);
        rec.verdict = c == 0 ? KeyConjVerdict::ok : (c < 0 ? KeyConjVerdict::euler_vanishes : KeyConjVerdict::violated);
        rec.w = sqrt_form_product(euler_class(-v, true), pi.size());
        rec.product = taut_factor(pi, d, shift) * rec.w;
        rec.specialized = specialize(rec.product);
        if (shift.ell_multiplier != 0) rec.omega = omega_from_specialized(rec.specialized, pi);
    } catch (const PipelineError& e) {
        rec.error = e.kind();
        rec.error_message = e.what();
    }
    return rec;
}

}  // namespace

WeightRecord compute_weight(const MultiPartition& pi, int d, const TautShift& shift)
{
    WeightRecord rec;
    rec.pi = pi;
    const KClass v = vertex(pi, d);
    rec.fingerprint = fingerprint(v);
    return finish_weight(pi, d, shift, v, std::move(rec));
}

const WeightRecord* WeightTable::first_error() const
{
    for (const auto& row : by_size)
        for (const auto& r : row)
            if (!r.ok()) return &r;
    return nullptr;
}

bool shift_is_axis_symmetric(const TautShift& shift)
{
    if (shift.u.size() < 2) return true;
    return std::all_of(shift.u.begin(), shift.u.end() - 1, [&](int x) { return x == shift.u[0]; });
}

WeightTable build_weight_table(int d, int order, const TautShift& shift, const ExecPolicy& policy, WeightCache* cache)
{
    WeightTable table;
    table.d = d;
    table.order = order;
    table.shift = shift;
    table.by_orbit = shift_is_axis_symmetric(shift);
    for (int n = 0; n <= order; ++n) {
        std::vector<OrbitClass> items;
        if (table.by_orbit) {
            items = canonical_classes(d - 1, n);
        } else {
            for (auto& p : enumerate_partitions(d - 1, n)) items.push_back({std::move(p), 1});
        }
        auto kernel = [&](std::size_t i) {
            const MultiPartition& pi = items[i].rep;
            const KClass v = vertex(pi, d);
            WeightRecord rec;
            rec.pi = pi;
            rec.fingerprint = fingerprint(v);
            if (cache) {
                if (auto hit = cache->lookup(pi, d, shift, rec.fingerprint)) {
                    hit->orbit = items[i].orbit;
                    return *hit;
                }
            }
            rec = finish_weight(pi, d, shift, v, std::move(rec));
            rec.orbit = items[i].orbit;
            return rec;
        };
        auto row = map_indices<WeightRecord>(items.size(), kernel, policy);
        if (cache)
            for (const auto& r : row) cache->store(r, d, shift);
        table.by_size.push_back(std::move(row));
    }
    if (cache) cache->flush();
    return table;
}

std::vector<OddRecord> compute_odd_ratios(int d, int size, const ExecPolicy& policy)
{
    const auto parts = enumerate_partitions(d - 1, size);
    return map_indices<OddRecord>(
        parts.size(),
        [&](std::size_t i) {
            OddRecord rec;
            rec.pi = parts[i];
            rec.verdict = check_key_conjecture(parts[i], d);
            try {
                rec.ratio = euler_ratio_odd(parts[i], d);
            } catch (const PipelineError& e) {
                rec.error = e.kind();
                rec.error_message = e.what();
            }
            return rec;
        },
        policy);
}

std::vector<KeyConjRecord> key_conjecture_sweep(int d, int max_size, const ExecPolicy& policy)
{
    std::vector<MultiPartition> parts;
    for (int n = 0; n <= max_size; ++n)
        for (auto& p : enumerate_partitions(d - 1, n)) parts.push_back(std::move(p));
    return map_indices<KeyConjRecord>(
        parts.size(),
        [&](std::size_t i) {
            KeyConjRecord rec;
            rec.pi = parts[i];
            rec.fixed_part = cy_fixed_part(vertex(parts[i], d));
            rec.verdict = rec.fixed_part == 0 ? KeyConjVerdict::ok
                                              : (rec.fixed_part < 0 ? KeyConjVerdict::euler_vanishes : KeyConjVerdict::violated);
            return rec;
        },
        policy);
}

}  // namespace dvertex
