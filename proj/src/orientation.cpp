#include "dvertex/orientation.hpp"

#include "dvertex/errors.hpp"
#include "dvertex/series.hpp"

#include <algorithm>
#include <functional>

namespace dvertex {

int OrientationAssignment::sign(const MultiPartition& pi) const
{
    const auto it = signs.find(canonicalize_axes(pi, d).rep.key());
    return it == signs.end() ? 1 : it->second;
}

OrientationAssignment positive_omega_orientation(const WeightTable& table)
{
    OrientationAssignment o;
    o.d = table.d;
    o.convention = OrientationAssignment::Convention::positive_omega;
    for (const auto& row : table.by_size)
        for (const auto& r : row) {
            if (r.error) throw PipelineError(*r.error, r.pi.key() + ": " + r.error_message);
            if (!r.omega) throw PipelineError(ErrorKind::ShapeMismatch, r.pi.key() + ": no omega for this shift");
            o.signs[canonicalize_axes(r.pi, table.d).rep.key()] = r.omega->sign;
        }
    return o;
}

OrientationAssignment positive_omega_orientation(int d, int order, const ExecPolicy& policy)
{
    return positive_omega_orientation(build_weight_table(d, order, TautShift::symbolic(d), policy));
}

const char* to_string(UniquenessVerdict::Kind k)
{
    switch (k) {
    case UniquenessVerdict::Kind::unique: return "unique";
    case UniquenessVerdict::Kind::alternative_found: return "alternative_found";
    case UniquenessVerdict::Kind::limit_exceeded: return "limit_exceeded";
    }
    return "unknown";
}

namespace {

struct Item {
    std::string key;
    QPoly value;  // orbit * sign * specialized weight
};

struct LevelSearch {
    std::vector<std::vector<const Item*>> levels;  // by degree, descending
    std::vector<int> degrees;
    std::size_t cap;
    std::size_t examined = 0;
    bool limit = false;
    std::vector<const Item*> chosen;

    // Chooses a subset of every level so that, once all items of degree >= delta are
    // fixed, the delta coefficient of the flipped sum is zero.
    bool solve(std::size_t li, const QPoly& partial)
    {
        if (li == levels.size()) return !chosen.empty() && partial.is_zero();
        const int delta = degrees[li];
        if (partial.degree() > delta) return false;  // a coefficient above delta is already final
        const Rational c = partial.coeff(delta);
        const auto& level = levels[li];
        const bool same_sign = std::all_of(level.begin(), level.end(), [&](const Item* it) {
            return sgn(it->value.leading()) == sgn(level.front()->value.leading());
        });
        if (same_sign) {
            const int s = sgn(level.front()->value.leading());
            if (c == 0) return solve(li + 1, partial);  // only the empty subset
            if (sgn(c) == s) return false;
        }
        std::vector<const Item*> pick;
        std::function<bool(std::size_t, Rational, QPoly)> rec = [&](std::size_t i, Rational acc, QPoly sum) -> bool {
            if (limit) return false;
            if (i == level.size()) {
                if (!pick.empty() && ++examined > cap) {
                    limit = true;
                    return false;
                }
                if (acc != 0) return false;
                const std::size_t mark = chosen.size();
                chosen.insert(chosen.end(), pick.begin(), pick.end());
                if (solve(li + 1, sum)) return true;
                chosen.resize(mark);
                return false;
            }
            if (rec(i + 1, acc, sum)) return true;
            pick.push_back(level[i]);
            const bool found = rec(i + 1, acc + level[i]->value.leading(), sum + level[i]->value);
            pick.pop_back();
            return found;
        };
        return rec(0, c, partial);
    }
};

}  // namespace

UniquenessVerdict verify_uniqueness(const WeightTable& table, const OrientationAssignment& orientation, std::size_t cap)
{
    UniquenessVerdict out;
    for (int n = 1; n <= table.order; ++n) {
        std::vector<Item> items;
        for (const auto& r : table.by_size[n]) {
            if (r.error) throw PipelineError(*r.error, r.pi.key() + ": " + r.error_message);
            if (!r.specialized.ok()) throw PipelineError(ErrorKind::NotConstant, r.pi.key() + ": " + r.specialized.detail);
            items.push_back({r.pi.key(), r.oriented_value(orientation.sign(r.pi)) *
                                             Rational(static_cast<unsigned long>(r.orbit))});
        }
        for (const auto& it : items)
            if (it.value.is_zero()) {
                out.kind = UniquenessVerdict::Kind::alternative_found;
                out.order = n;
                out.flipped = {it.key};
                out.detail = "zero weight: its sign is free";
                return out;
            }
        LevelSearch search;
        search.cap = cap;
        std::vector<int> degs;
        for (const auto& it : items) degs.push_back(it.value.degree());
        std::sort(degs.begin(), degs.end(), std::greater<>());
        degs.erase(std::unique(degs.begin(), degs.end()), degs.end());
        search.degrees = degs;
        for (int dg : degs) {
            std::vector<const Item*> level;
            for (const auto& it : items)
                if (it.value.degree() == dg) level.push_back(&it);
            search.levels.push_back(std::move(level));
        }
        const bool found = search.solve(0, QPoly());
        out.subsets_examined += search.examined;
        if (found) {
            out.kind = UniquenessVerdict::Kind::alternative_found;
            out.order = n;
            for (const Item* it : search.chosen) out.flipped.push_back(it->key);
            out.detail = "flipping these signs leaves q^" + std::to_string(n) + " unchanged";
            return out;
        }
        if (search.limit) {
            out.kind = UniquenessVerdict::Kind::limit_exceeded;
            out.order = n;
            out.detail = "subset cap reached at q^" + std::to_string(n);
            return out;
        }
    }
    out.order = table.order;
    out.detail = "every non-empty flip changes some coefficient up to q^" + std::to_string(table.order);
    return out;
}

UniquenessVerdict verify_uniqueness(int d, int order, const ExecPolicy& policy, std::size_t cap)
{
    const WeightTable table = build_weight_table(d, order, TautShift::symbolic(d), policy);
    const OrientationAssignment o = positive_omega_orientation(table);
    const TruncatedSeries target = series_pow_ell(m_series(d - 2, order).negate_q(), order);
    if (!(build_z_4k(table, o) == target))
        throw PipelineError(ErrorKind::ShapeMismatch, "verify_uniqueness: positive orientation misses the target series");
    return verify_uniqueness(table, o, cap);
}

}  // namespace dvertex
