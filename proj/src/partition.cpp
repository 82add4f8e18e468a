#include "dvertex/partition.hpp"

#include "dvertex/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dvertex {

MultiPartition::MultiPartition(int arity) : arity_(arity)
{
    if (arity < 0) throw std::invalid_argument("negative arity");
}

MultiPartition MultiPartition::from_entries(int arity, std::map<Index, int> entries)
{
    std::string why;
    if (!is_valid_partition(arity, entries, &why)) throw std::invalid_argument("invalid partition: " + why);
    MultiPartition p(arity);
    p.entries_ = std::move(entries);
    for (const auto& [i, h] : p.entries_) p.size_ += h;
    return p;
}

int MultiPartition::height(const Index& i) const
{
    auto it = entries_.find(i);
    return it == entries_.end() ? 0 : it->second;
}

int MultiPartition::corner_height() const { return height(Index(arity_, 1)); }

std::vector<Cell> MultiPartition::cells() const
{
    std::vector<Cell> out;
    out.reserve(size_);
    for (const auto& [i, h] : entries_) {
        for (int m = 0; m < h; ++m) {
            Cell c(arity_ + 1);
            for (int k = 0; k < arity_; ++k) c[k] = i[k] - 1;
            c[arity_] = m;
            out.push_back(std::move(c));
        }
    }
    return out;
}

std::vector<int> MultiPartition::flatten() const
{
    std::vector<int> out;
    out.reserve(entries_.size() * (arity_ + 1));
    for (const auto& [i, h] : entries_) {
        out.insert(out.end(), i.begin(), i.end());
        out.push_back(h);
    }
    return out;
}

std::string MultiPartition::key() const
{
    std::ostringstream os;
    os << "{\"arity\":" << arity_ << ",\"entries\":[";
    bool first = true;
    for (const auto& [i, h] : entries_) {
        os << (first ? "" : ",") << "[";
        first = false;
        for (int k = 0; k < arity_; ++k) os << i[k] << ",";
        os << h << "]";
    }
    os << "]}";
    return os.str();
}

MultiPartition MultiPartition::permuted(std::span<const int> perm) const
{
    if (static_cast<int>(perm.size()) != arity_) throw std::invalid_argument("permutation length");
    MultiPartition p(arity_);
    p.size_ = size_;
    for (const auto& [i, h] : entries_) {
        Index j(arity_);
        for (int k = 0; k < arity_; ++k) j[k] = i[perm[k]];
        p.entries_.emplace(std::move(j), h);
    }
    return p;
}

std::vector<int> MultiPartition::used_axes() const
{
    std::vector<int> axes;
    for (int k = 0; k < arity_; ++k) {
        bool used = std::any_of(entries_.begin(), entries_.end(), [k](const auto& e) { return e.first[k] > 1; });
        if (used) axes.push_back(k);
    }
    return axes;
}

std::strong_ordering operator<=>(const MultiPartition& a, const MultiPartition& b)
{
    if (a.arity_ != b.arity_) return a.arity_ <=> b.arity_;
    return a.flatten() <=> b.flatten();
}

bool is_valid_partition(int arity, const std::map<Index, int>& entries, std::string* why)
{
    auto fail = [why](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (arity < 0) return fail("negative arity");
    for (const auto& [i, h] : entries) {
        if (static_cast<int>(i.size()) != arity) return fail("index length differs from arity");
        if (h <= 0) return fail("non-positive height stored");
        for (int x : i)
            if (x < 1) return fail("indices are 1-based");
        for (int k = 0; k < arity; ++k) {
            if (i[k] == 1) continue;
            Index pred = i;
            --pred[k];
            auto it = entries.find(pred);
            if (it == entries.end() || it->second < h) return fail("not monotone along axis " + std::to_string(k + 1));
        }
    }
    return true;
}

MultiPartition parse_partition_key(const std::string& text)
{
    auto j = nlohmann::json::parse(text);
    int arity = j.at("arity").get<int>();
    std::map<Index, int> entries;
    for (const auto& row : j.at("entries")) {
        auto v = row.get<std::vector<int>>();
        if (static_cast<int>(v.size()) != arity + 1) throw std::invalid_argument("entry length");
        entries[Index(v.begin(), v.end() - 1)] = v.back();
    }
    return MultiPartition::from_entries(arity, std::move(entries));
}

namespace {

// Index tuples with product of coordinates <= bound, in lexicographic order.
// Any box of a partition of size <= bound lies among them.
std::vector<Index> candidate_indices(int arity, int bound)
{
    std::vector<Index> out;
    Index cur(arity, 1);
    std::function<void(int, int)> rec = [&](int k, int prod) {
        if (k == arity) {
            out.push_back(cur);
            return;
        }
        for (int v = 1; prod * v <= bound; ++v) {
            cur[k] = v;
            rec(k + 1, prod * v);
        }
        cur[k] = 1;
    };
    if (bound >= 1) rec(0, 1);
    return out;
}

}  // namespace

std::vector<MultiPartition> enumerate_partitions(int arity, int size)
{
    if (arity < 0 || size < 0) throw std::invalid_argument("arity and size must be non-negative");
    if (size == 0) return {MultiPartition(arity)};

    const std::vector<Index> cand = candidate_indices(arity, size);
    std::map<Index, int> position;
    for (std::size_t p = 0; p < cand.size(); ++p) position[cand[p]] = static_cast<int>(p);
    // Lexicographic order lists every predecessor i - e_k before i.
    std::vector<std::vector<int>> preds(cand.size());
    for (std::size_t p = 0; p < cand.size(); ++p) {
        for (int k = 0; k < arity; ++k) {
            if (cand[p][k] == 1) continue;
            Index q = cand[p];
            --q[k];
            preds[p].push_back(position.at(q));
        }
    }

    std::vector<int> h(cand.size(), 0);
    std::vector<MultiPartition> out;
    std::function<void(std::size_t, int)> rec = [&](std::size_t p, int remaining) {
        if (remaining == 0) {
            MultiPartition mp(arity);
            std::map<Index, int> entries;
            for (std::size_t q = 0; q < p; ++q)
                if (h[q] > 0) entries.emplace(cand[q], h[q]);
            out.push_back(MultiPartition::from_entries(arity, std::move(entries)));
            return;
        }
        if (p == cand.size()) return;
        int bound = remaining;
        for (int q : preds[p]) bound = std::min(bound, h[q]);
        for (int v = bound; v >= 1; --v) {
            h[p] = v;
            rec(p + 1, remaining - v);
        }
        h[p] = 0;
        rec(p + 1, remaining);
    };
    rec(0, size);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::uint64_t> count_partitions(int arity, int max_size)
{
    std::vector<std::uint64_t> counts;
    for (int n = 0; n <= max_size; ++n) counts.push_back(enumerate_partitions(arity, n).size());
    return counts;
}

KClass character(const MultiPartition& pi, int d)
{
    if (pi.arity() != d - 1)
        throw PipelineError(ErrorKind::DimensionMismatch,
                            "partition arity " + std::to_string(pi.arity()) + " for dimension " + std::to_string(d));
    std::vector<KClass::Term> raw;
    raw.reserve(pi.size());
    for (const Cell& c : pi.cells()) raw.emplace_back(make_exponent(c), 1);
    return KClass::from_terms(d, std::move(raw));
}

std::vector<int> canonical_order_key(const MultiPartition& pi)
{
    std::vector<std::vector<int>> rows;
    rows.reserve(pi.entries().size());
    for (const auto& [i, h] : pi.entries()) {
        std::vector<int> r;
        r.reserve(i.size() + 1);
        for (int x : i) r.push_back(-x);
        r.push_back(h);
        rows.push_back(std::move(r));
    }
    std::sort(rows.begin(), rows.end());
    std::vector<int> key;
    for (auto& r : rows) key.insert(key.end(), r.begin(), r.end());
    return key;
}

namespace {

// Calls visit(perm) once per placement of the used axes into distinct positions;
// the unused axes fill the remaining positions in increasing order. Every distinct
// image of pi under axis permutation arises from at least one such placement.
void for_each_placement(const MultiPartition& pi, const std::function<void(const std::vector<int>&)>& visit)
{
    const int n = pi.arity();
    const std::vector<int> used = pi.used_axes();
    std::vector<int> unused;
    for (int k = 0; k < n; ++k)
        if (std::find(used.begin(), used.end(), k) == used.end()) unused.push_back(k);

    std::vector<int> perm(n, -1);
    std::function<void(std::size_t)> rec = [&](std::size_t u) {
        if (u == used.size()) {
            std::vector<int> full = perm;
            std::size_t next = 0;
            for (int k = 0; k < n; ++k)
                if (full[k] < 0) full[k] = unused[next++];
            visit(full);
            return;
        }
        for (int pos = 0; pos < n; ++pos) {
            if (perm[pos] >= 0) continue;
            perm[pos] = used[u];
            rec(u + 1);
            perm[pos] = -1;
        }
    };
    rec(0);
}

}  // namespace

CanonicalForm canonicalize_axes(const MultiPartition& pi, int d)
{
    if (pi.arity() != d - 1)
        throw PipelineError(ErrorKind::DimensionMismatch, "canonicalize_axes: arity does not match d - 1");
    std::vector<int> identity(pi.arity());
    for (int k = 0; k < pi.arity(); ++k) identity[k] = k;
    CanonicalForm best{pi, identity};
    std::vector<int> best_key = canonical_order_key(pi);
    for_each_placement(pi, [&](const std::vector<int>& perm) {
        MultiPartition img = pi.permuted(perm);
        std::vector<int> key = canonical_order_key(img);
        if (key < best_key) {
            best_key = std::move(key);
            best = CanonicalForm{std::move(img), perm};
        }
    });
    return best;
}

std::uint64_t orbit_size(const MultiPartition& pi)
{
    std::set<std::vector<int>> images;
    for_each_placement(pi, [&](const std::vector<int>& perm) { images.insert(pi.permuted(perm).flatten()); });
    return images.size();
}

std::vector<OrbitClass> canonical_classes(int arity, int size)
{
    std::map<MultiPartition, std::uint64_t> reps;
    for (const auto& p : enumerate_partitions(arity, size)) {
        ++reps[canonicalize_axes(p, arity + 1).rep];
    }
    std::vector<OrbitClass> out;
    out.reserve(reps.size());
    for (auto& [rep, count] : reps) out.push_back({rep, count});
    return out;
}

int binary_rep_contains(const MultiPartition& xi, std::span<const int> cell)
{
    const int n = xi.arity();
    if (static_cast<int>(cell.size()) != n + 1) throw std::invalid_argument("binary_rep_contains: cell length");
    Index base(cell.begin(), cell.begin() + n);
    return cell[n] <= xi.height(base) ? 1 : 0;
}

}  // namespace dvertex
