#include "dvertex/omega.hpp"

#include "dvertex/errors.hpp"
#include "dvertex/forms.hpp"
#include "dvertex/weights.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dvertex {

namespace {

// pi as columns along the last axis: column c holds pi_{c,1}, pi_{c,2}, ...
using Columns = std::map<Index, std::vector<int>>;

Columns columns_of(const MultiPartition& pi)
{
    Columns cols;
    const int n = pi.arity() - 1;
    for (const auto& [idx, h] : pi.entries()) {
        Index c(idx.begin(), idx.begin() + n);
        auto& col = cols[c];
        const int j = idx[n];
        if (static_cast<int>(col.size()) < j) col.resize(j, 0);
        col[j - 1] = h;
    }
    return cols;
}

MultiPartition column_lengths(const MultiPartition& pi, const Columns& cols)
{
    std::map<Index, int> e;
    for (const auto& [c, col] : cols) e[c] = static_cast<int>(col.size());
    return MultiPartition::from_entries(pi.arity() - 1, std::move(e));
}

bool descending(const MultiPartition& a, const MultiPartition& b)
{
    if (a.size() != b.size()) return a.size() > b.size();
    return a.key() > b.key();
}

struct Backtracker {
    std::vector<MultiPartition> candidates;
    Columns rem;
    Index origin;
    int remaining_size = 0;
    std::vector<int> counts;
    std::vector<OmegaDecomposition> out;

    bool subtract(const MultiPartition& xi)
    {
        for (const auto& [c, h] : xi.entries()) {
            auto it = rem.find(c);
            if (it == rem.end() || static_cast<int>(it->second.size()) < h) return false;
            const auto& col = it->second;
            if (col[h - 1] < 1) return false;
            if (h < static_cast<int>(col.size()) && col[h - 1] - 1 < col[h]) return false;
        }
        for (const auto& [c, h] : xi.entries()) {
            auto& col = rem[c];
            for (int j = 0; j < h; ++j) --col[j];
        }
        remaining_size -= xi.size();
        return true;
    }

    void add_back(const MultiPartition& xi)
    {
        for (const auto& [c, h] : xi.entries()) {
            auto& col = rem[c];
            for (int j = 0; j < h; ++j) ++col[j];
        }
        remaining_size += xi.size();
    }

    bool feasible() const
    {
        const int parts = rem.at(origin)[0];
        for (const auto& [c, col] : rem)
            if (col[0] > parts) return false;
        return true;
    }

    void run(std::size_t start)
    {
        const int parts = rem.at(origin)[0];
        if (parts == 0) {
            if (remaining_size != 0) return;
            OmegaDecomposition d;
            for (std::size_t i = 0; i < candidates.size(); ++i)
                if (counts[i]) d.parts.emplace_back(candidates[i], counts[i]);
            out.push_back(std::move(d));
            return;
        }
        for (std::size_t i = start; i < candidates.size(); ++i) {
            const int s = candidates[i].size();
            if (s > remaining_size) continue;
            if (static_cast<long>(s) * parts < remaining_size) break;  // later parts are no larger
            if (!subtract(candidates[i])) continue;
            if (feasible()) {
                ++counts[i];
                run(i);
                --counts[i];
            }
            add_back(candidates[i]);
        }
    }
};

}  // namespace

std::vector<MultiPartition> subpartitions(const MultiPartition& lambda)
{
    const int n = lambda.arity();
    std::vector<std::pair<Index, int>> slots(lambda.entries().begin(), lambda.entries().end());
    std::vector<MultiPartition> out;
    std::map<Index, int> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == slots.size()) {
            out.push_back(MultiPartition::from_entries(n, cur));
            return;
        }
        const Index& idx = slots[k].first;
        int cap = slots[k].second;
        for (int a = 0; a < n; ++a) {
            if (idx[a] == 1) continue;
            Index p = idx;
            --p[a];
            const auto it = cur.find(p);
            cap = std::min(cap, it == cur.end() ? 0 : it->second);
        }
        rec(k + 1);
        for (int h = 1; h <= cap; ++h) {
            cur[idx] = h;
            rec(k + 1);
        }
        cur.erase(idx);
    };
    rec(0);
    return out;
}

bool verify_decomposition(const MultiPartition& pi, const OmegaDecomposition& dec)
{
    const int n = pi.arity() - 1;
    std::map<Index, int> sum;
    long size = 0;
    for (const auto& [xi, m] : dec.parts) {
        if (xi.arity() != n || m < 1) return false;
        size += static_cast<long>(m) * xi.size();
        for (const auto& [c, h] : xi.entries())
            for (int j = 1; j <= h; ++j) {
                Index cell = c;
                cell.push_back(j);
                sum[cell] += m;
            }
    }
    return sum == pi.entries() && size == pi.size();
}

bool verify_slice_identity(const MultiPartition& pi, const OmegaDecomposition& dec)
{
    const Columns cols = columns_of(pi);
    std::map<Index, std::map<int, int>> exact;  // column -> (xi_c -> count)
    for (const auto& [xi, m] : dec.parts)
        for (const auto& [c, h] : xi.entries()) exact[c][h] += m;
    for (const auto& [c, byh] : exact)
        if (cols.find(c) == cols.end()) return false;
    for (const auto& [c, col] : cols) {
        const auto it = exact.find(c);
        for (int j = 1; j <= static_cast<int>(col.size()); ++j) {
            const int next = j < static_cast<int>(col.size()) ? col[j] : 0;
            int got = 0;
            if (it != exact.end()) {
                const auto jt = it->second.find(j);
                if (jt != it->second.end()) got = jt->second;
            }
            if (got != col[j - 1] - next) return false;
        }
        if (it != exact.end())
            for (const auto& [h, m] : it->second)
                if (h > static_cast<int>(col.size())) return false;
    }
    return true;
}

std::vector<OmegaDecomposition> decompositions(const MultiPartition& pi)
{
    if (pi.arity() < 1) throw std::invalid_argument("decompositions: arity must be at least 1");
    if (pi.empty()) return {OmegaDecomposition{}};
    Backtracker bt;
    bt.rem = columns_of(pi);
    bt.origin = Index(pi.arity() - 1, 1);
    bt.remaining_size = pi.size();
    for (auto& xi : subpartitions(column_lengths(pi, bt.rem)))
        if (!xi.empty()) bt.candidates.push_back(std::move(xi));
    std::sort(bt.candidates.begin(), bt.candidates.end(), descending);
    bt.counts.assign(bt.candidates.size(), 0);
    bt.run(0);
    for (const auto& d : bt.out)
        if (!verify_decomposition(pi, d)) throw std::logic_error("decompositions: cell sums do not match " + pi.key());
    return bt.out;
}

Rational omega_c(const MultiPartition& pi)
{
    Rational total = 0;
    for (const auto& d : decompositions(pi)) {
        Rational w = 1;
        for (const auto& [xi, m] : d.parts) w /= factorial(static_cast<unsigned>(m));
        total += w;
    }
    return total;
}

ExpIdentityVerdict check_exp_identity(int n, int order, int t_order, const ExecPolicy& policy)
{
    if (n < 1) throw std::invalid_argument("check_exp_identity: n must be at least 1");
    ExpIdentityVerdict v;
    TruncatedSeries full(order);
    for (int k = 0; k <= order; ++k) {
        const auto parts = enumerate_partitions(n, k);
        const auto w = map_indices<Rational>(parts.size(), [&](std::size_t i) { return omega_c(parts[i]); }, policy);
        std::vector<Rational> byh(k + 1, Rational(0));
        for (std::size_t i = 0; i < parts.size(); ++i) byh[parts[i].corner_height()] += w[i];
        full[k] = QPoly(std::move(byh));
    }
    const TruncatedSeries m = m_series(n - 1, order);
    TruncatedSeries arg(order);
    for (int k = 1; k <= order; ++k) arg[k] = m[k] * QPoly::variable();
    v.lhs = full.truncate_ell(t_order);
    v.rhs = series_exp(arg).truncate_ell(t_order);
    v.equal = v.lhs == v.rhs;
    TruncatedSeries arg1(order);
    for (int k = 1; k <= order; ++k) arg1[k] = m[k];
    v.lhs_t1 = full.at_ell(1);
    v.rhs_t1 = series_exp(arg1);
    v.t1_equal = v.lhs_t1 == v.rhs_t1;
    return v;
}

OmegaComparison compare_omegas(const MultiPartition& pi, int d, const OrientationAssignment* orientation)
{
    const WeightRecord r = compute_weight(pi, d, TautShift::symbolic(d));
    if (r.error) throw PipelineError(*r.error, pi.key() + ": " + r.error_message);
    if (!r.omega) throw PipelineError(ErrorKind::ShapeMismatch, pi.key() + ": no omega");
    OmegaComparison c;
    c.omega = r.omega->omega;
    c.sign = r.omega->sign;
    c.omega_c = omega_c(pi);
    c.match = c.omega == c.omega_c;
    const int s = orientation ? orientation->sign(pi) : 1;
    c.signed_match = c.match && s * c.sign == 1;
    return c;
}

std::vector<OmegaRow> omega_rows(int d, int order, bool geometric, const ExecPolicy& policy)
{
    std::vector<OrbitClass> classes;
    for (int k = 0; k <= order; ++k)
        for (auto& c : canonical_classes(d - 1, k)) classes.push_back(std::move(c));
    return map_indices<OmegaRow>(
        classes.size(),
        [&](std::size_t i) {
            OmegaRow row;
            row.pi = classes[i].rep;
            row.orbit = classes[i].orbit;
            row.omega_c = omega_c(row.pi);
            if (geometric) {
                const WeightRecord r = compute_weight(row.pi, d, TautShift::symbolic(d));
                if (r.error)
                    row.error = r.error_message;
                else if (r.omega)
                    row.omega = r.omega->omega;
            }
            return row;
        },
        policy);
}

std::string omega_csv(const std::vector<OmegaRow>& rows)
{
    auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return q + "\"";
    };
    std::ostringstream os;
    os << "key,size,corner_height,omega_c,omega\n";
    for (const auto& r : rows) {
        os << quote(r.pi.key()) << "," << r.pi.size() << "," << r.pi.corner_height() << "," << to_string(r.omega_c)
           << ",";
        if (r.omega)
            os << to_string(*r.omega);
        else if (!r.error.empty())
            os << quote(r.error);
        os << "\n";
    }
    return os.str();
}

}  // namespace dvertex
