#include "dvertex/kclass.hpp"

#include "dvertex/errors.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace dvertex {

std::size_t ExponentHash::operator()(const Exponent& e) const noexcept
{
    std::uint64_t h = 1469598103934665603ULL;
    for (auto x : e) {
        h ^= static_cast<std::uint16_t>(x);
        h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
}

Exponent make_exponent(const std::vector<int>& w)
{
    if (w.size() > static_cast<std::size_t>(kMaxDim))
        throw std::invalid_argument("dimension exceeds kMaxDim");
    Exponent e{};
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] > std::numeric_limits<std::int16_t>::max() || w[i] < std::numeric_limits<std::int16_t>::min())
            throw std::overflow_error("exponent out of 16-bit range");
        e[i] = static_cast<std::int16_t>(w[i]);
    }
    return e;
}

std::vector<int> exponent_vector(const Exponent& e, int dim) { return {e.begin(), e.begin() + dim}; }

namespace {

void require_same_dim(const KClass& a, const KClass& b)
{
    if (a.dim() != b.dim())
        throw PipelineError(ErrorKind::DimensionMismatch,
                            "KClass dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
}

std::vector<KClass::Term> merge(const std::vector<KClass::Term>& a, const std::vector<KClass::Term>& b, int sign)
{
    std::vector<KClass::Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, sign * b[j].second);
            ++j;
        } else {
            std::int64_t c = a[i].second + sign * b[j].second;
            if (c != 0) out.emplace_back(a[i].first, c);
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

KClass::KClass(int dim) : dim_(dim)
{
    if (dim < 0 || dim > kMaxDim) throw std::invalid_argument("unsupported dimension");
}

KClass KClass::constant(int dim, std::int64_t c)
{
    KClass k(dim);
    if (c != 0) k.terms_.emplace_back(Exponent{}, c);
    return k;
}

KClass KClass::monomial(int dim, const std::vector<int>& exponent, std::int64_t c)
{
    if (static_cast<int>(exponent.size()) != dim)
        throw PipelineError(ErrorKind::DimensionMismatch, "monomial exponent length");
    KClass k(dim);
    if (c != 0) k.terms_.emplace_back(make_exponent(exponent), c);
    return k;
}

KClass KClass::from_terms(int dim, std::vector<Term> raw)
{
    KClass k(dim);
    k.normalize(std::move(raw));
    return k;
}

KClass KClass::one_minus_product(int dim, int k)
{
    KClass p = constant(dim, 1);
    for (int i = 0; i < k; ++i) {
        std::vector<int> w(dim, 0);
        w[i] = 1;
        p = p * (constant(dim, 1) - monomial(dim, w));
    }
    return p;
}

std::int64_t KClass::coefficient(const Exponent& e) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const Exponent& x) { return t.first < x; });
    return (it != terms_.end() && it->first == e) ? it->second : 0;
}

KClass KClass::operator-() const
{
    KClass r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

KClass& KClass::operator+=(const KClass& o)
{
    require_same_dim(*this, o);
    terms_ = merge(terms_, o.terms_, 1);
    return *this;
}

KClass& KClass::operator-=(const KClass& o)
{
    require_same_dim(*this, o);
    terms_ = merge(terms_, o.terms_, -1);
    return *this;
}

KClass operator*(const KClass& a, const KClass& b)
{
    require_same_dim(a, b);
    std::unordered_map<Exponent, std::int64_t, ExponentHash> acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            Exponent e{};
            for (int i = 0; i < a.dim_; ++i) e[i] = static_cast<std::int16_t>(ea[i] + eb[i]);
            acc[e] += ca * cb;
        }
    }
    KClass r(a.dim_);
    r.normalize({acc.begin(), acc.end()});
    return r;
}

KClass KClass::shifted(const std::vector<int>& shift) const
{
    if (static_cast<int>(shift.size()) != dim_)
        throw PipelineError(ErrorKind::DimensionMismatch, "shift length");
    KClass r(dim_);
    r.terms_ = terms_;
    for (auto& t : r.terms_)
        for (int i = 0; i < dim_; ++i) t.first[i] = static_cast<std::int16_t>(t.first[i] + shift[i]);
    // a uniform shift preserves lexicographic order
    return r;
}

void KClass::normalize(std::vector<Term>&& raw)
{
    std::sort(raw.begin(), raw.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    terms_.clear();
    terms_.reserve(raw.size());
    for (auto& t : raw) {
        if (!terms_.empty() && terms_.back().first == t.first) terms_.back().second += t.second;
        else terms_.push_back(t);
    }
    std::erase_if(terms_, [](const Term& t) { return t.second == 0; });
}

std::string KClass::serialize() const
{
    std::ostringstream os;
    os << "[";
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << ",";
        first = false;
        os << "[[";
        for (int i = 0; i < dim_; ++i) os << (i ? "," : "") << e[i];
        os << "]," << c << "]";
    }
    os << "]";
    return os.str();
}

std::string KClass::to_string() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        bool constant = std::all_of(e.begin(), e.begin() + dim_, [](auto x) { return x == 0; });
        std::int64_t mag = c < 0 ? -c : c;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        if (mag != 1 || constant) os << mag;
        bool star = mag != 1;
        for (int i = 0; i < dim_; ++i) {
            if (e[i] == 0) continue;
            os << (star ? "*" : "") << "t" << (i + 1);
            if (e[i] != 1) os << "^" << e[i];
            star = true;
        }
    }
    return os.str();
}

KClass k_add(const KClass& a, const KClass& b) { return a + b; }
KClass k_sub(const KClass& a, const KClass& b) { return a - b; }
KClass k_mul(const KClass& a, const KClass& b) { return a * b; }

KClass k_bar(const KClass& a)
{
    std::vector<KClass::Term> raw = a.terms();
    for (auto& t : raw)
        for (int i = 0; i < a.dim(); ++i) t.first[i] = static_cast<std::int16_t>(-t.first[i]);
    return KClass::from_terms(a.dim(), std::move(raw));
}

KClass cy_reduce(const KClass& a)
{
    const int d = a.dim();
    if (d == 0) return a;
    std::vector<KClass::Term> raw;
    raw.reserve(a.terms().size());
    for (const auto& [e, c] : a.terms()) {
        Exponent r{};
        for (int i = 0; i < d; ++i) r[i] = static_cast<std::int16_t>(e[i] - e[d - 1]);
        raw.emplace_back(r, c);
    }
    return KClass::from_terms(d, std::move(raw));
}

std::int64_t cy_rank(const KClass& a)
{
    std::int64_t s = 0;
    for (const auto& t : a.terms()) s += t.second;
    return s;
}

std::int64_t cy_fixed_part(const KClass& a) { return cy_reduce(a).coefficient(Exponent{}); }

std::uint64_t fingerprint(const KClass& a)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : a.serialize()) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace dvertex
