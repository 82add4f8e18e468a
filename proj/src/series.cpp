#include "dvertex/series.hpp"

#include "dvertex/errors.hpp"
#include "dvertex/partition.hpp"
#include "dvertex/vertex.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace dvertex {

TruncatedSeries::TruncatedSeries(int order) : order_(order), c_(order + 1)
{
    if (order < 0) throw std::invalid_argument("TruncatedSeries: negative order");
}

TruncatedSeries::TruncatedSeries(int order, std::vector<QPoly> coefficients) : TruncatedSeries(order)
{
    for (std::size_t k = 0; k < coefficients.size() && k <= static_cast<std::size_t>(order); ++k)
        c_[k] = std::move(coefficients[k]);
}

TruncatedSeries TruncatedSeries::one(int order)
{
    TruncatedSeries s(order);
    s.c_[0] = QPoly(1);
    return s;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o)
{
    if (o.order_ < order_) *this = truncated(o.order_);
    for (int k = 0; k <= order_; ++k) c_[k] += o.c_[k];
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o)
{
    if (o.order_ < order_) *this = truncated(o.order_);
    for (int k = 0; k <= order_; ++k) c_[k] -= o.c_[k];
    return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b)
{
    const int n = std::min(a.order_, b.order_);
    TruncatedSeries out(n);
    for (int i = 0; i <= n; ++i) {
        if (a.c_[i].is_zero()) continue;
        for (int j = 0; i + j <= n; ++j)
            if (!b.c_[j].is_zero()) out.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return out;
}

TruncatedSeries& TruncatedSeries::operator*=(const QPoly& s)
{
    for (auto& c : c_) c *= s;
    return *this;
}

TruncatedSeries TruncatedSeries::negate_q() const
{
    TruncatedSeries out = *this;
    for (int k = 1; k <= order_; k += 2) out.c_[k] = -out.c_[k];
    return out;
}

TruncatedSeries TruncatedSeries::at_ell(const Rational& x) const
{
    TruncatedSeries out(order_);
    for (int k = 0; k <= order_; ++k) out.c_[k] = QPoly(c_[k](x));
    return out;
}

TruncatedSeries TruncatedSeries::truncate_ell(int max_degree) const
{
    TruncatedSeries out(order_);
    for (int k = 0; k <= order_; ++k) out.c_[k] = c_[k].truncated(max_degree);
    return out;
}

TruncatedSeries TruncatedSeries::truncated(int order) const
{
    if (order > order_) throw std::invalid_argument("TruncatedSeries::truncated: order exceeds precision");
    return TruncatedSeries(order, std::vector<QPoly>(c_.begin(), c_.begin() + order + 1));
}

std::string TruncatedSeries::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k <= order_; ++k) {
        if (c_[k].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c_[k].to_string() << ")";
        if (k) os << "*q^" << k;
    }
    if (first) os << "0";
    os << " + O(q^" << order_ + 1 << ")";
    return os.str();
}

TruncatedSeries series_exp(const TruncatedSeries& s)
{
    if (!s[0].is_zero()) throw std::invalid_argument("series_exp: constant term must vanish");
    const int n = s.order();
    TruncatedSeries b(n);
    b[0] = QPoly(1);
    for (int m = 1; m <= n; ++m) {
        QPoly acc;
        for (int k = 1; k <= m; ++k)
            if (!s[k].is_zero()) acc += s[k] * b[m - k] * Rational(k);
        b[m] = acc * Rational(1, m);
    }
    return b;
}

TruncatedSeries series_log(const TruncatedSeries& s)
{
    if (s[0] != QPoly(1)) throw std::invalid_argument("series_log: constant term must be 1");
    const int n = s.order();
    TruncatedSeries b(n);
    for (int m = 1; m <= n; ++m) {
        QPoly acc;
        for (int k = 1; k < m; ++k)
            if (!b[k].is_zero() && !s[m - k].is_zero()) acc += b[k] * s[m - k] * Rational(k);
        b[m] = s[m] - acc * Rational(1, m);
    }
    return b;
}

TruncatedSeries series_pow(const TruncatedSeries& m, const QPoly& exponent)
{
    TruncatedSeries l = series_log(m);
    l *= exponent;
    return series_exp(l);
}

TruncatedSeries series_pow_ell(const TruncatedSeries& m, int order)
{
    return series_pow(m.truncated(order), QPoly::variable());
}

TruncatedSeries m_series(int n, int order)
{
    if (n < 0) throw std::invalid_argument("m_series: negative arity");
    const auto counts = count_partitions(n, order);
    TruncatedSeries s(order);
    for (int k = 0; k <= order; ++k) s[k] = QPoly(Rational(static_cast<unsigned long>(counts[k])));
    return s;
}

TruncatedSeries build_z_odd(int d, int order, const ExecPolicy& policy)
{
    if (d % 2 == 0) throw PipelineError(ErrorKind::DimensionMismatch, "build_z_odd: d must be odd");
    TruncatedSeries z(order);
    for (int n = 0; n <= order; ++n) {
        Rational sum = 0;
        for (const auto& r : compute_odd_ratios(d, n, policy)) {
            if (r.error) throw PipelineError(*r.error, r.pi.key() + ": " + r.error_message);
            sum += r.ratio;
        }
        z[n] = QPoly(sum);
    }
    return z;
}

TruncatedSeries build_z_4k(const WeightTable& table, const OrientationAssignment& orientation)
{
    TruncatedSeries z(table.order);
    for (int n = 0; n <= table.order; ++n) {
        QPoly sum;
        for (const auto& r : table.by_size[n]) {
            if (r.error) throw PipelineError(*r.error, r.pi.key() + ": " + r.error_message);
            if (!r.specialized.ok())
                throw PipelineError(r.specialized.kind == SpecializedValue::Kind::pole ? ErrorKind::ZeroWeightDenominator
                                                                                       : ErrorKind::NotConstant,
                                    r.pi.key() + ": " + r.specialized.detail);
            sum += r.oriented_value(orientation.sign(r.pi)) * Rational(static_cast<unsigned long>(r.orbit));
        }
        z[n] = std::move(sum);
    }
    return z;
}

TruncatedSeries build_z_4k(int d, int order, const OrientationAssignment& orientation, const ExecPolicy& policy)
{
    return build_z_4k(build_weight_table(d, order, TautShift::symbolic(d), policy), orientation);
}

Rational evaluate_sum(const FormSum& s, std::span<const Rational> point)
{
    Rational acc = 0;
    for (const auto& p : s) acc += p.evaluate(point);
    return acc;
}

namespace {

constexpr int kMaxResample = 64;

std::vector<Rational> random_point(std::mt19937_64& rng, int variables)
{
    std::uniform_int_distribution<long> dist(-1000000, 1000000);
    std::vector<Rational> p(variables);
    for (auto& x : p) x = Rational(dist(rng));
    return p;
}

// Returns the first order k >= 2 where z differs from m^E, or -1.
int first_mismatch(const std::vector<Rational>& z, const TruncatedSeries& m, int order, Rational& e,
                   TruncatedSeries& predicted)
{
    if (m[1].coeff(0) == 0) throw std::invalid_argument("check_power_law: reference series has zero q coefficient");
    e = z[1] / m[1].coeff(0);
    predicted = series_pow(m.truncated(order), QPoly(e));
    for (int k = 2; k <= order; ++k)
        if (predicted[k].coeff(0) != z[k]) return k;
    return -1;
}

}  // namespace

PowerLawVerdict check_power_law(const std::vector<FormSum>& z, const TruncatedSeries& m, int order, int variables,
                                std::uint64_t seed, int num_points)
{
    if (order < 2) throw std::invalid_argument("check_power_law: order must be >= 2");
    if (static_cast<int>(z.size()) <= order || m.order() < order)
        throw std::invalid_argument("check_power_law: not enough coefficients");
    PowerLawVerdict v;
    v.seed = seed;
    v.fits = true;
    std::mt19937_64 rng(seed);
    for (int p = 0; p < num_points; ++p) {
        std::vector<Rational> point, values;
        for (int attempt = 0;; ++attempt) {
            if (attempt == kMaxResample) throw std::runtime_error("check_power_law: no regular sample point found");
            point = random_point(rng, variables);
            try {
                values.clear();
                for (int k = 0; k <= order; ++k) values.push_back(evaluate_sum(z[k], point));
                break;
            } catch (const PipelineError&) {
            }
        }
        Rational e;
        TruncatedSeries pred;
        const int k = first_mismatch(values, m, order, e, pred);
        const int at = k < 0 ? order : k;
        v.points.push_back(point);
        v.evidence.push_back({e, values[at], pred[at].coeff(0)});
        if (k >= 0) {
            v.fits = false;
            if (v.mismatch_order < 0 || k < v.mismatch_order) v.mismatch_order = k;
        }
    }
    v.detail = v.fits ? "coefficients agree with M^E at every sample point"
                      : "q^" + std::to_string(v.mismatch_order) + " coefficient differs from M^E";
    return v;
}

PowerLawVerdict check_power_law_oriented(const std::vector<std::vector<FormProduct>>& terms, const TruncatedSeries& m,
                                         int order, int variables, std::uint64_t seed, int num_points,
                                         std::size_t max_sign_choices)
{
    if (order < 2) throw std::invalid_argument("check_power_law_oriented: order must be >= 2");
    if (static_cast<int>(terms.size()) <= order || m.order() < order)
        throw std::invalid_argument("check_power_law_oriented: not enough coefficients");
    // the empty partition keeps sign +1; every other fixed point is free
    std::vector<std::pair<int, std::size_t>> free_terms;
    for (int k = 1; k <= order; ++k)
        for (std::size_t i = 0; i < terms[k].size(); ++i) free_terms.emplace_back(k, i);
    if (free_terms.size() >= 63 || (std::size_t{1} << free_terms.size()) > max_sign_choices)
        throw PipelineError(ErrorKind::LimitExceeded,
                            "check_power_law_oriented: " + std::to_string(free_terms.size()) + " free signs");
    const std::size_t choices = std::size_t{1} << free_terms.size();

    PowerLawVerdict v;
    v.seed = seed;
    std::mt19937_64 rng(seed);
    std::vector<std::vector<Rational>> term_values;  // [point][free term]
    std::vector<Rational> base;                      // [point] value at q^0
    for (int p = 0; p < num_points; ++p) {
        for (int attempt = 0;; ++attempt) {
            if (attempt == kMaxResample)
                throw std::runtime_error("check_power_law_oriented: no regular sample point found");
            auto point = random_point(rng, variables);
            try {
                std::vector<Rational> vals;
                for (auto [k, i] : free_terms) vals.push_back(terms[k][i].evaluate(point));
                Rational b = 0;
                for (const auto& t : terms[0]) b += t.evaluate(point);
                v.points.push_back(std::move(point));
                term_values.push_back(std::move(vals));
                base.push_back(b);
                break;
            } catch (const PipelineError&) {
            }
        }
    }

    // A sign choice fits iff it matches M^E at every point; the verdict "no E"
    // needs every choice to fail somewhere.
    v.fits = false;
    int worst = -1;
    for (std::size_t mask = 0; mask < choices && !v.fits; ++mask) {
        bool all = true;
        int failed_at = -1;
        for (int p = 0; p < num_points && all; ++p) {
            std::vector<Rational> z(order + 1, Rational(0));
            z[0] = base[p];
            for (std::size_t t = 0; t < free_terms.size(); ++t) {
                const Rational& x = term_values[p][t];
                if (mask >> t & 1)
                    z[free_terms[t].first] -= x;
                else
                    z[free_terms[t].first] += x;
            }
            Rational e;
            TruncatedSeries pred;
            const int k = first_mismatch(z, m, order, e, pred);
            if (k >= 0) {
                all = false;
                failed_at = k;
            }
        }
        if (all) {
            v.fits = true;
            v.detail = "sign choice " + std::to_string(mask) + " agrees with M^E at every sample point";
        } else {
            worst = std::max(worst, failed_at);
        }
    }
    if (!v.fits) {
        v.mismatch_order = worst;
        v.detail = "all " + std::to_string(choices) + " sign choices differ from M^E by order q^" +
                   std::to_string(worst);
    }
    return v;
}

std::vector<FormSum> full_torus_z(int d, int order)
{
    std::vector<FormSum> z;
    for (int n = 0; n <= order; ++n) {
        FormSum s;
        for (const auto& pi : enumerate_partitions(d - 1, n)) s.push_back(euler_class(-vertex(pi, d), false));
        z.push_back(std::move(s));
    }
    return z;
}

}  // namespace dvertex
