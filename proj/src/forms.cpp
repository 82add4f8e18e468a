#include "dvertex/forms.hpp"

#include "dvertex/errors.hpp"
#include "dvertex/vertex.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace dvertex {

bool LinearForm::is_zero() const
{
    return ell == 0 && std::all_of(lambda.begin(), lambda.end(), [](auto x) { return x == 0; });
}

bool LinearForm::is_critical() const
{
    return !lambda.empty() && std::all_of(lambda.begin(), lambda.end(), [&](auto x) { return x == lambda[0]; });
}

std::string LinearForm::to_string() const
{
    std::ostringstream os;
    os << "(";
    for (std::size_t j = 0; j < lambda.size(); ++j) os << (j ? "," : "") << lambda[j];
    os << ";" << ell << ")";
    return os.str();
}

std::pair<Integer, LinearForm> canonical_form(const LinearForm& f)
{
    std::int64_t g = std::abs(static_cast<std::int64_t>(f.ell));
    for (auto x : f.lambda) g = std::gcd(g, std::abs(static_cast<std::int64_t>(x)));
    if (g == 0) return {Integer(0), f};
    std::int64_t lead = 0;
    for (auto x : f.lambda)
        if (x != 0) {
            lead = x;
            break;
        }
    if (lead == 0) lead = f.ell;
    std::int64_t c = lead < 0 ? -g : g;
    LinearForm p = f;
    for (auto& x : p.lambda) x = static_cast<std::int32_t>(x / c);
    p.ell = static_cast<std::int32_t>(p.ell / c);
    return {Integer(static_cast<long>(c)), std::move(p)};
}

FormProduct FormProduct::zero()
{
    FormProduct p;
    p.zero_ = true;
    p.scalar_ = 0;
    return p;
}

FormProduct FormProduct::constant(const Rational& c)
{
    if (sgn(c) == 0) return zero();
    FormProduct p;
    p.scalar_ = c;
    return p;
}

void FormProduct::multiply_scalar(const Rational& c)
{
    if (zero_) return;
    if (sgn(c) == 0) {
        *this = zero();
        return;
    }
    scalar_ *= c;
}

void FormProduct::multiply_form(const LinearForm& f, int exponent)
{
    if (exponent == 0) return;
    auto [content, prim] = canonical_form(f);
    if (content == 0) {
        if (exponent < 0) throw PipelineError(ErrorKind::ZeroWeightDenominator, "zero weight with multiplicity " + std::to_string(exponent));
        *this = zero();
        return;
    }
    if (zero_) return;
    Rational c(content);
    if (exponent > 0) {
        for (int k = 0; k < exponent; ++k) scalar_ *= c;
    } else {
        for (int k = 0; k < -exponent; ++k) scalar_ /= c;
    }
    auto it = factors_.find(prim);
    if (it == factors_.end()) {
        factors_.emplace(std::move(prim), exponent);
    } else if ((it->second += exponent) == 0) {
        factors_.erase(it);
    }
}

FormProduct& FormProduct::operator*=(const FormProduct& o)
{
    if (zero_ || o.zero_) {
        // a zero times anything with a genuine pole is still reported as zero;
        // pole detection happens when forms are inserted
        *this = zero();
        return *this;
    }
    scalar_ *= o.scalar_;
    for (const auto& [f, e] : o.factors_) {
        auto it = factors_.find(f);
        if (it == factors_.end()) factors_.emplace(f, e);
        else if ((it->second += e) == 0) factors_.erase(it);
    }
    return *this;
}

FormProduct FormProduct::inverse() const
{
    if (zero_) throw PipelineError(ErrorKind::ZeroWeightDenominator, "inverse of a vanishing Euler class");
    FormProduct r;
    r.scalar_ = 1 / scalar_;
    for (const auto& [f, e] : factors_) r.factors_.emplace(f, -e);
    return r;
}

FormProduct FormProduct::pow(int k) const
{
    if (k < 0) return inverse().pow(-k);
    if (zero_) return k == 0 ? FormProduct() : zero();
    FormProduct r;
    r.scalar_ = 1;
    for (int i = 0; i < k; ++i) r.scalar_ *= scalar_;
    if (k != 0)
        for (const auto& [f, e] : factors_) r.factors_.emplace(f, e * k);
    return r;
}

int FormProduct::degree() const
{
    int s = 0;
    for (const auto& [f, e] : factors_) s += e;
    return s;
}

Rational evaluate_form(const LinearForm& f, std::span<const Rational> lambda, const Rational& ell)
{
    if (lambda.size() != f.lambda.size()) throw PipelineError(ErrorKind::DimensionMismatch, "evaluation point length");
    Rational v = 0, s = 0;
    for (std::size_t j = 0; j < lambda.size(); ++j) {
        v += f.lambda[j] * lambda[j];
        s += lambda[j];
    }
    if (f.ell != 0) v += f.ell * ell * s;
    return v;
}

Rational FormProduct::evaluate(std::span<const Rational> lambda, const Rational& ell) const
{
    if (zero_) return 0;
    Rational num = scalar_, den = 1;
    for (const auto& [f, e] : factors_) {
        Rational x = evaluate_form(f, lambda, ell);
        if (sgn(x) == 0) {
            if (e < 0) throw PipelineError(ErrorKind::ZeroWeightDenominator, "form " + f.to_string() + " vanishes at point");
            return 0;
        }
        for (int k = 0; k < std::abs(e); ++k) {
            if (e > 0) num *= x;
            else den *= x;
        }
    }
    return num / den;
}

std::string FormProduct::to_string() const
{
    if (zero_) return "0";
    std::ostringstream os;
    os << dvertex::to_string(scalar_);
    for (const auto& [f, e] : factors_) os << " * " << f.to_string() << "^" << e;
    return os.str();
}

FormProduct euler_class(const KClass& a, bool use_cy)
{
    const KClass src = use_cy ? cy_reduce(a) : a;
    const int m = use_cy ? a.dim() - 1 : a.dim();
    FormProduct p;
    for (const auto& [w, c] : src.terms()) {
        LinearForm f;
        f.lambda.assign(w.begin(), w.begin() + m);
        if (c > static_cast<std::int64_t>(std::numeric_limits<int>::max()) || c < std::numeric_limits<int>::min())
            throw std::overflow_error("multiplicity out of range");
        p.multiply_form(f, static_cast<int>(c));
    }
    return p;
}

FormProduct sqrt_form_product(const FormProduct& p, int n)
{
    if (p.is_zero()) return FormProduct::zero();
    Rational target = (n % 2 == 0) ? p.scalar() : Rational(-p.scalar());
    Rational root;
    if (!rational_sqrt(target, root))
        throw PipelineError(ErrorKind::NotAPerfectSquare, "scalar (-1)^n * " + to_string(p.scalar()) + " is not a rational square");
    FormProduct r = FormProduct::constant(root);
    for (const auto& [f, e] : p.factors()) {
        if (e % 2 != 0)
            throw PipelineError(ErrorKind::NotAPerfectSquare, "direction " + f.to_string() + " has odd exponent " + std::to_string(e));
        r.multiply_form(f, e / 2);
    }
    return r;
}

FormProduct half_euler_weight(const MultiPartition& pi, int d)
{
    return sqrt_form_product(euler_class(-vertex(pi, d), true), pi.size());
}

TautShift TautShift::symbolic(int d) { return TautShift{std::vector<int>(d, 0), 1}; }

TautShift TautShift::numeric(int d, int k)
{
    TautShift s{std::vector<int>(d, 0), 0};
    s.u[d - 1] = -k;
    return s;
}

FormProduct taut_factor(const MultiPartition& pi, int d, const TautShift& shift)
{
    if (pi.arity() != d - 1) throw PipelineError(ErrorKind::DimensionMismatch, "taut_factor: arity does not match d - 1");
    if (static_cast<int>(shift.u.size()) != d) throw PipelineError(ErrorKind::DimensionMismatch, "taut_factor: shift length");
    FormProduct p;
    for (const Cell& c : pi.cells()) {
        LinearForm f;
        f.lambda.resize(d - 1);
        const int wd = c[d - 1] + shift.u[d - 1];
        for (int j = 0; j < d - 1; ++j) f.lambda[j] = c[j] + shift.u[j] - wd;
        f.ell = shift.ell_multiplier;
        p.multiply_form(f, 1);
        if (p.is_zero()) break;
    }
    return p;
}

const char* to_string(SpecializedValue::Kind k)
{
    switch (k) {
    case SpecializedValue::Kind::polynomial: return "polynomial";
    case SpecializedValue::Kind::not_constant: return "not_constant";
    case SpecializedValue::Kind::pole: return "pole";
    }
    return "?";
}

SpecializedValue specialize(const FormProduct& p)
{
    SpecializedValue out;
    if (p.is_zero()) return out;  // zero polynomial

    Rational scalar = p.scalar();
    int critical_order = 0;
    std::map<std::pair<std::int64_t, std::int64_t>, int> ell_factors;  // (c, b) -> exponent for (c + b l), b > 0
    std::map<std::vector<std::int64_t>, int> restricted;

    auto times_pow = [&](const Rational& x, int e) {
        for (int k = 0; k < std::abs(e); ++k) {
            if (e > 0) scalar *= x;
            else scalar /= x;
        }
    };

    for (const auto& [f, e] : p.factors()) {
        const std::size_t m = f.lambda.size();
        if (f.is_critical()) {
            // f = (c + b l) (lambda_1 + ... + lambda_m)
            critical_order += e;
            std::int64_t c = f.lambda[0], b = f.ell;
            if (b == 0) {
                times_pow(Rational(static_cast<long>(c)), e);
                continue;
            }
            std::int64_t g = std::gcd(std::abs(c), std::abs(b));
            if (b < 0) g = -g;
            times_pow(Rational(static_cast<long>(g)), e);
            ell_factors[{c / g, b / g}] += e;
            continue;
        }
        // lambda_m = -(lambda_1 + ... + lambda_{m-1}) on the locus
        std::vector<std::int64_t> r(m - 1);
        for (std::size_t j = 0; j + 1 < m; ++j) r[j] = static_cast<std::int64_t>(f.lambda[j]) - f.lambda[m - 1];
        std::int64_t g = 0, lead = 0;
        for (auto x : r) {
            g = std::gcd(g, std::abs(x));
            if (lead == 0) lead = x;
        }
        if (lead < 0) g = -g;
        for (auto& x : r) x /= g;
        times_pow(Rational(static_cast<long>(g)), e);
        restricted[r] += e;
    }

    for (const auto& [dir, e] : restricted) {
        if (e != 0) {
            out.kind = SpecializedValue::Kind::not_constant;
            out.direction.assign(dir.begin(), dir.end());
            out.detail = "restricted direction with net exponent " + std::to_string(e);
            return out;
        }
    }
    if (critical_order < 0) {
        out.kind = SpecializedValue::Kind::pole;
        out.direction.assign(p.factors().begin()->first.lambda.size(), 1);
        out.detail = "vanishing critical form with net exponent " + std::to_string(critical_order);
        return out;
    }
    if (critical_order > 0) return out;  // vanishes identically on the locus

    QPoly value(scalar);
    for (const auto& [cb, e] : ell_factors) {
        if (e < 0) {
            out.kind = SpecializedValue::Kind::pole;
            out.direction = {static_cast<int>(cb.first), static_cast<int>(cb.second)};
            out.detail = "denominator factor in l";
            return out;
        }
        QPoly lin(std::vector<Rational>{Rational(static_cast<long>(cb.first)), Rational(static_cast<long>(cb.second))});
        for (int k = 0; k < e; ++k) value *= lin;
    }
    out.value = std::move(value);
    return out;
}

OmegaValue omega_from_specialized(const SpecializedValue& v, const MultiPartition& pi)
{
    if (!v.ok()) throw PipelineError(ErrorKind::ShapeMismatch, std::string("specialized value is ") + to_string(v.kind));
    const int h = pi.corner_height();
    QPoly q, r;
    QPoly::divmod(v.value, QPoly::falling_factorial(h), q, r);
    if (!r.is_zero() || !q.is_constant() || q.is_zero())
        throw PipelineError(ErrorKind::ShapeMismatch, "weight " + v.value.to_string() + " is not a non-zero multiple of the falling factorial of height " + std::to_string(h));
    Rational c = q.coeff(0);
    OmegaValue out;
    out.omega = abs(c);
    int parity = (pi.size() % 2 == 0) ? 1 : -1;
    out.sign = sgn(c) * parity;
    return out;
}

Rational euler_ratio_odd(const MultiPartition& pi, int d)
{
    if (d % 2 == 0) throw std::invalid_argument("euler_ratio_odd requires odd d");
    FormProduct p = euler_class(-vertex(pi, d), true);
    if (p.is_zero()) return 0;
    if (!p.is_constant())
        throw PipelineError(ErrorKind::NotConstant, "forms survive in e_T(-V) for " + pi.key());
    return p.scalar();
}

LimitValue directional_limit(const FormProduct& p, std::span<const Rational> point, std::span<const Rational> direction,
                             const Rational& ell)
{
    LimitValue out;
    if (p.is_zero()) {
        out.value = 0;
        return out;
    }
    Rational off = 0;
    for (const auto& x : direction) off += x;
    if (off == 0) {
        out.kind = LimitValue::Kind::degenerate;  // the direction stays inside the locus
        return out;
    }
    Rational acc = p.scalar();
    int order = 0;
    int identically_zero_pos = 0, identically_zero_neg = 0;
    for (const auto& [f, e] : p.factors()) {
        Rational alpha = evaluate_form(f, point, ell);
        if (sgn(alpha) != 0) {
            for (int k = 0; k < std::abs(e); ++k) {
                if (e > 0) acc *= alpha;
                else acc /= alpha;
            }
            continue;
        }
        if (!f.is_critical()) {
            out.kind = LimitValue::Kind::degenerate;
            return out;
        }
        Rational beta = evaluate_form(f, direction, ell);
        if (sgn(beta) == 0) {
            (e > 0 ? identically_zero_pos : identically_zero_neg) += 1;
            continue;
        }
        order += e;
        for (int k = 0; k < std::abs(e); ++k) {
            if (e > 0) acc *= beta;
            else acc /= beta;
        }
    }
    if (identically_zero_neg > 0 || (identically_zero_pos == 0 && order < 0)) {
        out.kind = LimitValue::Kind::pole;
        return out;
    }
    out.value = (identically_zero_pos > 0 || order > 0) ? Rational(0) : acc;
    return out;
}

}  // namespace dvertex
