#include "dvertex/rational.hpp"

#include <sstream>
#include <stdexcept>

namespace dvertex {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text)
{
    Rational q;
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("not a rational: " + text);
    q.canonicalize();
    return q;
}

bool rational_sqrt(const Rational& q, Rational& root)
{
    if (sgn(q) < 0) return false;
    const Integer& num = q.get_num();
    const Integer& den = q.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0)
        return false;
    Integer rn = sqrt(num);
    Integer rd = sqrt(den);
    root = Rational(rn, rd);
    root.canonicalize();
    return true;
}

Rational factorial(unsigned n)
{
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

Integer binomial(unsigned n, unsigned k)
{
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

QPoly::QPoly(const Rational& constant)
{
    if (sgn(constant) != 0) c_.push_back(constant);
}

QPoly::QPoly(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }

QPoly QPoly::variable() { return QPoly(std::vector<Rational>{0, 1}); }

QPoly QPoly::falling_factorial(int h)
{
    QPoly p(1);
    for (int i = 0; i < h; ++i) p *= QPoly(std::vector<Rational>{Rational(-i), 1});
    return p;
}

Rational QPoly::coeff(int k) const
{
    if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
    return c_[k];
}

Rational QPoly::operator()(const Rational& x) const
{
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

QPoly& QPoly::operator+=(const QPoly& o)
{
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

QPoly& QPoly::operator-=(const QPoly& o)
{
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

QPoly& QPoly::operator*=(const QPoly& o)
{
    if (c_.empty() || o.c_.empty()) {
        c_.clear();
        return *this;
    }
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    c_ = std::move(r);
    trim();
    return *this;
}

QPoly& QPoly::operator*=(const Rational& s)
{
    for (auto& x : c_) x *= s;
    trim();
    return *this;
}

QPoly QPoly::operator-() const
{
    QPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

QPoly QPoly::truncated(int max_degree) const
{
    if (max_degree < 0) return {};
    if (degree() <= max_degree) return *this;
    return QPoly(std::vector<Rational>(c_.begin(), c_.begin() + max_degree + 1));
}

void QPoly::divmod(const QPoly& a, const QPoly& b, QPoly& quotient, QPoly& remainder)
{
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    remainder = a;
    std::vector<Rational> q(std::max(0, a.degree() - b.degree() + 1), Rational(0));
    while (!remainder.is_zero() && remainder.degree() >= b.degree()) {
        int shift = remainder.degree() - b.degree();
        Rational f = remainder.leading() / b.leading();
        q[shift] = f;
        std::vector<Rational> t(shift + b.c_.size(), Rational(0));
        for (std::size_t i = 0; i < b.c_.size(); ++i) t[shift + i] = b.c_[i] * f;
        remainder -= QPoly(std::move(t));
    }
    quotient = QPoly(std::move(q));
}

std::vector<std::string> QPoly::to_strings() const
{
    std::vector<std::string> out;
    out.reserve(c_.size());
    for (const auto& x : c_) out.push_back(dvertex::to_string(x));
    return out;
}

std::string QPoly::to_string(const char* var) const
{
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& x = c_[k];
        if (sgn(x) == 0) continue;
        Rational mag = abs(x);
        if (!first) os << (sgn(x) < 0 ? " - " : " + ");
        else if (sgn(x) < 0) os << "-";
        bool unit = mag == 1;
        if (!unit || k == 0) os << mag.get_str();
        if (k > 0) {
            if (!unit) os << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
        first = false;
    }
    return os.str();
}

void QPoly::trim()
{
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

}  // namespace dvertex
