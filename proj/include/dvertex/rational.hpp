#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace dvertex {

using Rational = mpq_class;
using Integer = mpz_class;

/// Renders a rational as "p/q" (or "p" when the denominator is 1).
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

/// True iff q is the square of a non-negative rational; the root is stored in root.
bool rational_sqrt(const Rational& q, Rational& root);

Rational factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

/// Dense univariate polynomial over Q in the formal variable ell.
/// Used both for the tautological parameter and for the bivariate t-slices
/// of generating functions.
class QPoly {
public:
    QPoly() = default;
    QPoly(const Rational& constant);  // NOLINT(google-explicit-constructor)
    QPoly(long constant) : QPoly(Rational(constant)) {}  // NOLINT
    explicit QPoly(std::vector<Rational> coefficients);

    static QPoly variable();
    /// ell (ell - 1) ... (ell - (h - 1)); 1 for h = 0.
    static QPoly falling_factorial(int h);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    Rational coeff(int k) const;
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
    const std::vector<Rational>& coefficients() const { return c_; }

    Rational operator()(const Rational& x) const;

    QPoly& operator+=(const QPoly& o);
    QPoly& operator-=(const QPoly& o);
    QPoly& operator*=(const QPoly& o);
    QPoly& operator*=(const Rational& s);
    QPoly operator-() const;

    /// Drops all terms of degree > max_degree.
    QPoly truncated(int max_degree) const;

    /// Euclidean division; divisor must be non-zero.
    static void divmod(const QPoly& a, const QPoly& b, QPoly& quotient, QPoly& remainder);

    friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
    friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
    friend QPoly operator*(QPoly a, const QPoly& b) { return a *= b; }
    friend QPoly operator*(QPoly a, const Rational& s) { return a *= s; }
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

    std::vector<std::string> to_strings() const;
    std::string to_string(const char* var = "l") const;

private:
    void trim();
    std::vector<Rational> c_;
};

}  // namespace dvertex
