#pragma once

#include "dvertex/kclass.hpp"
#include "dvertex/partition.hpp"
#include "dvertex/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dvertex {

/// A torus weight as a linear form sum_j lambda[j] * lambda_j + ell * l * (lambda_1 + ... + lambda_m),
/// where l is the symbolic tautological parameter.
///
/// On the Calabi-Yau torus m = d - 1 (lambda_d has been eliminated); on the
/// full torus m = d and `ell` is always 0.
struct LinearForm {
    std::vector<std::int32_t> lambda;
    std::int32_t ell = 0;

    bool is_zero() const;
    /// lambda is a multiple of (1, ..., 1); such forms vanish on the specialization locus.
    bool is_critical() const;
    std::string to_string() const;

    friend auto operator<=>(const LinearForm&, const LinearForm&) = default;
};

/// Splits f = content * primitive, with the primitive's first non-zero entry of
/// (lambda..., ell) positive. The content carries the sign.
std::pair<Integer, LinearForm> canonical_form(const LinearForm& f);

/// scalar * prod form^exponent over primitive canonical forms, or the zero class.
class FormProduct {
public:
    FormProduct() = default;
    static FormProduct zero();
    static FormProduct constant(const Rational& c);

    const Rational& scalar() const { return scalar_; }
    const std::map<LinearForm, int>& factors() const { return factors_; }
    bool is_zero() const { return zero_; }
    bool is_constant() const { return !zero_ && factors_.empty(); }

    /// Multiplies by f^exponent. A zero form with positive exponent makes the
    /// product vanish; with negative exponent it raises ZeroWeightDenominator.
    void multiply_form(const LinearForm& f, int exponent);
    void multiply_scalar(const Rational& c);

    FormProduct& operator*=(const FormProduct& o);
    friend FormProduct operator*(FormProduct a, const FormProduct& b) { return a *= b; }
    FormProduct inverse() const;
    FormProduct pow(int k) const;

    /// Net exponent sum (total degree in the lambdas).
    int degree() const;

    /// Exact value at a point. lambda has one entry per form coordinate.
    /// Throws PipelineError(ZeroWeightDenominator) if a denominator form vanishes.
    Rational evaluate(std::span<const Rational> lambda, const Rational& ell = 0) const;

    std::string to_string() const;

    friend bool operator==(const FormProduct& a, const FormProduct& b)
    {
        if (a.zero_ || b.zero_) return a.zero_ == b.zero_;
        return a.scalar_ == b.scalar_ && a.factors_ == b.factors_;
    }

private:
    Rational scalar_ = 1;
    std::map<LinearForm, int> factors_;
    bool zero_ = false;
};

Rational evaluate_form(const LinearForm& f, std::span<const Rational> lambda, const Rational& ell);

/// e(a): each monomial t^w with coefficient c becomes <w, lambda>^c.
/// With use_cy the class is cy_reduced first and forms live on lambda_1..lambda_{d-1}.
FormProduct euler_class(const KClass& a, bool use_cy);

/// Square root of (-1)^n P with positive scalar. Throws NotAPerfectSquare when
/// some direction has odd exponent or (-1)^n scalar is not a rational square.
FormProduct sqrt_form_product(const FormProduct& p, int n);

/// w_pi up to sign: sqrt((-1)^{|pi|} e_T(-V_pi)).
FormProduct half_euler_weight(const MultiPartition& pi, int d);

/// Line bundle O (x) t^u (x) t_d^{-ell_multiplier * l}.
struct TautShift {
    std::vector<int> u;
    int ell_multiplier = 0;

    /// u = (0, ..., 0), l symbolic: L = O (x) t_d^{-l}.
    static TautShift symbolic(int d);
    /// u = (0, ..., 0, -k): the same bundle at l = k, with no symbolic part.
    static TautShift numeric(int d, int k);
};

/// L_pi(u): product over boxes of the CY-reduced form of weight u + box.
FormProduct taut_factor(const MultiPartition& pi, int d, const TautShift& shift);

struct SpecializedValue {
    enum class Kind { polynomial, not_constant, pole };
    Kind kind = Kind::polynomial;
    QPoly value;                 // valid for polynomial
    std::vector<int> direction;  // offending direction for diagnostics
    std::string detail;

    bool ok() const { return kind == Kind::polynomial; }
};
const char* to_string(SpecializedValue::Kind k);

/// Restricts a CY-torus product to lambda_1 + ... + lambda_{d-1} = 0. Vanishing
/// critical forms must cancel symbolically; nothing is evaluated numerically.
SpecializedValue specialize(const FormProduct& p);

struct OmegaValue {
    Rational omega;  // |omega_pi|
    int sign = 1;    // value == sign * (-1)^{|pi|} * omega * falling_factorial(pi_{1..1})
};

/// Divides a specialized polynomial by l(l-1)...(l-(h-1)), h = pi_{1...1}.
/// Throws ShapeMismatch if the quotient is not a non-zero constant.
OmegaValue omega_from_specialized(const SpecializedValue& v, const MultiPartition& pi);

/// e_T(-V_pi) on the CY torus for odd d. Throws NotConstant if any form survives.
Rational euler_ratio_odd(const MultiPartition& pi, int d);

/// Independent evaluation of a CY-torus product on the specialization locus:
/// point p on the locus, direction v with sum(v) != 0, value is the limit of
/// P(p + eps v) as eps -> 0 at numeric l.
struct LimitValue {
    enum class Kind { value, pole, degenerate };
    Kind kind = Kind::value;
    Rational value;
};
LimitValue directional_limit(const FormProduct& p, std::span<const Rational> point, std::span<const Rational> direction,
                             const Rational& ell);

}  // namespace dvertex
