#pragma once

#include "dvertex/forms.hpp"
#include "dvertex/orientation.hpp"
#include "dvertex/parallel.hpp"
#include "dvertex/rational.hpp"
#include "dvertex/weights.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dvertex {

/// Power series in q modulo q^{order+1} with coefficients in Q[l].
class TruncatedSeries {
public:
    explicit TruncatedSeries(int order = 0);
    TruncatedSeries(int order, std::vector<QPoly> coefficients);

    static TruncatedSeries one(int order);

    int order() const { return order_; }
    const QPoly& operator[](int k) const { return c_.at(k); }
    QPoly& operator[](int k) { return c_.at(k); }
    const std::vector<QPoly>& coefficients() const { return c_; }

    TruncatedSeries& operator+=(const TruncatedSeries& o);
    TruncatedSeries& operator-=(const TruncatedSeries& o);
    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    TruncatedSeries& operator*=(const QPoly& s);
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        return a.order_ == b.order_ && a.c_ == b.c_;
    }

    /// q -> -q.
    TruncatedSeries negate_q() const;
    /// Substitutes a value for l.
    TruncatedSeries at_ell(const Rational& x) const;
    /// Drops l-degrees above max_degree.
    TruncatedSeries truncate_ell(int max_degree) const;
    TruncatedSeries truncated(int order) const;

    std::string to_string() const;

private:
    int order_;
    std::vector<QPoly> c_;
};

/// Requires c_0 = 0.
TruncatedSeries series_exp(const TruncatedSeries& s);
/// Requires c_0 = 1.
TruncatedSeries series_log(const TruncatedSeries& s);
/// exp(e * log m) for an exponent in Q[l]; requires c_0 = 1.
TruncatedSeries series_pow(const TruncatedSeries& m, const QPoly& exponent);
/// m^l with l symbolic.
TruncatedSeries series_pow_ell(const TruncatedSeries& m, int order);

/// M_n(q) = sum P_n(i) q^i; M_0 = 1/(1-q).
TruncatedSeries m_series(int n, int order);

/// sum over (d-1)-partitions of e_T(-V_pi) q^{|pi|} on the CY torus, odd d.
TruncatedSeries build_z_odd(int d, int order, const ExecPolicy& policy = {});

/// sum over (d-1)-partitions of sign * L_pi * w_pi |_{locus} q^{|pi|}.
/// Throws PipelineError naming the first failing partition.
TruncatedSeries build_z_4k(const WeightTable& table, const OrientationAssignment& orientation);
TruncatedSeries build_z_4k(int d, int order, const OrientationAssignment& orientation, const ExecPolicy& policy = {});

/// A q-coefficient given as a sum of Euler-class products.
using FormSum = std::vector<FormProduct>;

Rational evaluate_sum(const FormSum& s, std::span<const Rational> point);

struct PowerLawVerdict {
    bool fits = false;
    std::uint64_t seed = 0;
    std::vector<std::vector<Rational>> points;
    // per point: (E, Z_k, predicted Z_k) at the first mismatching order, or at order N if all match
    std::vector<std::vector<Rational>> evidence;
    int mismatch_order = -1;
    std::string detail;
};

/// Decides whether Z = M^E for some rational function E, by solving E from the
/// q coefficient and comparing higher coefficients at random integer points.
/// `variables` is the number of lambda coordinates the forms use.
PowerLawVerdict check_power_law(const std::vector<FormSum>& z, const TruncatedSeries& m, int order, int variables,
                                std::uint64_t seed, int num_points = 3);

/// Same question when every product carries an unknown sign: each entry of
/// terms[k] is one fixed point of size k. All sign choices are tried.
PowerLawVerdict check_power_law_oriented(const std::vector<std::vector<FormProduct>>& terms, const TruncatedSeries& m,
                                         int order, int variables, std::uint64_t seed, int num_points = 3,
                                         std::size_t max_sign_choices = 1u << 20);

/// Full-torus Z for odd d, coefficients up to `order`.
std::vector<FormSum> full_torus_z(int d, int order);

}  // namespace dvertex
