#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dvertex {

inline constexpr int kMaxDim = 16;

/// Exponent vector of a monomial t^w. Only the first `dim` slots are used;
/// the rest stay zero so that equality and hashing can look at the whole array.
using Exponent = std::array<std::int16_t, kMaxDim>;

struct ExponentHash {
    std::size_t operator()(const Exponent& e) const noexcept;
};

/// Sparse Laurent polynomial with integer coefficients in t_1..t_d.
/// Terms are kept sorted by exponent with no zero coefficients, so two
/// classes are equal iff their term vectors are equal.
class KClass {
public:
    using Term = std::pair<Exponent, std::int64_t>;

    explicit KClass(int dim = 0);

    static KClass constant(int dim, std::int64_t c);
    static KClass monomial(int dim, const std::vector<int>& exponent, std::int64_t c = 1);
    /// (1 - t_1)(1 - t_2)...(1 - t_k) in dimension dim.
    static KClass one_minus_product(int dim, int k);
    /// Builds a class from unsorted terms, merging repeated exponents.
    static KClass from_terms(int dim, std::vector<Term> raw);

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }
    std::int64_t coefficient(const Exponent& e) const;

    KClass operator-() const;
    KClass& operator+=(const KClass& o);
    KClass& operator-=(const KClass& o);
    friend KClass operator+(KClass a, const KClass& b) { return a += b; }
    friend KClass operator-(KClass a, const KClass& b) { return a -= b; }
    friend KClass operator*(const KClass& a, const KClass& b);
    friend bool operator==(const KClass& a, const KClass& b)
    {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

    /// Multiplies by the monomial t^shift; exact, never divides.
    KClass shifted(const std::vector<int>& shift) const;

    /// Sorted list of [exponent vector, coefficient] as compact JSON text.
    std::string serialize() const;
    std::string to_string() const;

private:
    void normalize(std::vector<Term>&& raw);

    int dim_;
    std::vector<Term> terms_;
};

Exponent make_exponent(const std::vector<int>& w);
std::vector<int> exponent_vector(const Exponent& e, int dim);

KClass k_add(const KClass& a, const KClass& b);
KClass k_sub(const KClass& a, const KClass& b);
KClass k_mul(const KClass& a, const KClass& b);

/// t^w -> t^{-w}.
KClass k_bar(const KClass& a);

/// Imposes t_1...t_d = 1 by w -> w - w_d (1,...,1).
KClass cy_reduce(const KClass& a);

/// Evaluation at t_1 = ... = t_d = 1.
std::int64_t cy_rank(const KClass& a);

/// Coefficient of t^0 after cy_reduce.
std::int64_t cy_fixed_part(const KClass& a);

/// FNV-1a hash of the serialization.
std::uint64_t fingerprint(const KClass& a);

}  // namespace dvertex
