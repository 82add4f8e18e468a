#include "dvertex/vertex.hpp"

#include <stdexcept>

namespace dvertex {

KClass vertex(const MultiPartition& pi, int d)
{
    const KClass z = character(pi, d);
    if (z.is_zero()) return KClass(d);
    const KClass zbar = k_bar(z);
    const std::vector<int> inv_all(d, -1);
    const KClass p = KClass::one_minus_product(d, d);
    const KClass dual_term = zbar.shifted(inv_all);
    const KClass quad_term = (z * zbar * p).shifted(inv_all);
    if (d % 2 == 0) return z + dual_term - quad_term;
    return z - dual_term + quad_term;
}

const char* to_string(KeyConjVerdict v)
{
    switch (v) {
    case KeyConjVerdict::ok: return "ok";
    case KeyConjVerdict::euler_vanishes: return "euler_vanishes";
    case KeyConjVerdict::violated: return "violated";
    }
    return "?";
}

KeyConjVerdict check_key_conjecture(const MultiPartition& pi, int d)
{
    const std::int64_t c = cy_fixed_part(vertex(pi, d));
    if (c == 0) return KeyConjVerdict::ok;
    return c < 0 ? KeyConjVerdict::euler_vanishes : KeyConjVerdict::violated;
}

VertexSplit vertex_split(const MultiPartition& pi, int d)
{
    if (d % 2 == 0) throw std::invalid_argument("vertex_split requires odd d");
    const KClass z = character(pi, d);
    std::vector<int> inv(d, -1);
    inv[d - 1] = 0;
    const KClass plus_full = z - (z * k_bar(z) * KClass::one_minus_product(d, d - 1)).shifted(inv);
    KClass plus = cy_reduce(plus_full);
    KClass minus = cy_reduce(vertex(pi, d)) - plus;
    return {std::move(plus), std::move(minus)};
}

}  // namespace dvertex
