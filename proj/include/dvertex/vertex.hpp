#pragma once

#include "dvertex/kclass.hpp"
#include "dvertex/partition.hpp"

namespace dvertex {

/// V_pi = Z + (-1)^d Zbar/(t_1...t_d) - (-1)^d Z Zbar (1-t_1)...(1-t_d)/(t_1...t_d)
/// over the full torus; division by t_1...t_d is a monomial shift.
KClass vertex(const MultiPartition& pi, int d);

enum class KeyConjVerdict { ok, euler_vanishes, violated };
const char* to_string(KeyConjVerdict v);

/// Classifies the T-fixed multiplicity c of V_pi: 0 -> ok, c < 0 -> the Euler
/// class of -V_pi vanishes, c > 0 -> a trivial summand sits in the denominator.
KeyConjVerdict check_key_conjecture(const MultiPartition& pi, int d);

struct VertexSplit {
    KClass plus;
    KClass minus;
};

/// For odd d: V^+ = Z - Z Zbar (1-t_1)...(1-t_{d-1})/(t_1...t_{d-1}), V^- = V - V^+,
/// both after cy_reduce. Throws std::invalid_argument for even d.
VertexSplit vertex_split(const MultiPartition& pi, int d);

}  // namespace dvertex
