#pragma once

#include <cstdint>
#include <vector>

#include "cdu/func.hpp"

namespace cdu {
namespace cons {

// x^(2^k + 1), p = 2, 1 <= k < n.
FuncTable gold(FieldRef ctx, std::uint32_t k);

// x^(2^(2k) - 2^k + 1), p = 2; the exponent is reduced mod 2^n - 1.
FuncTable kasami(FieldRef ctx, std::uint32_t k);

// x^(q-2): the multiplicative inverse extended by 0 -> 0.
FuncTable inverse_perm(FieldRef ctx);

// x^e extended by 0 -> 0 (and 0^0 = 1 when e = 0).
FuncTable power_map(FieldRef ctx, std::uint64_t e);

// F(x) = f(x) on the subfield of degree s, g(x) elsewhere. f must map the
// subfield into itself (SubfieldEscape otherwise); its values off the
// subfield are ignored.
FuncTable piecewise_two(const FuncTable& f, const FuncTable& g, std::uint32_t s);

// F(x) = f(x) on F_{p^t}, g(x) on F_{p^s} \ F_{p^t}, h(x) elsewhere.
// Requires gcd(s, t) = 1 (NonCoprimeDegrees); f and g must be closed on
// their subfields.
FuncTable piecewise_three(const FuncTable& f, const FuncTable& g, const FuncTable& h,
                          std::uint32_t s, std::uint32_t t);

// Nested chain k_1 | k_2 | ... | k_t = n: F(x) = f_i(x) for the first i with
// x in F_{p^(k_i)}. Each f_i (i < t) must be closed on its subfield.
struct PieceSpec {
    std::vector<std::uint32_t> ks;
    std::vector<FuncTable> fs;
};
FuncTable piecewise_chain(const PieceSpec& spec);

// G(x) = x^(2^k+1) + alpha * ((x^(2^s) + x)^(2^n - 1) + 1): the Gold function
// shifted by alpha on the subfield of degree s. alpha must be a nonzero
// subfield element.
FuncTable gold_shift(FieldRef ctx, std::uint32_t s, std::uint32_t k, elem_t alpha);

// F(x) = sum_k beta_k * f_k(L_k(x)) for the dual projections L_k of the
// basis beta: the coordinate-wise concatenation of the f_k over the base
// field. Each f_k must be closed on the base subfield (BaseFieldMismatch).
FuncTable concat(const DualProjection& proj, const std::vector<FuncTable>& fs);

}  // namespace cons
}  // namespace cdu
