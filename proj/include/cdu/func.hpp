#pragma once

#include <cstdint>
#include <vector>

#include "cdu/field.hpp"

namespace cdu {

// A function GF(p^n) -> GF(p^n) stored as a full value table indexed by
// element index. Tables are immutable after construction.
class FuncTable {
public:
    FuncTable(FieldRef ctx, std::vector<std::uint32_t> values);

    static FuncTable identity(FieldRef ctx);
    static FuncTable constant(FieldRef ctx, elem_t v);

    elem_t operator()(elem_t x) const { return values_[x]; }
    const std::vector<std::uint32_t>& values() const { return values_; }
    const std::uint32_t* data() const { return values_.data(); }
    const FieldRef& ctx() const { return ctx_; }
    elem_t size() const { return (elem_t)values_.size(); }

    bool same_ctx(const FuncTable& other) const { return ctx_.get() == other.ctx_.get(); }

private:
    FieldRef ctx_;
    std::vector<std::uint32_t> values_;
};

// Coefficient vector, constant term first. Arithmetic is carried out modulo
// x^q - x, the functional identity on GF(q).
struct UnivariatePoly {
    std::vector<elem_t> coeffs;

    int degree() const {
        for (int i = (int)coeffs.size() - 1; i >= 0; --i)
            if (coeffs[(size_t)i]) return i;
        return -1;
    }
};

elem_t poly_eval(const Field& K, const UnivariatePoly& f, elem_t x);
UnivariatePoly poly_add(const Field& K, const UnivariatePoly& a, const UnivariatePoly& b);
UnivariatePoly poly_sub(const Field& K, const UnivariatePoly& a, const UnivariatePoly& b);
UnivariatePoly poly_mul(const Field& K, const UnivariatePoly& a, const UnivariatePoly& b);
UnivariatePoly poly_pow(const Field& K, const UnivariatePoly& a, std::uint64_t e);

FuncTable from_poly(FieldRef ctx, const UnivariatePoly& f);

// Full-domain Lagrange interpolation, O(q^2). DomainTooLarge above the cap.
UnivariatePoly interpolate(const FuncTable& F, std::uint64_t cap = 1ull << 12);

// Max p-ary weight of an exponent with nonzero coefficient; constants have
// degree 0. p = 2 runs a packed Moebius transform over all n components at
// once; odd p interpolates (cap applies to that path).
std::uint32_t algebraic_degree(const FuncTable& F, std::uint64_t interp_cap = 1ull << 12);

bool is_permutation(const FuncTable& F);

struct PreimageStats {
    std::vector<std::uint64_t> hist;  // hist[k] = number of b with |F^{-1}(b)| = k
    std::uint32_t max_fiber = 0;
};
PreimageStats preimage_distribution(const FuncTable& F);

FuncTable compose(const FuncTable& outer, const FuncTable& inner);  // MixedFields

// Table of L(x) + c. When require_bijective is set, a nontrivial kernel of L
// raises NonBijectiveAffine.
FuncTable affine_map(FieldRef ctx, const LinearizedPoly& L, elem_t c,
                     bool require_bijective = true);

}  // namespace cdu
