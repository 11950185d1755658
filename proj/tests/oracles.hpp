// Reference implementations used by the tests: direct transcriptions of the
// definitions, deliberately independent of the engine's table layouts,
// blocking, and transform tricks. Slow and obvious on purpose.
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "cdu/field.hpp"
#include "cdu/func.hpp"

namespace oracle {

// Number of x with F(x + a) - c*F(x) = b.
inline std::uint64_t count(const cdu::FuncTable& F, cdu::elem_t c, cdu::elem_t a,
                           cdu::elem_t b) {
    const cdu::Field& K = *F.ctx();
    std::uint64_t n = 0;
    for (cdu::elem_t x = 0; x < K.order(); ++x)
        if (K.sub(F(K.add(x, a)), K.mul(c, F(x))) == b) ++n;
    return n;
}

// Full difference table as a dense (a, b) matrix.
inline std::vector<std::vector<std::uint64_t>> table(const cdu::FuncTable& F, cdu::elem_t c) {
    const cdu::elem_t q = F.ctx()->order();
    std::vector<std::vector<std::uint64_t>> t(q, std::vector<std::uint64_t>(q, 0));
    for (cdu::elem_t a = 0; a < q; ++a)
        for (cdu::elem_t b = 0; b < q; ++b) t[a][b] = count(F, c, a, b);
    return t;
}

// Max entry over all (a, b), skipping the a = 0 row exactly when c = 1.
inline std::uint64_t uniformity(const cdu::FuncTable& F, cdu::elem_t c) {
    const cdu::elem_t q = F.ctx()->order();
    std::uint64_t best = 0;
    for (cdu::elem_t a = (c == 1) ? 1 : 0; a < q; ++a)
        for (cdu::elem_t b = 0; b < q; ++b) best = std::max(best, count(F, c, a, b));
    return best;
}

// Character-sum transform entry: sum over x of (-1)^(tr(b F(x)) + tr(a x)).
inline std::int64_t walsh(const cdu::FuncTable& F, cdu::elem_t a, cdu::elem_t b) {
    const cdu::Field& K = *F.ctx();
    std::int64_t w = 0;
    for (cdu::elem_t x = 0; x < K.order(); ++x) {
        std::uint32_t bit = (K.trace(K.mul(b, F(x))) + K.trace(K.mul(a, x))) & 1u;
        w += bit ? -1 : 1;
    }
    return w;
}

// Uniformly random function table.
inline cdu::FuncTable random_table(const cdu::FieldRef& ctx, std::mt19937_64& rng) {
    std::vector<std::uint32_t> v(ctx->order());
    for (auto& x : v) x = (std::uint32_t)(rng() % ctx->order());
    return cdu::FuncTable(ctx, std::move(v));
}

// Random function that maps the degree-s subfield into itself (arbitrary
// elsewhere), as the inner piece of a two-piece modification wants.
inline cdu::FuncTable random_closed(const cdu::FieldRef& ctx, std::uint32_t s,
                                    std::mt19937_64& rng) {
    auto view = ctx->subfield(s);
    const auto& elems = view->elements();
    std::vector<std::uint32_t> v(ctx->order());
    for (cdu::elem_t x = 0; x < ctx->order(); ++x)
        v[x] = (std::uint32_t)(rng() % ctx->order());
    for (cdu::elem_t x : elems) v[x] = (std::uint32_t)elems[rng() % elems.size()];
    return cdu::FuncTable(ctx, std::move(v));
}

// Random polynomial with coefficients in the degree-s subfield, as a table.
inline cdu::FuncTable random_subfield_poly(const cdu::FieldRef& ctx, std::uint32_t s,
                                           std::uint32_t max_deg, std::mt19937_64& rng) {
    auto view = ctx->subfield(s);
    const auto& elems = view->elements();
    cdu::UnivariatePoly f;
    f.coeffs.resize(max_deg + 1);
    for (auto& cf : f.coeffs) cf = elems[rng() % elems.size()];
    return cdu::from_poly(ctx, f);
}

}  // namespace oracle
