#include "cdu/func.hpp"

#include <algorithm>
#include <bit>

namespace cdu {

namespace {
constexpr elem_t kTableCap = 1ull << 26;

std::uint32_t p_weight(std::uint64_t e, std::uint32_t p) {
    std::uint32_t w = 0;
    while (e) {
        w += (std::uint32_t)(e % p);
        e /= p;
    }
    return w;
}
}  // namespace

FuncTable::FuncTable(FieldRef ctx, std::vector<std::uint32_t> values)
    : ctx_(std::move(ctx)), values_(std::move(values)) {
    const Field& K = *ctx_;
    if (K.order() > kTableCap) fail(Errc::DomainTooLarge, "function table needs q <= 2^26");
    if (values_.size() != K.order()) fail(Errc::InvalidArgument, "table size must equal q");
    for (auto v : values_)
        if (v >= K.order()) fail(Errc::InvalidArgument, "table value out of range");
}

FuncTable FuncTable::identity(FieldRef ctx) {
    std::vector<std::uint32_t> v(ctx->order());
    for (elem_t x = 0; x < v.size(); ++x) v[x] = (std::uint32_t)x;
    return FuncTable(std::move(ctx), std::move(v));
}

FuncTable FuncTable::constant(FieldRef ctx, elem_t c) {
    std::vector<std::uint32_t> v(ctx->order(), (std::uint32_t)c);
    return FuncTable(std::move(ctx), std::move(v));
}

elem_t poly_eval(const Field& K, const UnivariatePoly& f, elem_t x) {
    elem_t acc = 0;
    for (int i = f.degree(); i >= 0; --i) acc = K.add(K.mul(acc, x), f.coeffs[(size_t)i]);
    return acc;
}

UnivariatePoly poly_add(const Field& K, const UnivariatePoly& a, const UnivariatePoly& b) {
    UnivariatePoly r;
    r.coeffs.assign(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (size_t i = 0; i < r.coeffs.size(); ++i) {
        elem_t av = i < a.coeffs.size() ? a.coeffs[i] : 0;
        elem_t bv = i < b.coeffs.size() ? b.coeffs[i] : 0;
        r.coeffs[i] = K.add(av, bv);
    }
    return r;
}

UnivariatePoly poly_sub(const Field& K, const UnivariatePoly& a, const UnivariatePoly& b) {
    UnivariatePoly r;
    r.coeffs.assign(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (size_t i = 0; i < r.coeffs.size(); ++i) {
        elem_t av = i < a.coeffs.size() ? a.coeffs[i] : 0;
        elem_t bv = i < b.coeffs.size() ? b.coeffs[i] : 0;
        r.coeffs[i] = K.sub(av, bv);
    }
    return r;
}

UnivariatePoly poly_mul(const Field& K, const UnivariatePoly& a, const UnivariatePoly& b) {
    elem_t q = K.order();
    UnivariatePoly r;
    r.coeffs.assign(q, 0);
    int da = a.degree(), db = b.degree();
    for (int i = 0; i <= da; ++i) {
        if (!a.coeffs[(size_t)i]) continue;
        for (int j = 0; j <= db; ++j) {
            if (!b.coeffs[(size_t)j]) continue;
            // exponent folding under x^q = x, valid as functions on GF(q)
            std::uint64_t e = (std::uint64_t)i + (std::uint64_t)j;
            while (e >= q) e -= q - 1;
            r.coeffs[e] = K.add(r.coeffs[e], K.mul(a.coeffs[(size_t)i], b.coeffs[(size_t)j]));
        }
    }
    return r;
}

UnivariatePoly poly_pow(const Field& K, const UnivariatePoly& a, std::uint64_t e) {
    UnivariatePoly r;
    r.coeffs = {1};
    UnivariatePoly base = a;
    while (e) {
        if (e & 1) r = poly_mul(K, r, base);
        base = poly_mul(K, base, base);
        e >>= 1;
    }
    return r;
}

FuncTable from_poly(FieldRef ctx, const UnivariatePoly& f) {
    const Field& K = *ctx;
    std::vector<std::uint32_t> v(K.order());
    for (elem_t x = 0; x < K.order(); ++x) v[x] = (std::uint32_t)poly_eval(K, f, x);
    return FuncTable(std::move(ctx), std::move(v));
}

UnivariatePoly interpolate(const FuncTable& F, std::uint64_t cap) {
    const Field& K = *F.ctx();
    elem_t q = K.order();
    if (q > cap) fail(Errc::DomainTooLarge, "interpolation cap exceeded");
    // Every field element is a node, so the node polynomial is N(x) = x^q - x
    // with N'(x) = -1 everywhere: F = -sum_i y_i * N(x)/(x - x_i).
    std::vector<elem_t> acc(q, 0);
    std::vector<elem_t> quot(q, 0);
    for (elem_t xi = 0; xi < q; ++xi) {
        elem_t yi = F(xi);
        if (yi == 0) continue;
        // synthetic division of x^q - x by (x - xi)
        elem_t carry = 1;  // leading coefficient of the dividend
        quot[q - 1] = carry;
        for (elem_t d = q - 1; d >= 1; --d) {
            elem_t a_d = (d == 1) ? K.neg(1) : 0;  // dividend coefficient of x^d
            carry = K.add(K.mul(carry, xi), a_d);
            quot[d - 1] = carry;
        }
        for (elem_t i = 0; i < q; ++i)
            if (quot[i]) acc[i] = K.add(acc[i], K.mul(yi, quot[i]));
    }
    UnivariatePoly r;
    r.coeffs.resize(q);
    for (elem_t i = 0; i < q; ++i) r.coeffs[i] = K.neg(acc[i]);
    return r;
}

std::uint32_t algebraic_degree(const FuncTable& F, std::uint64_t interp_cap) {
    const Field& K = *F.ctx();
    elem_t q = K.order();
    if (K.p() == 2) {
        if (q > (1ull << 20)) fail(Errc::DomainTooLarge, "degree computation needs q <= 2^20");
        // Moebius transform of all n component functions at once, packed in the
        // value words; a nonzero word at mask u means some component has the
        // monomial prod_{i in u} x_i.
        std::vector<std::uint32_t> a(F.values());
        for (std::uint32_t bit = 0; bit < K.n(); ++bit) {
            elem_t step = 1ull << bit;
            for (elem_t x = 0; x < q; ++x)
                if (x & step) a[x] ^= a[x ^ step];
        }
        std::uint32_t deg = 0;
        for (elem_t u = 0; u < q; ++u)
            if (a[u]) deg = std::max(deg, (std::uint32_t)std::popcount(u));
        return deg;
    }
    UnivariatePoly f = interpolate(F, interp_cap);
    std::uint32_t deg = 0;
    for (size_t e = 0; e < f.coeffs.size(); ++e)
        if (f.coeffs[e]) deg = std::max(deg, p_weight(e, K.p()));
    return deg;
}

bool is_permutation(const FuncTable& F) {
    std::vector<bool> seen(F.size(), false);
    for (auto v : F.values()) {
        if (seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

PreimageStats preimage_distribution(const FuncTable& F) {
    std::vector<std::uint32_t> fiber(F.size(), 0);
    for (auto v : F.values()) ++fiber[v];
    PreimageStats st;
    for (auto c : fiber) st.max_fiber = std::max(st.max_fiber, c);
    st.hist.assign(st.max_fiber + 1, 0);
    for (auto c : fiber) ++st.hist[c];
    return st;
}

FuncTable compose(const FuncTable& outer, const FuncTable& inner) {
    if (!outer.same_ctx(inner)) fail(Errc::MixedFields, "compose across different field contexts");
    std::vector<std::uint32_t> v(inner.size());
    for (elem_t x = 0; x < inner.size(); ++x) v[x] = (std::uint32_t)outer(inner(x));
    return FuncTable(outer.ctx(), std::move(v));
}

FuncTable affine_map(FieldRef ctx, const LinearizedPoly& L, elem_t c, bool require_bijective) {
    const Field& K = *ctx;
    std::vector<std::uint32_t> v(K.order());
    bool kernel_trivial = true;
    for (elem_t x = 0; x < K.order(); ++x) {
        elem_t lx = eval_linearized(K, L, x);
        if (lx == 0 && x != 0) kernel_trivial = false;
        v[x] = (std::uint32_t)K.add(lx, c);
    }
    if (require_bijective && !kernel_trivial)
        fail(Errc::NonBijectiveAffine, "linear part has a nontrivial kernel");
    return FuncTable(std::move(ctx), std::move(v));
}

}  // namespace cdu
