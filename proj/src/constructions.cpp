#include "cdu/constructions.hpp"

#include <numeric>

#include "cdu/errors.hpp"

namespace cdu {
namespace cons {

namespace {

void require_char2(const Field& ctx, const char* what) {
    if (ctx.p() != 2)
        fail(Errc::OddCharacteristic, std::string(what) + " requires characteristic 2");
}

void require_closed(const FuncTable& f, const SubfieldView& view, const char* name) {
    for (elem_t x : view.elements()) {
        if (!view.contains(f(x)))
            fail(Errc::SubfieldEscape,
                 std::string(name) + " does not map the degree-" +
                     std::to_string(view.s()) + " subfield into itself");
    }
}

}  // namespace

FuncTable gold(FieldRef ctx, std::uint32_t k) {
    require_char2(*ctx, "gold");
    if (k == 0 || k >= ctx->n())
        fail(Errc::InvalidArgument, "gold exponent needs 1 <= k < n");
    return power_map(ctx, (std::uint64_t{1} << k) + 1);
}

FuncTable kasami(FieldRef ctx, std::uint32_t k) {
    require_char2(*ctx, "kasami");
    if (k == 0 || k >= ctx->n())
        fail(Errc::InvalidArgument, "kasami exponent needs 1 <= k < n");
    std::uint64_t e = (std::uint64_t{1} << (2 * k)) - (std::uint64_t{1} << k) + 1;
    return power_map(ctx, e % (ctx->order() - 1));
}

FuncTable inverse_perm(FieldRef ctx) { return power_map(ctx, ctx->order() - 2); }

FuncTable power_map(FieldRef ctx, std::uint64_t e) {
    const elem_t q = ctx->order();
    std::vector<std::uint32_t> vals(q);
    if (e == 0) {
        for (elem_t x = 0; x < q; ++x) vals[x] = 1;
    } else {
        for (elem_t x = 0; x < q; ++x)
            vals[x] = static_cast<std::uint32_t>(ctx->pow(x, static_cast<std::int64_t>(e)));
    }
    return FuncTable(ctx, std::move(vals));
}

FuncTable piecewise_two(const FuncTable& f, const FuncTable& g, std::uint32_t s) {
    if (!f.same_ctx(g)) fail(Errc::MixedFields, "piecewise pieces live in different fields");
    FieldRef ctx = f.ctx();
    auto view = ctx->subfield(s);
    require_closed(f, *view, "piecewise_two: f");
    std::vector<std::uint32_t> vals(g.values());
    for (elem_t x : view->elements()) vals[x] = f(x);
    return FuncTable(ctx, std::move(vals));
}

FuncTable piecewise_three(const FuncTable& f, const FuncTable& g, const FuncTable& h,
                          std::uint32_t s, std::uint32_t t) {
    if (!f.same_ctx(g) || !f.same_ctx(h))
        fail(Errc::MixedFields, "piecewise pieces live in different fields");
    if (std::gcd(s, t) != 1)
        fail(Errc::NonCoprimeDegrees, "piecewise_three needs gcd(s, t) = 1");
    FieldRef ctx = f.ctx();
    auto vs = ctx->subfield(s);
    auto vt = ctx->subfield(t);
    require_closed(f, *vt, "piecewise_three: f");
    require_closed(g, *vs, "piecewise_three: g");
    std::vector<std::uint32_t> vals(h.values());
    for (elem_t x : vs->elements()) vals[x] = g(x);
    for (elem_t x : vt->elements()) vals[x] = f(x);
    return FuncTable(ctx, std::move(vals));
}

FuncTable piecewise_chain(const PieceSpec& spec) {
    const std::size_t t = spec.ks.size();
    if (t == 0 || spec.fs.size() != t)
        fail(Errc::BadChain, "chain needs matching nonempty degree and piece lists");
    for (std::size_t i = 0; i + 1 < t; ++i) {
        if (spec.ks[i] >= spec.ks[i + 1] || spec.ks[i + 1] % spec.ks[i] != 0)
            fail(Errc::BadChain, "chain degrees must strictly increase and divide the next");
    }
    FieldRef ctx = spec.fs[0].ctx();
    for (std::size_t i = 1; i < t; ++i)
        if (!spec.fs[0].same_ctx(spec.fs[i]))
            fail(Errc::MixedFields, "chain pieces live in different fields");
    if (spec.ks.back() != ctx->n())
        fail(Errc::BadChain, "chain must end at the full field degree");
    for (std::size_t i = 0; i + 1 < t; ++i)
        require_closed(spec.fs[i], *ctx->subfield(spec.ks[i]), "piecewise_chain: piece");
    // First match wins, so paint from the outermost piece inwards.
    std::vector<std::uint32_t> vals(spec.fs[t - 1].values());
    for (std::size_t i = t - 1; i-- > 0;) {
        for (elem_t x : ctx->subfield(spec.ks[i])->elements()) vals[x] = spec.fs[i](x);
    }
    return FuncTable(ctx, std::move(vals));
}

FuncTable gold_shift(FieldRef ctx, std::uint32_t s, std::uint32_t k, elem_t alpha) {
    require_char2(*ctx, "gold_shift");
    if (alpha == 0) fail(Errc::AlphaZero, "gold_shift needs a nonzero shift");
    if (!ctx->in_subfield(alpha, s))
        fail(Errc::AlphaOutsideSubfield, "gold_shift needs the shift inside the subfield");
    FuncTable base = gold(ctx, k);
    std::vector<std::uint32_t> vals(base.values());
    for (elem_t x : ctx->subfield(s)->elements())
        vals[x] = static_cast<std::uint32_t>(ctx->add(vals[x], alpha));
    return FuncTable(ctx, std::move(vals));
}

FuncTable concat(const DualProjection& proj, const std::vector<FuncTable>& fs) {
    FieldRef ctx = proj.ctx();
    const std::uint32_t m = proj.degree();
    if (fs.size() != m)
        fail(Errc::InvalidArgument, "concat needs one piece per basis element");
    auto view = ctx->subfield(proj.s());
    for (const auto& f : fs) {
        if (!f.same_ctx(fs[0]) || f.ctx().get() != ctx.get())
            fail(Errc::MixedFields, "concat pieces live in different fields");
        require_closed(f, *view, "concat: piece");
    }
    const elem_t q = ctx->order();
    std::vector<std::uint32_t> vals(q);
    for (elem_t x = 0; x < q; ++x) {
        elem_t acc = 0;
        for (std::uint32_t kk = 0; kk < m; ++kk) {
            elem_t xk = proj.project(x, kk);
            if (!view->contains(xk))
                fail(Errc::BaseFieldMismatch, "dual projection left the base subfield");
            acc = ctx->add(acc, ctx->mul(proj.basis()[kk], fs[kk](xk)));
        }
        vals[x] = static_cast<std::uint32_t>(acc);
    }
    return FuncTable(ctx, std::move(vals));
}

}  // namespace cons
}  // namespace cdu
