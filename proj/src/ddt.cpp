#include "cdu/ddt.hpp"

#include <algorithm>
#include <cstring>

#include "cdu/errors.hpp"
#include "cdu/pool.hpp"

namespace cdu {

namespace {

constexpr std::size_t kRowCap = 8;       // attaining rows tracked per scan
constexpr std::uint64_t kMaxBlocks = 64;  // fixed so results ignore worker count

// counts[b] = #solutions of F(x + a) - c F(x) = b for one row a, given the
// premultiplied table cf[x] = c * F(x). Returns the row maximum.
std::uint32_t fill_row(const Field& K, const std::uint32_t* Fv, const std::uint32_t* cf,
                       elem_t q, elem_t a, std::uint32_t* counts) {
    std::memset(counts, 0, q * sizeof(std::uint32_t));
    std::uint32_t best = 0;
    if (K.p() == 2) {
        for (elem_t x = 0; x < q; ++x) {
            std::uint32_t t = ++counts[Fv[x ^ a] ^ cf[x]];
            if (t > best) best = t;
        }
    } else {
        for (elem_t x = 0; x < q; ++x) {
            std::uint32_t t = ++counts[K.sub(Fv[K.add(x, a)], cf[x])];
            if (t > best) best = t;
        }
    }
    return best;
}

std::vector<std::uint32_t> scale_table(const Field& K, const std::uint32_t* Fv, elem_t q,
                                       elem_t c) {
    std::vector<std::uint32_t> cf(q, 0);
    if (c == 0) return cf;
    if (c == 1) {
        std::copy(Fv, Fv + q, cf.begin());
        return cf;
    }
    for (elem_t x = 0; x < q; ++x) cf[x] = static_cast<std::uint32_t>(K.mul(c, Fv[x]));
    return cf;
}

void require_c(const FuncTable& F, elem_t c) {
    if (!F.ctx()->is_valid(c)) fail(Errc::InvalidArgument, "c is not a field element");
}

struct BlockScan {
    std::uint32_t best = 0;
    std::vector<elem_t> rows;  // first rows attaining best, ascending, capped
    std::uint32_t a0max = 0;
    bool has_a0 = false;
};

// p = 2 only: bitmask m with Tr(z) = parity(z & m).
std::uint64_t trace_mask(const Field& K) {
    std::uint64_t mask = 0;
    for (std::uint32_t j = 0; j < K.n(); ++j)
        if (K.trace(elem_t{1} << j) & 1) mask |= std::uint64_t{1} << j;
    return mask;
}

void fwht(std::vector<std::int64_t>& v) {
    const std::size_t sz = v.size();
    for (std::size_t step = 1; step < sz; step <<= 1) {
        for (std::size_t i = 0; i < sz; i += step << 1) {
            for (std::size_t j = i; j < i + step; ++j) {
                std::int64_t u = v[j], w = v[j + step];
                v[j] = u + w;
                v[j + step] = u - w;
            }
        }
    }
}

// hat[u] = sum_x (-1)^(Tr(b F(x)) + popcount(u & x)); W(a, b) = hat[umap(a)].
void component_raw(const Field& K, const std::uint32_t* Fv, elem_t q, elem_t b,
                   std::uint64_t tmask, std::vector<std::int64_t>& hat) {
    hat.assign(q, 0);
    for (elem_t x = 0; x < q; ++x) {
        std::uint64_t y = K.mul(b, Fv[x]) & tmask;
        hat[x] = (__builtin_popcountll(y) & 1) ? -1 : 1;
    }
    fwht(hat);
}

std::vector<elem_t> phase_reindex(const Field& K, std::uint64_t tmask) {
    const elem_t q = K.order();
    std::vector<elem_t> umap(q);
    for (elem_t a = 0; a < q; ++a) {
        elem_t u = 0;
        for (std::uint32_t j = 0; j < K.n(); ++j) {
            std::uint64_t y = K.mul(a, elem_t{1} << j) & tmask;
            u |= static_cast<elem_t>(__builtin_popcountll(y) & 1) << j;
        }
        umap[a] = u;
    }
    return umap;
}

}  // namespace

std::uint32_t DdtTable::row_max(elem_t a) const {
    const std::uint32_t* r = row(a);
    return *std::max_element(r, r + q_);
}

std::uint32_t DdtTable::delta() const {
    std::uint32_t best = 0;
    for (elem_t a = (c_ == 1) ? 1 : 0; a < q_; ++a) best = std::max(best, row_max(a));
    return best;
}

DdtTable c_ddt(const FuncTable& F, elem_t c, std::uint64_t cap) {
    require_c(F, c);
    const Field& K = *F.ctx();
    const elem_t q = K.order();
    if (q > cap) fail(Errc::DomainTooLarge, "field too large for a materialized table");
    DdtTable table(q, c);
    auto cf = scale_table(K, F.data(), q, c);
    for (elem_t a = 0; a < q; ++a) fill_row(K, F.data(), cf.data(), q, a, &table.at(a, 0));
    return table;
}

std::vector<std::uint32_t> ddt_row(const FuncTable& F, elem_t c, elem_t a) {
    require_c(F, c);
    const Field& K = *F.ctx();
    const elem_t q = K.order();
    if (!K.is_valid(a)) fail(Errc::InvalidArgument, "a is not a field element");
    std::vector<std::uint32_t> counts(q);
    auto cf = scale_table(K, F.data(), q, c);
    fill_row(K, F.data(), cf.data(), q, a, counts.data());
    return counts;
}

std::uint32_t count_solutions(const FuncTable& F, elem_t c, elem_t a, elem_t b) {
    require_c(F, c);
    const Field& K = *F.ctx();
    const elem_t q = K.order();
    std::uint32_t hits = 0;
    for (elem_t x = 0; x < q; ++x)
        if (K.sub(F(K.add(x, a)), K.mul(c, F(x))) == b) ++hits;
    return hits;
}

std::vector<elem_t> solution_locus(const FuncTable& F, elem_t c, elem_t a, elem_t b) {
    require_c(F, c);
    const Field& K = *F.ctx();
    const elem_t q = K.order();
    std::vector<elem_t> xs;
    for (elem_t x = 0; x < q; ++x)
        if (K.sub(F(K.add(x, a)), K.mul(c, F(x))) == b) xs.push_back(x);
    return xs;
}

UniformityReport c_uniformity(const FuncTable& F, elem_t c, unsigned workers,
                              std::size_t witness_cap) {
    require_c(F, c);
    const Field& K = *F.ctx();
    const elem_t q = K.order();
    const std::uint32_t* Fv = F.data();
    auto cf = scale_table(K, Fv, q, c);

    const elem_t a_start = (c == 1) ? 1 : 0;
    const std::uint64_t nrows = q - a_start;
    const std::uint64_t nblocks = std::min<std::uint64_t>(nrows, kMaxBlocks);
    std::vector<BlockScan> scans(nblocks);

    parallel_for_blocks(nblocks, workers, [&](std::uint64_t blk) {
        const elem_t lo = a_start + static_cast<elem_t>(blk * nrows / nblocks);
        const elem_t hi = a_start + static_cast<elem_t>((blk + 1) * nrows / nblocks);
        std::vector<std::uint32_t> counts(q);
        BlockScan& out = scans[blk];
        for (elem_t a = lo; a < hi; ++a) {
            std::uint32_t m = fill_row(K, Fv, cf.data(), q, a, counts.data());
            if (a == 0) {
                out.a0max = m;
                out.has_a0 = true;
            }
            if (m > out.best) {
                out.best = m;
                out.rows.clear();
                out.rows.push_back(a);
            } else if (m == out.best && out.rows.size() < kRowCap) {
                out.rows.push_back(a);
            }
        }
    });

    UniformityReport rep;
    rep.c = c;
    rep.a0_excluded = (c == 1);
    for (const auto& s : scans) rep.delta = std::max(rep.delta, s.best);

    std::vector<elem_t> attaining;
    for (const auto& s : scans) {
        if (s.best != rep.delta) continue;
        for (elem_t a : s.rows) {
            if (attaining.size() >= kRowCap) break;
            attaining.push_back(a);
        }
        if (s.has_a0) rep.a0_attains_max = (s.a0max == rep.delta);
    }

    std::vector<std::uint32_t> counts(q);
    for (elem_t a : attaining) {
        if (rep.witnesses.size() >= witness_cap) break;
        fill_row(K, Fv, cf.data(), q, a, counts.data());
        for (elem_t b = 0; b < q && rep.witnesses.size() < witness_cap; ++b)
            if (counts[b] == rep.delta) rep.witnesses.emplace_back(a, b);
    }
    return rep;
}

std::vector<std::uint32_t> uniformity_profile(const FuncTable& F, unsigned workers) {
    const Field& K = *F.ctx();
    const elem_t q = K.order();
    const std::uint32_t* Fv = F.data();
    std::vector<std::uint32_t> profile(q, 0);

    const std::uint64_t nblocks = std::min<std::uint64_t>(q, kMaxBlocks);
    parallel_for_blocks(nblocks, workers, [&](std::uint64_t blk) {
        const elem_t lo = static_cast<elem_t>(blk * q / nblocks);
        const elem_t hi = static_cast<elem_t>((blk + 1) * q / nblocks);
        std::vector<std::uint32_t> counts(q);
        for (elem_t c = lo; c < hi; ++c) {
            auto cf = scale_table(K, Fv, q, c);
            std::uint32_t best = 0;
            for (elem_t a = (c == 1) ? 1 : 0; a < q; ++a)
                best = std::max(best, fill_row(K, Fv, cf.data(), q, a, counts.data()));
            profile[c] = best;
        }
    });
    return profile;
}

UniformityReport c_uniformity_on(const FuncTable& F, const SubfieldView& view, elem_t c,
                                 std::size_t witness_cap) {
    const Field& K = *F.ctx();
    if (view.ctx().get() != F.ctx().get())
        fail(Errc::MixedFields, "subfield view belongs to another field");
    if (!view.contains(c))
        fail(Errc::InvalidArgument, "restricted uniformity needs c inside the subfield");
    const auto& elems = view.elements();
    for (elem_t x : elems)
        if (!view.contains(F(x)))
            fail(Errc::SubfieldEscape, "function does not map the subfield into itself");

    const elem_t q = K.order();
    std::vector<std::uint32_t> pos(q, 0);
    for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = static_cast<std::uint32_t>(i);

    const std::size_t sq = elems.size();
    std::vector<std::uint32_t> counts(sq);
    auto row_scan = [&](elem_t a) {
        std::memset(counts.data(), 0, sq * sizeof(std::uint32_t));
        std::uint32_t best = 0;
        for (elem_t x : elems) {
            elem_t v = K.sub(F(K.add(x, a)), K.mul(c, F(x)));
            std::uint32_t t = ++counts[pos[v]];
            if (t > best) best = t;
        }
        return best;
    };

    UniformityReport rep;
    rep.c = c;
    rep.a0_excluded = (c == 1);
    const std::size_t a_from = (c == 1) ? 1 : 0;
    std::uint32_t a0max = 0;
    for (std::size_t i = a_from; i < sq; ++i) {
        std::uint32_t m = row_scan(elems[i]);
        if (i == 0) a0max = m;
        rep.delta = std::max(rep.delta, m);
    }
    rep.a0_attains_max = (c != 1) && a0max == rep.delta;
    for (std::size_t i = a_from; i < sq && rep.witnesses.size() < witness_cap; ++i) {
        elem_t a = elems[i];
        if (row_scan(a) != rep.delta) continue;
        for (std::size_t j = 0; j < sq && rep.witnesses.size() < witness_cap; ++j)
            if (counts[j] == rep.delta) rep.witnesses.emplace_back(a, elems[j]);
    }
    return rep;
}

OutsideScanReport outside_solutions(const FuncTable& F, const SubfieldView& view, elem_t c,
                                    bool include_a0, std::size_t sample_cap) {
    require_c(F, c);
    const Field& K = *F.ctx();
    if (view.ctx().get() != F.ctx().get())
        fail(Errc::MixedFields, "subfield view belongs to another field");
    const elem_t q = K.order();
    OutsideScanReport rep;
    rep.c = c;
    rep.a0_included = include_a0;
    for (elem_t a : view.elements()) {
        if (a == 0 && !include_a0) continue;
        rep.checked_pairs += view.elements().size();
        for (elem_t x = 0; x < q; ++x) {
            if (view.contains(x)) continue;
            elem_t v = K.sub(F(K.add(x, a)), K.mul(c, F(x)));
            if (!view.contains(v)) continue;
            ++rep.violations;
            if (rep.samples.size() < sample_cap) rep.samples.push_back({a, v, x});
        }
    }
    return rep;
}

std::vector<std::vector<std::int64_t>> walsh(const FuncTable& F, std::uint64_t cap) {
    const Field& K = *F.ctx();
    if (K.p() != 2) fail(Errc::OddCharacteristic, "Walsh spectrum needs characteristic 2");
    const elem_t q = K.order();
    if (q > cap) fail(Errc::DomainTooLarge, "field too large for a materialized spectrum");
    const std::uint64_t tmask = trace_mask(K);
    auto umap = phase_reindex(K, tmask);
    std::vector<std::vector<std::int64_t>> spectrum(q);
    std::vector<std::int64_t> hat;
    for (elem_t b = 0; b < q; ++b) {
        component_raw(K, F.data(), q, b, tmask, hat);
        auto& out = spectrum[b];
        out.resize(q);
        for (elem_t a = 0; a < q; ++a) out[a] = hat[umap[a]];
    }
    return spectrum;
}

std::vector<std::int64_t> walsh_component(const FuncTable& F, elem_t b) {
    const Field& K = *F.ctx();
    if (K.p() != 2) fail(Errc::OddCharacteristic, "Walsh spectrum needs characteristic 2");
    require_c(F, b);
    const elem_t q = K.order();
    const std::uint64_t tmask = trace_mask(K);
    auto umap = phase_reindex(K, tmask);
    std::vector<std::int64_t> hat;
    component_raw(K, F.data(), q, b, tmask, hat);
    std::vector<std::int64_t> out(q);
    for (elem_t a = 0; a < q; ++a) out[a] = hat[umap[a]];
    return out;
}

std::uint64_t nonlinearity(const FuncTable& F, unsigned workers) {
    const Field& K = *F.ctx();
    if (K.p() != 2) fail(Errc::OddCharacteristic, "nonlinearity needs characteristic 2");
    const elem_t q = K.order();
    const std::uint64_t tmask = trace_mask(K);

    const std::uint64_t nblocks = std::min<std::uint64_t>(q - 1, kMaxBlocks);
    std::vector<std::int64_t> blockmax(nblocks, 0);
    parallel_for_blocks(nblocks, workers, [&](std::uint64_t blk) {
        const elem_t lo = 1 + static_cast<elem_t>(blk * (q - 1) / nblocks);
        const elem_t hi = 1 + static_cast<elem_t>((blk + 1) * (q - 1) / nblocks);
        std::vector<std::int64_t> hat;
        std::int64_t best = 0;
        for (elem_t b = lo; b < hi; ++b) {
            component_raw(K, F.data(), q, b, tmask, hat);
            for (elem_t u = 0; u < q; ++u) best = std::max(best, std::abs(hat[u]));
        }
        blockmax[blk] = best;
    });
    std::int64_t m = 0;
    for (auto v : blockmax) m = std::max(m, v);
    return q / 2 - static_cast<std::uint64_t>(m) / 2;
}

}  // namespace cdu
