// Acceptance gate for the whole laboratory: one check per published
// guarantee, each printed as a single PASS/FAIL line with its runtime.
// Exits 0 only when every check passes. Checks recompute everything from
// scratch; none of them trusts cached results or prior runs.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "cdu/constructions.hpp"
#include "cdu/ddt.hpp"
#include "cdu/errors.hpp"
#include "cdu/field.hpp"
#include "cdu/func.hpp"
#include "cdu/verify.hpp"
#include "oracles.hpp"

using namespace cdu;

namespace {

const verify::RunConfig kCfg{};

bool fail_note(std::string& note, std::string why) {
    note = std::move(why);
    return false;
}

// 1. Engine tables against the direct-definition oracle.
bool check_oracle_equivalence(std::string& note) {
    for (auto [p, n] : {std::pair{2u, 4u}, {3u, 2u}}) {
        auto K = make_field(p, n);
        std::mt19937_64 rng(100 * p + n);
        for (int trial = 0; trial < 25; ++trial) {
            FuncTable F = oracle::random_table(K, rng);
            for (elem_t c = 0; c < K->order(); ++c) {
                DdtTable fast = c_ddt(F, c);
                auto slow = oracle::table(F, c);
                for (elem_t a = 0; a < K->order(); ++a)
                    for (elem_t b = 0; b < K->order(); ++b)
                        if (fast.at(a, b) != slow[a][b])
                            return fail_note(note, "count mismatch at p=" + std::to_string(p));
                if (c_uniformity(F, c, 1, 0).delta != oracle::uniformity(F, c))
                    return fail_note(note, "uniformity mismatch at p=" + std::to_string(p));
            }
        }
    }
    note = "25 random tables over each of GF(16) and GF(9), every c";
    return true;
}

// 2. Ambient gold uniformity never exceeds 2^gcd(k,n) + 1 off c in {0,1}.
bool check_gold_ceiling(std::string& note) {
    std::uint64_t scanned = 0;
    for (std::uint32_t n = 4; n <= 10; ++n) {
        auto K = make_field(2, n);
        for (std::uint32_t k = 1; k < n; ++k) {
            FuncTable F = cons::gold(K, k);
            const std::uint32_t bound = (1u << std::gcd(k, n)) + 1;
            for (elem_t c = 2; c < K->order(); ++c) {
                ++scanned;
                const std::uint32_t d = c_uniformity(F, c, 1, 0).delta;
                if (d > bound)
                    return fail_note(note, "n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                               " c=" + std::to_string(c) + ": delta " +
                                               std::to_string(d) + " > " + std::to_string(bound));
            }
        }
    }
    note = std::to_string(scanned) + " (n,k,c) points";
    return true;
}

// 3. Shifted gold stays within 9 for every subfield shift and every c != 1.
bool check_shift_ceiling_9(std::string& note) {
    struct Grid {
        std::uint32_t n;
        std::vector<std::uint32_t> ss, ks;
    };
    const std::vector<Grid> grids = {{6, {2, 3}, {1, 5}}, {8, {2, 4}, {1, 3, 5, 7}}};
    std::size_t claims = 0;
    for (const auto& [n, ss, ks] : grids) {
        auto K = make_field(2, n);
        for (auto s : ss)
            for (auto k : ks) {
                if (!verify::pante_gold_bound(K, s, k, std::nullopt, kCfg).pass)
                    return fail_note(note, "failed at n=" + std::to_string(n) +
                                               " s=" + std::to_string(s) +
                                               " k=" + std::to_string(k));
                ++claims;
            }
    }
    note = std::to_string(claims) + " (n,s,k) instances, all shifts, all c != 1";
    return true;
}

// 4. Shifted gold over odd n: within 6; within 5 once 3 does not divide m.
bool check_shift_ceiling_65(std::string& note) {
    auto K9 = make_field(2, 9);
    if (!verify::gold_56_bound(K9, 3, 1, std::nullopt, false, kCfg).pass)
        return fail_note(note, "ceiling 6 failed at n=9");
    auto K15 = make_field(2, 15);
    const elem_t alpha = K15->subfield(3)->elements()[1];
    auto rep = verify::gold_56_bound(K15, 3, 1, alpha, true, kCfg);
    if (!rep.pass) return fail_note(note, "ceiling 5 failed at n=15");
    note = "n=9 all shifts ceiling 6; n=15 shift " + std::to_string(alpha) +
           " ceiling 5, max observed " + std::to_string(rep.max_observed());
    return true;
}

// 5. Shifted gold with t = gcd(n,k) dividing s: within 3 on F_{2^t} \ {1}.
bool check_shift_ceiling_3(std::string& note) {
    auto rep = verify::gold_pcn_t_bound(make_field(2, 9), 3, 3, std::nullopt, kCfg);
    if (!rep.pass) return fail_note(note, "ceiling 3 failed at n=9 k=3");
    note = "n=9 k=3, all shifts; max observed " + std::to_string(rep.max_observed());
    return true;
}

// 6. gold(12,2): uniformity 4 at c=1, and the c=1 equation with data in the
// s=4 subfield has no solutions outside it.
bool check_gold12_scan(std::string& note) {
    auto K = make_field(2, 12);
    FuncTable F = cons::gold(K, 2);
    const std::uint32_t d1 = c_uniformity(F, 1, 1, 0).delta;
    if (d1 != 4) return fail_note(note, "delta at c=1 is " + std::to_string(d1) + ", wanted 4");
    if (!verify::prop_sub(F, 4, kCfg).pass) return fail_note(note, "scan found violations");
    if (!verify::prop_gold(K, 4, 2, kCfg).pass)
        return fail_note(note, "gold-form scan found violations");
    note = "delta(F,1)=4 verified, both scan forms clean";
    return true;
}

// 7. gold(15,1), s=3: every c in F_8 \ {1} passing the prime condition
// admits no outside solutions (a = 0 rows included).
bool check_gold15_scan(std::string& note) {
    auto K = make_field(2, 15);
    std::vector<elem_t> cs;
    for (elem_t c : K->subfield(3)->elements())
        if (c != 1) cs.push_back(c);
    auto rep = verify::prop_cdiffh2(cons::gold(K, 1), 3, cs, kCfg);
    if (!rep.pass) return fail_note(note, "scan found violations");
    std::size_t qualifying = 0;
    for (const auto& cc : rep.cases)
        if (!cc.skipped) ++qualifying;
    note = std::to_string(qualifying) + " of " + std::to_string(cs.size()) + " c qualified";
    return true;
}

// 8. Piecewise inversion: permutation + uniformity + nonlinearity at n=6,
// algebraic degree n-1 at n=18 (uniformity at n=18 deliberately not scanned).
bool check_piecewise_inversion(std::string& note) {
    verify::KasamiChecks small;
    small.degree = false;  // no degree statement applies at s = 2
    if (!verify::kasami_check(make_field(2, 6), 2, 2, 1, 5, small, kCfg).pass)
        return fail_note(note, "an n=6 instance failed");
    verify::KasamiChecks big{false, false, true, false};
    if (!verify::kasami_check(make_field(2, 18), 6, 2, 1, 1, big, kCfg).pass)
        return fail_note(note, "the n=18 degree check failed");
    note = "n=6: 5 instances permutation/uniformity/nonlinearity; n=18: degree 17";
    return true;
}

// 9. Coordinate-wise products multiply the piece uniformities exactly.
bool check_concat_exactness(std::string& note) {
    auto K49 = make_field(7, 2);
    bool pcn_seen = false;
    for (std::uint64_t e1 : {2, 3, 5})
        for (std::uint64_t e2 : {2, 3, 5}) {
            auto rep = verify::concat_exact(
                K49, 1, {cons::power_map(K49, e1), cons::power_map(K49, e2)}, kCfg);
            if (!rep.pass)
                return fail_note(note, "inexact at exponents " + std::to_string(e1) + "," +
                                           std::to_string(e2));
            if (e1 == 5 && e2 == 5)
                for (const auto& cc : rep.cases)
                    if (cc.c == 0) {
                        if (cc.observed != 1 || cc.note.find("PcN") == std::string::npos)
                            return fail_note(note, "product-one case not flagged");
                        pcn_seen = true;
                    }
        }
    if (!pcn_seen) return fail_note(note, "expected a product-one case at c=0");

    auto K16 = make_field(2, 4);
    if (!verify::concat_exact(K16, 2, {cons::power_map(K16, 2), cons::power_map(K16, 3)}, kCfg)
             .pass)
        return fail_note(note, "binary instance inexact");
    auto sq = verify::concat_exact(K16, 2, {cons::power_map(K16, 2), cons::power_map(K16, 2)},
                                   kCfg);
    if (!sq.pass) return fail_note(note, "binary square instance inexact");
    for (const auto& cc : sq.cases)
        if (cc.observed != 1) return fail_note(note, "binary square instance not product-one");
    note = "9 pairs over GF(49) and 2 over GF(16), equality in every case";
    return true;
}

// 10. Randomized piecewise instances: every construction's observed
// uniformity within its computed bound; the scan routing exercised both ways.
bool check_randomized_bounds(std::string& note) {
    std::mt19937_64 rng(20260819);
    std::size_t instances = 0;

    struct TwoPiecePlan {
        std::uint32_t p, n, s;
    };
    const TwoPiecePlan plans[] = {{2, 4, 1}, {2, 4, 2}, {2, 6, 1}, {2, 6, 2},
                                  {2, 6, 3}, {3, 2, 1}, {3, 4, 1}, {3, 4, 2}};
    // two-piece and its c = 0 arm
    for (int trial = 0; trial < 40; ++trial) {
        const auto& pl = plans[trial % std::size(plans)];
        auto K = make_field(pl.p, pl.n);
        FuncTable f = oracle::random_closed(K, pl.s, rng);
        FuncTable g = oracle::random_table(K, rng);
        elem_t c = 2 + rng() % (K->order() - 2);
        if (!verify::two_piece_bound(f, g, pl.s, c, kCfg).pass)
            return fail_note(note, "two-piece bound failed");
        if (trial % 4 == 0 && !verify::two_piece_c0(f, g, pl.s, kCfg).pass)
            return fail_note(note, "two-piece c=0 bound failed");
        ++instances;
    }
    // nested chains
    auto K16 = make_field(2, 4);
    auto K64 = make_field(2, 6);
    for (int trial = 0; trial < 10; ++trial) {
        cons::PieceSpec spec;
        if (trial % 2) {
            spec.ks = {1, 2, 4};
            spec.fs = {oracle::random_closed(K16, 1, rng), oracle::random_closed(K16, 2, rng),
                       oracle::random_table(K16, rng)};
        } else {
            spec.ks = trial % 4 ? std::vector<std::uint32_t>{1, 2, 6}
                                : std::vector<std::uint32_t>{1, 3, 6};
            spec.fs = {oracle::random_closed(K64, 1, rng),
                       oracle::random_closed(K64, spec.ks[1], rng),
                       oracle::random_table(K64, rng)};
        }
        elem_t c = 2 + rng() % (spec.fs[0].ctx()->order() - 2);
        if (!verify::chain_bound(spec, c, kCfg).pass)
            return fail_note(note, "chain bound failed");
        ++instances;
    }
    // reduced form: outer piece with subfield coefficients
    for (int trial = 0; trial < 50; ++trial) {
        const auto& pl = plans[trial % std::size(plans)];
        auto K = make_field(pl.p, pl.n);
        FuncTable f = oracle::random_closed(K, pl.s, rng);
        FuncTable g = oracle::random_subfield_poly(K, pl.s, 8, rng);
        elem_t c = 2 + rng() % (K->order() - 2);
        if (!verify::reduce_bound(f, g, pl.s, c, kCfg).pass)
            return fail_note(note, "reduced bound failed");
        ++instances;
    }
    // three-piece splits
    struct ThreePlan {
        std::uint32_t p, n, s, t;
    };
    const ThreePlan tplans[] = {{2, 6, 2, 3}, {2, 6, 3, 2}, {3, 2, 2, 1}, {3, 4, 4, 1}};
    for (int trial = 0; trial < 50; ++trial) {
        const auto& pl = tplans[trial % std::size(tplans)];
        auto K = make_field(pl.p, pl.n);
        FuncTable f = oracle::random_closed(K, pl.t, rng);
        FuncTable g = oracle::random_closed(K, pl.s, rng);
        FuncTable h = oracle::random_table(K, rng);
        elem_t c = trial % 5 ? 2 + rng() % (K->order() - 2) : 0;
        if (!verify::three_piece_bound(f, g, h, pl.s, pl.t, c, kCfg).pass)
            return fail_note(note, "three-piece bound failed");
        ++instances;
    }
    // per-entry routing, driven through outer pieces with and without clean scans
    std::size_t strict_routes = 0, relaxed_routes = 0;
    const FuncTable pool[] = {cons::inverse_perm(K64), cons::kasami(K64, 2), cons::gold(K64, 1)};
    const elem_t cpool[] = {0, 58, 59};
    for (int trial = 0; trial < 54; ++trial) {
        const FuncTable& g = pool[trial % 3];
        const elem_t c = cpool[(trial / 3) % 3];
        FuncTable f = oracle::random_closed(K64, 2, rng);
        auto rep = verify::route_two_piece(f, g, 2, c, kCfg);
        if (!rep.pass) return fail_note(note, "routed per-entry bound failed");
        if (rep.claim == "THM_MAIN") ++strict_routes;
        if (rep.claim == "RM_NOH2") ++relaxed_routes;
        ++instances;
    }
    if (strict_routes == 0 || relaxed_routes == 0)
        return fail_note(note, "routing was not exercised both ways");
    note = std::to_string(instances) + " instances, every observed within bound; routes " +
           std::to_string(strict_routes) + " strict / " + std::to_string(relaxed_routes) +
           " relaxed";
    return true;
}

// 11. Structural invariants: row sums, c=0 histogram invariance, even counts,
// spectrum energy, projection reconstruction.
bool check_invariants(std::string& note) {
    std::mt19937_64 rng(11);
    for (auto [p, n] : {std::pair{2u, 4u}, {2u, 3u}, {3u, 2u}}) {
        auto K = make_field(p, n);
        const elem_t q = K->order();
        std::vector<FuncTable> fns{cons::power_map(K, 3), FuncTable::identity(K),
                                   oracle::random_table(K, rng), oracle::random_table(K, rng)};
        for (const auto& F : fns)
            for (elem_t c = 0; c < q; ++c) {
                DdtTable T = c_ddt(F, c);
                std::vector<std::uint64_t> hist0;
                for (elem_t a = 0; a < q; ++a) {
                    std::uint64_t sum = 0;
                    for (elem_t b = 0; b < q; ++b) sum += T.at(a, b);
                    if (sum != q) return fail_note(note, "a row does not sum to q");
                    if (c == 0) {
                        std::vector<std::uint64_t> hist(T.row(a), T.row(a) + q);
                        std::sort(hist.begin(), hist.end());
                        if (a == 0)
                            hist0 = hist;
                        else if (hist != hist0)
                            return fail_note(note, "c=0 rows have different histograms");
                    }
                    if (p == 2 && c == 1 && a != 0)
                        for (elem_t b = 0; b < q; ++b)
                            if (T.at(a, b) % 2)
                                return fail_note(note, "odd count at p=2, c=1, a!=0");
                }
            }
    }
    // spectrum energy: sum of squares over a is q^2 for every b
    for (std::uint32_t n : {3u, 4u, 5u}) {
        auto K = make_field(2, n);
        const std::int64_t q = (std::int64_t)K->order();
        for (const auto& F : {cons::gold(K, 1), oracle::random_table(K, rng)}) {
            auto spectrum = walsh(F);
            for (elem_t b = 0; b < (elem_t)q; ++b) {
                std::int64_t energy = 0;
                for (elem_t a = 0; a < (elem_t)q; ++a)
                    energy += spectrum[b][a] * spectrum[b][a];
                if (energy != q * q) return fail_note(note, "spectrum energy off at n=" +
                                                                std::to_string(n));
            }
        }
    }
    // projection reconstruction: x = sum_k beta_k L_k(x), exhaustively
    for (auto [p, n, s] : {std::tuple{2u, 6u, 2u},
                           {2u, 6u, 3u},
                           {2u, 8u, 2u},
                           {2u, 8u, 4u},
                           {2u, 12u, 2u},
                           {2u, 12u, 3u},
                           {2u, 12u, 4u},
                           {2u, 12u, 6u},
                           {3u, 4u, 2u}}) {
        auto K = make_field(p, n);
        const DualProjection& proj = K->subfield(s)->projection();
        for (elem_t x = 0; x < K->order(); ++x) {
            elem_t acc = 0;
            for (std::uint32_t k = 0; k < proj.degree(); ++k)
                acc = K->add(acc, K->mul(proj.basis()[k], proj.project(x, k)));
            if (acc != x)
                return fail_note(note, "reconstruction failed over GF(" + std::to_string(p) +
                                           "^" + std::to_string(n) + ")");
        }
    }
    note = "row sums, c=0 histograms, parity, energy, reconstruction";
    return true;
}

}  // namespace

int main() {
    struct Item {
        const char* what;
        bool (*fn)(std::string&);
    };
    const Item items[] = {
        {"difference tables match the direct-definition oracle", check_oracle_equivalence},
        {"gold uniformity within 2^gcd(k,n)+1 for c outside {0,1}, n=4..10",
         check_gold_ceiling},
        {"shifted gold within 9 for all subfield shifts and c != 1",
         check_shift_ceiling_9},
        {"shifted gold over odd n within 6, and within 5 when 3 does not divide m",
         check_shift_ceiling_65},
        {"shifted gold with t = gcd(n,k) | s within 3 on the degree-t subfield",
         check_shift_ceiling_3},
        {"gold(12,2): uniformity 4 at c=1 and a clean s=4 outside-solution scan",
         check_gold12_scan},
        {"gold(15,1): clean outside-solution scans for every qualifying c",
         check_gold15_scan},
        {"piecewise inversion: permutation, uniformity, nonlinearity, degree",
         check_piecewise_inversion},
        {"coordinate-wise products multiply piece uniformities exactly",
         check_concat_exactness},
        {"randomized piecewise instances stay within their computed bounds",
         check_randomized_bounds},
        {"table, spectrum, and projection invariants", check_invariants},
    };

    bool all = true;
    int idx = 1;
    for (const auto& item : items) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = item.fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%2d] %s %s (%.1fs)%s%s\n", idx, ok ? "PASS" : "FAIL", item.what, secs,
                    detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        all = all && ok;
        ++idx;
    }
    std::printf("%s\n", all ? "acceptance: every check passed"
                            : "acceptance: FAILURES listed above");
    return all ? 0 : 1;
}
