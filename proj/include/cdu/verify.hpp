#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cdu/constructions.hpp"
#include "cdu/ddt.hpp"
#include "json.hpp"

namespace cdu {
namespace verify {

struct RunConfig {
    unsigned workers = 1;
    std::size_t witness_cap = 16;
    std::uint64_t ddt_cap = 1ull << 12;
    std::uint64_t interp_cap = 1ull << 12;
    std::uint64_t logtable_cap = 1ull << 20;
    std::uint64_t default_seed = 1;  // for sampled checks whose claim omits one
};

struct HypothesisCheck {
    std::string name;
    bool holds = false;
    std::string note;
};

// One verified inequality (or equality, or clean-scan) instance. Skipped
// cases record instances whose premises exclude them; they never fail a
// claim on their own.
struct ClaimCase {
    elem_t c = 0;
    std::uint64_t observed = 0;
    std::uint64_t bound = 0;
    std::string relation = "<=";  // how observed must compare: "<=", "==", ">="
    bool pass = false;
    bool skipped = false;
    std::string note;
};

struct ClaimReport {
    std::string claim;
    bool pass = false;
    std::vector<HypothesisCheck> hypotheses;
    std::vector<ClaimCase> cases;
    std::string details;

    std::uint64_t max_observed() const;
    // Smallest bound - observed over checked inequality cases; slack is
    // reported, never asserted.
    std::int64_t min_slack() const;
};

nlohmann::json to_json(const ClaimReport& rep);

// True iff F commutes with the Frobenius of the subfield, i.e.
// F(x^(p^s)) = F(x)^(p^s) for all x — exactly the functions given by
// polynomials with coefficients in the subfield.
bool coeffs_in_subfield(const FuncTable& F, const SubfieldView& view);

struct H1H2Report {
    bool h1 = false;
    bool h2 = false;
    OutsideScanReport h1_scan;
    OutsideScanReport h2_scan;
};
// (H1): g(x+a) - g(x) = b with a in the subfield minus 0, b in the subfield,
// never has a solution outside the subfield. (H2): the same for
// g(x+a) - c g(x) with a = 0 included.
H1H2Report check_h1_h2(const FuncTable& g, const SubfieldView& view, elem_t c);

// The raw no-outside-solution scan with F's subfield-coefficient test
// enforced (CoefficientsNotInSubfield) and premise flags recorded, passing
// iff the scan is clean.
struct OutsideCheck {
    bool pass = false;
    OutsideScanReport scan;
    std::vector<HypothesisCheck> flags;
};
OutsideCheck check_no_outside_solutions(const FuncTable& F, std::uint32_t s, elem_t c,
                                        bool include_a0);

// --- claim checkers -------------------------------------------------------
// Each builds the construction, computes every bound ingredient
// exhaustively, and checks observed against the bound. Structural premises
// that fail raise HypothesisViolation naming the premise.

// THM_T2_TWO_PIECE: c not in {0,1}; F = f on the subfield, g outside;
// bound max{d(f,c1) + d(g,c), d(g,c) + 2 p^s d(g,0)}.
ClaimReport two_piece_bound(const FuncTable& f, const FuncTable& g, std::uint32_t s, elem_t c,
                            const RunConfig& cfg = {});

// THM_T2_C0: the c = 0 branch, bound d(f,0) + d(g,0).
ClaimReport two_piece_c0(const FuncTable& f, const FuncTable& g, std::uint32_t s,
                         const RunConfig& cfg = {});

// THM_T2_CHAIN: nested chain; the stated bound's tail sum and the
// proof-unrolled tail sum are both computed, checked against the larger,
// and reported side by side.
ClaimReport chain_bound(const cons::PieceSpec& spec, elem_t c, const RunConfig& cfg = {});

// REMARK_REDUCE: g with subfield coefficients, c not in {0,1};
// bound max{d(f,c1) + d(g,c), d(g,c) + 2 d(g, c^(p^s-1))}.
ClaimReport reduce_bound(const FuncTable& f, const FuncTable& g, std::uint32_t s, elem_t c,
                         const RunConfig& cfg = {});

// THM_THREE_PIECE: n = s*t coprime; f on F_{p^t}, g on the rest of F_{p^s},
// h outside. c = 0 checks the stated and the symmetric reading against the
// larger; c != 0 takes the four-arm max.
ClaimReport three_piece_bound(const FuncTable& f, const FuncTable& g, const FuncTable& h,
                              std::uint32_t s, std::uint32_t t, elem_t c,
                              const RunConfig& cfg = {});

// THM_MAIN: per-entry bound, c in the subfield minus {1}, g with subfield
// coefficients, (H1) and (H2) required: rows with a in the subfield obey
// max{d(f,c), d(g,c)}, rows outside obey d(g,c) + 2 d(g,0).
ClaimReport main_per_entry(const FuncTable& f, const FuncTable& g, std::uint32_t s, elem_t c,
                           const RunConfig& cfg = {});

// RM_NOH2: same setting with (H2) dropped ((H1) kept): subfield rows obey
// d(f,c) + d(g,c) instead.
ClaimReport noh2_per_entry(const FuncTable& f, const FuncTable& g, std::uint32_t s, elem_t c,
                           const RunConfig& cfg = {});

// THM_CALDESIM: p = 2, c = 1; f, g with subfield coefficients, g permuting
// the subfield, no integer in [2, max(2, d(g,1)/2)] dividing m: subfield
// rows obey max{d(f,1), d(g,1)}, outside rows d(g,1) + 2.
ClaimReport caldesim_per_entry(const FuncTable& f, const FuncTable& g, std::uint32_t s,
                               const RunConfig& cfg = {});

// Dispatcher used when a per-entry claim's scan hypotheses are not given:
// c = 0 -> THM_T2_C0; c in subfield, subfield-coefficient g with (H1)+(H2)
// -> THM_MAIN, with (H1) only -> RM_NOH2; otherwise REMARK_REDUCE when g
// has subfield coefficients, THM_T2_TWO_PIECE when not.
ClaimReport route_two_piece(const FuncTable& f, const FuncTable& g, std::uint32_t s, elem_t c,
                            const RunConfig& cfg = {});

// THM_PANTE_GOLD: gcd(k,n) = 1, alpha in the subfield minus 0 (all of them
// when unset): delta <= 9 for every c != 1.
ClaimReport pante_gold_bound(FieldRef ctx, std::uint32_t s, std::uint32_t k,
                             std::optional<elem_t> alpha, const RunConfig& cfg = {});

// THM_GOLD_PCN_T: t = gcd(n,k) dividing s, m odd, n/t odd: delta <= 3 for
// c in F_{2^t} minus {1}.
ClaimReport gold_pcn_t_bound(FieldRef ctx, std::uint32_t s, std::uint32_t k,
                             std::optional<elem_t> alpha, const RunConfig& cfg = {});

// THM_GOLD_6 / THM_GOLD_5: n odd, gcd(k,n) = 1: delta <= 6 for c in the
// subfield minus {1}; with 3 not dividing m the bound tightens to 5.
ClaimReport gold_56_bound(FieldRef ctx, std::uint32_t s, std::uint32_t k,
                          std::optional<elem_t> alpha, bool strict5, const RunConfig& cfg = {});

// THM_KASAMI: s even with s/2 odd, m odd, gcd(k,n) = 2; draws `instances`
// pairs of affine permutations of the subfield from the seed and checks,
// per the flags: permutation, delta at c=1 <= 6, algebraic degree n-1
// (s > 2 only), nonlinearity >= 2^(n-1) - 2^(s/2+1) - 2^(n/2).
struct KasamiChecks {
    bool permutation = true;
    bool uniformity = true;
    bool degree = true;
    bool nonlinearity = true;
};
ClaimReport kasami_check(FieldRef ctx, std::uint32_t s, std::uint32_t k, std::uint64_t seed,
                         std::uint32_t instances, KasamiChecks checks,
                         const RunConfig& cfg = {});

// CONCAT: pieces over the degree-s base subfield, combined through the dual
// projections of its extension basis; for every c in the base field minus
// {1} the ambient delta must EQUAL the product of the piece deltas.
ClaimReport concat_exact(FieldRef ctx, std::uint32_t s, const std::vector<FuncTable>& pieces,
                         const RunConfig& cfg = {});

// PROP_SUB: p = 2, subfield coefficients, m odd, delta at c=1 at most 4:
// the c=1 scan (a != 0) finds nothing outside the subfield.
ClaimReport prop_sub(const FuncTable& F, std::uint32_t s, const RunConfig& cfg = {});

// PROP_SUBS2K: delta at c=1 equal to 2k with k >= 2 and no integer in
// [2, k] dividing m: same clean-scan conclusion.
ClaimReport prop_subs2k(const FuncTable& F, std::uint32_t s, const RunConfig& cfg = {});

// PROP_SUBPCN: F PcN at c (any m) or APcN at c (m odd): the scan with a = 0
// included finds nothing outside the subfield.
ClaimReport prop_subpcn(const FuncTable& F, std::uint32_t s, elem_t c,
                        const RunConfig& cfg = {});

// PROP_CDIFFH2: per c, if no prime r <= delta divides m the scan (a = 0
// included) must be clean; non-qualifying c are recorded as skipped, and
// the claim is a HypothesisViolation only when no c qualifies.
ClaimReport prop_cdiffh2(const FuncTable& F, std::uint32_t s, const std::vector<elem_t>& cs,
                         const RunConfig& cfg = {});

// PROP_GOLD: plain Gold with t = gcd(n,k) dividing s and m odd: the c=1
// scan finds nothing outside the subfield.
ClaimReport prop_gold(FieldRef ctx, std::uint32_t s, std::uint32_t k,
                      const RunConfig& cfg = {});

// --- registry -------------------------------------------------------------

// {"claim": "THM_GOLD_6", "params": {...}} -> dispatch to the checker.
ClaimReport run_claim(const nlohmann::json& claim, const RunConfig& cfg = {});

struct SuiteResult {
    std::vector<ClaimReport> reports;
    bool pass = false;
    // Error classes seen while running jobs, for exit-code mapping.
    bool engine_error = false;  // division by zero, mixed fields, domain too large
    bool config_error = false;  // parse errors, violated premises, anything else
};
// Runs every entry of a [{"claim":..., "params":...}, ...] array; a claim
// whose premises are violated is reported failed rather than aborting the
// suite.
SuiteResult run_suite(const nlohmann::json& suite, const RunConfig& cfg = {});

nlohmann::json to_json(const SuiteResult& result);

}  // namespace verify
}  // namespace cdu
