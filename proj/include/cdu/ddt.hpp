#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cdu/func.hpp"

namespace cdu {

// Difference table for the twisted derivative F(x + a) - c * F(x): entry
// (a, b) counts the solutions x of F(x + a) - c F(x) = b. Every row is
// materialized, including a = 0; delta() applies the usual exclusion.
class DdtTable {
public:
    DdtTable(elem_t q, elem_t c) : q_(q), c_(c), counts_(q * q, 0) {}

    elem_t q() const { return q_; }
    elem_t c() const { return c_; }
    std::uint32_t at(elem_t a, elem_t b) const { return counts_[a * q_ + b]; }
    std::uint32_t& at(elem_t a, elem_t b) { return counts_[a * q_ + b]; }
    const std::uint32_t* row(elem_t a) const { return counts_.data() + a * q_; }

    std::uint32_t row_max(elem_t a) const;
    // Max entry over all rows, dropping the a = 0 row exactly when c = 1
    // (where it degenerates to the zero map).
    std::uint32_t delta() const;

private:
    elem_t q_;
    elem_t c_;
    std::vector<std::uint32_t> counts_;
};

// Materializes the full table; DomainTooLarge when q exceeds the cap.
DdtTable c_ddt(const FuncTable& F, elem_t c, std::uint64_t cap = 1ull << 12);

// Single row of counts, indexed by b.
std::vector<std::uint32_t> ddt_row(const FuncTable& F, elem_t c, elem_t a);

std::uint32_t count_solutions(const FuncTable& F, elem_t c, elem_t a, elem_t b);
std::vector<elem_t> solution_locus(const FuncTable& F, elem_t c, elem_t a, elem_t b);

struct UniformityReport {
    elem_t c = 0;
    std::uint32_t delta = 0;
    std::vector<std::pair<elem_t, elem_t>> witnesses;  // lex-first (a, b) attaining delta
    bool a0_excluded = false;      // the a = 0 row was dropped (c = 1)
    bool a0_attains_max = false;   // c != 1: some (0, b) entry reaches delta
};

// Streaming row-by-row scan in O(q) memory; rows are distributed over
// `workers` threads with a scheduling-independent merge.
UniformityReport c_uniformity(const FuncTable& F, elem_t c, unsigned workers = 1,
                              std::size_t witness_cap = 16);

// profile[c] = delta of F at c, for every c in [0, q).
std::vector<std::uint32_t> uniformity_profile(const FuncTable& F, unsigned workers = 1);

// Uniformity of the restriction of F to a subfield: a, b and x all range
// over the subfield. F must map the subfield into itself and c must lie in
// it. Witness pairs are ambient element indices.
UniformityReport c_uniformity_on(const FuncTable& F, const SubfieldView& view, elem_t c,
                                 std::size_t witness_cap = 16);

struct OutsideHit {
    elem_t a, b, x;
};

// Scans a in the subfield (0 included only when include_a0) and x outside
// it, flagging every x with F(x + a) - c F(x) inside the subfield. A clean
// scan (violations = 0) certifies that no equation F(x+a) - cF(x) = b with
// subfield data (a, b) has a solution outside the subfield.
struct OutsideScanReport {
    elem_t c = 0;
    bool a0_included = false;
    std::uint64_t checked_pairs = 0;  // (a, b) combinations covered
    std::uint64_t violations = 0;     // offending (a, x) pairs
    std::vector<OutsideHit> samples;  // first hits in scan order
};
OutsideScanReport outside_solutions(const FuncTable& F, const SubfieldView& view, elem_t c,
                                    bool include_a0, std::size_t sample_cap = 8);

// Walsh spectrum, characteristic 2 only: W(a, b) = sum_x (-1)^(Tr(bF(x)) + Tr(ax)).
// walsh() materializes spectrum[b][a] (DomainTooLarge above the cap);
// walsh_component computes one b-row; nonlinearity streams over b != 0.
std::vector<std::vector<std::int64_t>> walsh(const FuncTable& F, std::uint64_t cap = 1ull << 10);
std::vector<std::int64_t> walsh_component(const FuncTable& F, elem_t b);
std::uint64_t nonlinearity(const FuncTable& F, unsigned workers = 1);

}  // namespace cdu
