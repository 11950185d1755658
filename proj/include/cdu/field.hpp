#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "cdu/errors.hpp"

namespace cdu {

// Element of GF(p^n), encoded as an integer index in [0, q). The base-p
// digits of the index are the coordinates in the polynomial basis
// {1, g, g^2, ..., g^(n-1)}, where g is the residue class of x modulo the
// defining polynomial. Index 0 is the additive identity, index 1 the
// multiplicative identity, index p is g itself.
using elem_t = std::uint64_t;

struct FieldSpec {
    std::uint32_t p = 2;
    std::uint32_t n = 1;
    std::vector<std::uint32_t> modulus;  // coefficients, constant term first, monic
};

struct FieldOptions {
    // Discrete-log multiplication tables are built when q <= logtable_cap;
    // larger fields fall back to polynomial reduction per operation.
    std::uint64_t logtable_cap = 1ull << 20;
};

class Field;
class SubfieldView;
class DualProjection;
using FieldRef = std::shared_ptr<const Field>;
using SubfieldRef = std::shared_ptr<const SubfieldView>;

// L(x) = sum coeffs[i] * x^(p^(step*i)).  With step = s these are the
// q-polynomials over the base field of order p^s.
struct LinearizedPoly {
    std::vector<elem_t> coeffs;
    std::uint32_t step = 1;
};

class Field : public std::enable_shared_from_this<Field> {
public:
    const FieldSpec& spec() const { return spec_; }
    std::uint32_t p() const { return p_; }
    std::uint32_t n() const { return n_; }
    elem_t order() const { return q_; }
    bool has_log_tables() const { return has_tables_; }

    bool is_valid(elem_t x) const { return x < q_; }

    elem_t add(elem_t a, elem_t b) const {
        if (p_ == 2) return a ^ b;
        return add_digits(a, b);
    }
    elem_t neg(elem_t a) const;
    elem_t sub(elem_t a, elem_t b) const {
        if (p_ == 2) return a ^ b;
        return sub_digits(a, b);
    }
    elem_t mul(elem_t a, elem_t b) const {
        if (has_tables_) return (a && b) ? exp_[log_[a] + log_[b]] : 0;
        return mul_slow(a, b);
    }
    elem_t inv(elem_t a) const;              // DivisionByZero on 0
    elem_t pow(elem_t a, std::int64_t e) const;  // exponent reduced mod q-1 for a != 0
    elem_t frobenius(elem_t x, std::uint64_t j) const;  // x^(p^j)
    std::uint32_t trace(elem_t x) const;     // absolute trace, a value in [0, p)

    bool in_subfield(elem_t x, std::uint32_t s) const;  // NotADivisor if s does not divide n
    SubfieldRef subfield(std::uint32_t s) const;        // cached per s

    // Smallest-index primitive element (log-table tier only).
    elem_t generator() const;

    std::uint32_t digit(elem_t x, std::uint32_t i) const;
    elem_t scalar_mul(std::uint32_t k, elem_t x) const;  // k in [0, p)

    // Raw tables for hot loops; null when has_log_tables() is false.
    const std::uint32_t* exp_table() const { return has_tables_ ? exp_.data() : nullptr; }
    const std::uint32_t* log_table() const { return has_tables_ ? log_.data() : nullptr; }

private:
    Field(FieldSpec spec, FieldOptions opt);
    friend FieldRef make_field(FieldSpec spec, FieldOptions opt);

    elem_t add_digits(elem_t a, elem_t b) const;
    elem_t sub_digits(elem_t a, elem_t b) const;
    elem_t mul_slow(elem_t a, elem_t b) const;
    elem_t mul_bits(elem_t a, elem_t b) const;   // p = 2, carry-less
    elem_t pow_slow(elem_t a, std::uint64_t e) const;
    void build_tables();

    FieldSpec spec_;
    FieldOptions opt_;
    std::uint32_t p_ = 2;
    std::uint32_t n_ = 1;
    elem_t q_ = 2;
    std::uint64_t modbits_ = 0;  // p = 2: modulus coefficient bitmask
    bool has_tables_ = false;
    elem_t generator_ = 0;
    std::vector<std::uint32_t> exp_;  // size 2(q-1), doubled to skip the mod
    std::vector<std::uint32_t> log_;  // size q, log_[0] unused

    mutable std::mutex cache_mutex_;
    mutable std::map<std::uint32_t, SubfieldRef> subfield_cache_;
};

// Builds GF(p^n). An empty modulus selects the default: the monic irreducible
// polynomial of degree n over GF(p) whose non-leading coefficient vector
// (c_{n-1}, ..., c_1, c_0), read as a base-p number, is smallest.
FieldRef make_field(FieldSpec spec, FieldOptions opt = {});
FieldRef make_field(std::uint32_t p, std::uint32_t n,
                    std::vector<std::uint32_t> modulus = {}, FieldOptions opt = {});

std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t n);

elem_t eval_linearized(const Field& K, const LinearizedPoly& L, elem_t x);

// Dual projections of a basis beta of F_{q^m} over F_q (q = p^s, m = n/s):
// with A the Moore matrix A[i][j] = beta_i^(q^j), the q-polynomials
// L_k(x) = sum_i ainv[i][k] * x^(q^i) built from the columns of A^{-1}
// satisfy L_k(sum beta_i x_i) = x_k for coordinates x_i in F_q.
class DualProjection {
public:
    DualProjection(FieldRef ctx, std::uint32_t s, std::vector<elem_t> beta);

    const FieldRef& ctx() const { return ctx_; }
    std::uint32_t s() const { return s_; }
    elem_t base_order() const { return base_q_; }
    std::uint32_t degree() const { return m_; }
    const std::vector<elem_t>& basis() const { return beta_; }
    elem_t ainv(std::uint32_t i, std::uint32_t k) const { return ainv_[i][k]; }
    const LinearizedPoly& projection_poly(std::uint32_t k) const { return lk_[k]; }

    elem_t project(elem_t x, std::uint32_t k) const;   // L_k(x), k in [0, m)
    std::vector<elem_t> coords(elem_t x) const;
    elem_t combine(const std::vector<elem_t>& xs) const;  // sum beta_k * xs[k]

private:
    FieldRef ctx_;
    std::uint32_t s_ = 1;
    elem_t base_q_ = 2;
    std::uint32_t m_ = 1;
    std::vector<elem_t> beta_;
    std::vector<std::vector<elem_t>> ainv_;
    std::vector<LinearizedPoly> lk_;
};

class SubfieldView {
public:
    SubfieldView(FieldRef ctx, std::uint32_t s);

    const FieldRef& ctx() const { return ctx_; }
    std::uint32_t s() const { return s_; }
    std::uint32_t m() const { return m_; }
    elem_t subfield_order() const { return sub_q_; }

    bool contains(elem_t x) const { return member_[x] != 0; }
    const std::vector<elem_t>& elements() const { return elements_; }

    // Extension basis of the ambient field over this subfield: the powers
    // {1, theta, ..., theta^(m-1)} of the smallest-index element of degree m.
    const std::vector<elem_t>& ext_basis() const { return ext_basis_; }
    const DualProjection& projection() const { return *proj_; }

    // Coordinates of x over ext_basis(); every entry lies in the subfield.
    std::vector<elem_t> coords(elem_t x) const { return proj_->coords(x); }
    elem_t first_coord(elem_t x) const { return proj_->project(x, 0); }

private:
    FieldRef ctx_;
    std::uint32_t s_ = 1;
    std::uint32_t m_ = 1;
    elem_t sub_q_ = 2;
    std::vector<std::uint8_t> member_;
    std::vector<elem_t> elements_;
    std::vector<elem_t> ext_basis_;
    std::unique_ptr<DualProjection> proj_;
};

std::vector<elem_t> subfield_coords(const SubfieldView& view, elem_t x);

namespace detail {
// method 0: auto, 1: exhaustive root/factor search (deg <= 4, small p),
// 2: distinct-degree gcd test. Exposed so tests can cross-check the tiers.
bool modulus_irreducible(const std::vector<std::uint32_t>& coeffs, std::uint32_t p,
                         int method = 0);
bool is_prime_u32(std::uint32_t v);
}  // namespace detail

}  // namespace cdu
