#include "cdu/field.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>

namespace cdu {

namespace {

// ---- dense polynomial arithmetic over GF(p), used for modulus validation
// ---- and as the bootstrap multiplier for table construction

using Poly = std::vector<std::uint32_t>;  // constant term first

int pdeg(const Poly& a) {
    for (int i = (int)a.size() - 1; i >= 0; --i)
        if (a[i]) return i;
    return -1;
}

void ptrim(Poly& a) { a.resize((size_t)std::max(pdeg(a) + 1, 1)); }

Poly pmul(const Poly& a, const Poly& b, std::uint32_t p) {
    int da = pdeg(a), db = pdeg(b);
    if (da < 0 || db < 0) return {0};
    Poly r((size_t)(da + db + 1), 0);
    for (int i = 0; i <= da; ++i) {
        if (!a[(size_t)i]) continue;
        for (int j = 0; j <= db; ++j)
            r[(size_t)(i + j)] = (std::uint32_t)((r[(size_t)(i + j)] + (std::uint64_t)a[(size_t)i] * b[(size_t)j]) % p);
    }
    return r;
}

// remainder of a modulo monic-normalizable f
Poly pmod(Poly a, const Poly& f, std::uint32_t p) {
    int df = pdeg(f);
    std::uint64_t lead_inv = 1;
    {  // inverse of the leading coefficient mod p
        std::uint64_t lead = f[(size_t)df], x = 1;
        for (std::uint32_t e = p - 2; e; e >>= 1) {
            if (e & 1) x = x * lead % p;
            lead = lead * lead % p;
        }
        lead_inv = x;
    }
    for (int d = pdeg(a); d >= df; d = pdeg(a)) {
        std::uint64_t c = a[(size_t)d] * lead_inv % p;
        for (int j = 0; j <= df; ++j) {
            std::uint64_t t = c * f[(size_t)j] % p;
            std::uint64_t cur = a[(size_t)(d - df + j)];
            a[(size_t)(d - df + j)] = (std::uint32_t)((cur + p - t) % p);
        }
    }
    ptrim(a);
    return a;
}

Poly pmulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
    return pmod(pmul(a, b, p), f, p);
}

Poly ppow_mod(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p) {
    Poly r{1};
    base = pmod(std::move(base), f, p);
    while (e) {
        if (e & 1) r = pmulmod(r, base, f, p);
        base = pmulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

Poly psub(Poly a, const Poly& b, std::uint32_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = (std::uint32_t)((a[i] + p - b[i]) % p);
    ptrim(a);
    return a;
}

Poly pgcd(Poly a, Poly b, std::uint32_t p) {
    ptrim(a);
    ptrim(b);
    while (pdeg(b) >= 0) {
        Poly r = pmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool has_root(const Poly& f, std::uint32_t p) {
    for (std::uint32_t x = 0; x < p; ++x) {
        std::uint64_t acc = 0;
        for (int i = pdeg(f); i >= 0; --i) acc = (acc * x + f[(size_t)i]) % p;
        if (acc == 0) return true;
    }
    return false;
}

bool irreducible_exhaustive(const Poly& f, std::uint32_t p) {
    int d = pdeg(f);
    if (d <= 0) return false;
    if (d == 1) return true;
    if (has_root(f, p)) return false;
    if (d <= 3) return true;  // degree 2 or 3 without roots
    // degree 4: also rule out irreducible monic quadratic factors
    for (std::uint32_t c1 = 0; c1 < p; ++c1)
        for (std::uint32_t c0 = 0; c0 < p; ++c0) {
            Poly quad{c0, c1, 1};
            if (has_root(quad, p)) continue;
            Poly rem = pmod(f, quad, p);
            if (pdeg(rem) < 0) return false;
        }
    return true;
}

// f irreducible iff it has no irreducible factor of degree <= deg(f)/2:
// gcd(x^(p^i) - x, f) picks up every factor of degree dividing i.
bool irreducible_gcd(const Poly& f, std::uint32_t p) {
    int d = pdeg(f);
    if (d <= 0) return false;
    if (d == 1) return true;
    Poly x{0, 1};
    Poly h = pmod(x, f, p);
    for (int i = 1; i <= d / 2; ++i) {
        h = ppow_mod(h, p, f, p);
        Poly g = pgcd(psub(h, x, p), f, p);
        if (pdeg(g) > 0) return false;
    }
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) {
            out.push_back(d);
            while (v % d == 0) v /= d;
        }
    if (v > 1) out.push_back(v);
    return out;
}

}  // namespace

namespace detail {

bool is_prime_u32(std::uint32_t v) {
    if (v < 2) return false;
    if (v % 2 == 0) return v == 2;
    for (std::uint32_t d = 3; (std::uint64_t)d * d <= v; d += 2)
        if (v % d == 0) return false;
    return true;
}

bool modulus_irreducible(const std::vector<std::uint32_t>& coeffs, std::uint32_t p, int method) {
    Poly f(coeffs.begin(), coeffs.end());
    if (method == 1) return irreducible_exhaustive(f, p);
    if (method == 2) return irreducible_gcd(f, p);
    int d = pdeg(f);
    if (d <= 4 && p <= 64) return irreducible_exhaustive(f, p);
    return irreducible_gcd(f, p);
}

}  // namespace detail

std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t n) {
    // Scan candidates by the numeric value of (c_{n-1} ... c_1 c_0) base p.
    std::uint64_t limit = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (limit > (1ull << 62) / p) fail(Errc::DomainTooLarge, "default modulus search space");
        limit *= p;
    }
    for (std::uint64_t k = 0; k < limit; ++k) {
        std::vector<std::uint32_t> coeffs(n + 1, 0);
        std::uint64_t v = k;
        for (std::uint32_t i = 0; i < n; ++i) {
            coeffs[i] = (std::uint32_t)(v % p);
            v /= p;
        }
        coeffs[n] = 1;
        if (detail::modulus_irreducible(coeffs, p)) return coeffs;
    }
    fail(Errc::ReducibleModulus, "no irreducible polynomial found");  // unreachable
}

Field::Field(FieldSpec spec, FieldOptions opt) : spec_(std::move(spec)), opt_(opt) {
    p_ = spec_.p;
    n_ = spec_.n;
    q_ = 1;
    for (std::uint32_t i = 0; i < n_; ++i) {
        if (q_ > (1ull << 62) / p_) fail(Errc::DomainTooLarge, "field order exceeds 2^62");
        q_ *= p_;
    }
    if (p_ == 2) {
        modbits_ = 0;
        for (std::uint32_t i = 0; i <= n_; ++i)
            if (spec_.modulus[i]) modbits_ |= 1ull << i;
    }
    if (q_ <= opt_.logtable_cap && q_ >= 2) build_tables();
}

FieldRef make_field(FieldSpec spec, FieldOptions opt) {
    if (!detail::is_prime_u32(spec.p))
        fail(Errc::CompositeCharacteristic, "p = " + std::to_string(spec.p) + " is not prime");
    if (spec.n < 1) fail(Errc::InvalidArgument, "n must be >= 1");
    if (spec.modulus.empty()) {
        spec.modulus = default_modulus(spec.p, spec.n);
    } else {
        if (spec.modulus.size() != (size_t)spec.n + 1)
            fail(Errc::InvalidArgument, "modulus must have n+1 coefficients");
        for (auto c : spec.modulus)
            if (c >= spec.p) fail(Errc::InvalidArgument, "modulus coefficient out of range");
        if (spec.modulus[spec.n] != 1) fail(Errc::InvalidArgument, "modulus must be monic");
        if (!detail::modulus_irreducible(spec.modulus, spec.p))
            fail(Errc::ReducibleModulus, "modulus factors over GF(p)");
    }
    return FieldRef(new Field(std::move(spec), opt));
}

FieldRef make_field(std::uint32_t p, std::uint32_t n, std::vector<std::uint32_t> modulus,
                    FieldOptions opt) {
    FieldSpec spec;
    spec.p = p;
    spec.n = n;
    spec.modulus = std::move(modulus);
    return make_field(std::move(spec), opt);
}

elem_t Field::add_digits(elem_t a, elem_t b) const {
    elem_t r = 0, place = 1;
    for (std::uint32_t i = 0; i < n_; ++i) {
        std::uint64_t s = a % p_ + b % p_;
        if (s >= p_) s -= p_;
        r += s * place;
        a /= p_;
        b /= p_;
        place *= p_;
    }
    return r;
}

elem_t Field::sub_digits(elem_t a, elem_t b) const {
    elem_t r = 0, place = 1;
    for (std::uint32_t i = 0; i < n_; ++i) {
        std::uint64_t s = a % p_ + p_ - b % p_;
        if (s >= p_) s -= p_;
        r += s * place;
        a /= p_;
        b /= p_;
        place *= p_;
    }
    return r;
}

elem_t Field::neg(elem_t a) const {
    if (p_ == 2) return a;
    return sub_digits(0, a);
}

elem_t Field::mul_bits(elem_t a, elem_t b) const {
    unsigned __int128 acc = 0;
    for (std::uint32_t i = 0; i < n_; ++i)
        if ((b >> i) & 1) acc ^= (unsigned __int128)a << i;
    for (int d = 2 * (int)n_ - 2; d >= (int)n_; --d)
        if ((acc >> d) & 1) acc ^= (unsigned __int128)modbits_ << (d - (int)n_);
    return (elem_t)acc;
}

elem_t Field::mul_slow(elem_t a, elem_t b) const {
    if (p_ == 2) return mul_bits(a, b);
    if (a == 0 || b == 0) return 0;
    std::vector<std::uint32_t> da(n_), db(n_), acc(2 * n_ - 1, 0);
    elem_t x = a, y = b;
    for (std::uint32_t i = 0; i < n_; ++i) {
        da[i] = (std::uint32_t)(x % p_);
        db[i] = (std::uint32_t)(y % p_);
        x /= p_;
        y /= p_;
    }
    for (std::uint32_t i = 0; i < n_; ++i) {
        if (!da[i]) continue;
        for (std::uint32_t j = 0; j < n_; ++j)
            acc[i + j] = (std::uint32_t)((acc[i + j] + (std::uint64_t)da[i] * db[j]) % p_);
    }
    for (int d = 2 * (int)n_ - 2; d >= (int)n_; --d) {
        std::uint32_t c = acc[(size_t)d];
        if (!c) continue;
        acc[(size_t)d] = 0;
        for (std::uint32_t j = 0; j <= n_; ++j) {
            std::uint64_t t = (std::uint64_t)c * spec_.modulus[j] % p_;
            size_t idx = (size_t)d - n_ + j;
            acc[idx] = (std::uint32_t)((acc[idx] + p_ - t) % p_);
        }
    }
    elem_t r = 0, place = 1;
    for (std::uint32_t i = 0; i < n_; ++i) {
        r += (elem_t)acc[i] * place;
        place *= p_;
    }
    return r;
}

elem_t Field::pow_slow(elem_t a, std::uint64_t e) const {
    elem_t r = 1, base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

elem_t Field::inv(elem_t a) const {
    if (a == 0) fail(Errc::DivisionByZero, "inverse of 0");
    if (has_tables_) {
        std::uint64_t ord = q_ - 1;
        return exp_[(ord - log_[a]) % ord];
    }
    return pow_slow(a, q_ - 2);
}

elem_t Field::pow(elem_t a, std::int64_t e) const {
    if (a == 0) {
        if (e == 0) return 1;
        if (e > 0) return 0;
        fail(Errc::DivisionByZero, "0 raised to a negative power");
    }
    std::int64_t ord = (std::int64_t)(q_ - 1);
    std::uint64_t ee = (std::uint64_t)((e % ord + ord) % ord);
    if (has_tables_) return exp_[(std::uint64_t)log_[a] * ee % (std::uint64_t)ord];
    return pow_slow(a, ee);
}

elem_t Field::frobenius(elem_t x, std::uint64_t j) const {
    j %= n_;
    if (j == 0 || x == 0 || n_ == 1) return x;
    if (has_tables_) {
        std::uint64_t ord = q_ - 1;
        std::uint64_t e = 1;
        for (std::uint64_t i = 0; i < j; ++i) e = e * p_ % ord;
        return exp_[(std::uint64_t)log_[x] * e % ord];
    }
    elem_t r = x;
    for (std::uint64_t i = 0; i < j; ++i) r = pow_slow(r, p_);
    return r;
}

std::uint32_t Field::trace(elem_t x) const {
    elem_t acc = x, y = x;
    for (std::uint32_t i = 1; i < n_; ++i) {
        y = frobenius(y, 1);
        acc = add(acc, y);
    }
    return (std::uint32_t)acc;  // lies in the prime field, so index < p
}

bool Field::in_subfield(elem_t x, std::uint32_t s) const {
    if (s < 1 || s > n_ || n_ % s != 0)
        fail(Errc::NotADivisor, std::to_string(s) + " does not divide n = " + std::to_string(n_));
    return frobenius(x, s) == x;
}

elem_t Field::generator() const {
    if (!has_tables_) fail(Errc::DomainTooLarge, "generator requires the log-table tier");
    return generator_;
}

std::uint32_t Field::digit(elem_t x, std::uint32_t i) const {
    for (std::uint32_t k = 0; k < i; ++k) x /= p_;
    return (std::uint32_t)(x % p_);
}

elem_t Field::scalar_mul(std::uint32_t k, elem_t x) const {
    elem_t r = 0, place = 1;
    for (std::uint32_t i = 0; i < n_; ++i) {
        r += (std::uint64_t)k * (x % p_) % p_ * place;
        x /= p_;
        place *= p_;
    }
    return r;
}

void Field::build_tables() {
    std::uint64_t ord = q_ - 1;
    if (q_ == 2) {
        generator_ = 1;
        exp_ = {1, 1};
        log_.assign(2, 0);
        has_tables_ = true;
        return;
    }
    auto factors = prime_factors(ord);
    elem_t g = 0;
    for (elem_t cand = 2; cand < q_; ++cand) {
        bool ok = true;
        for (auto r : factors)
            if (pow_slow(cand, ord / r) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            g = cand;
            break;
        }
    }
    generator_ = g;
    exp_.assign(2 * ord, 0);
    log_.assign(q_, 0);
    elem_t cur = 1;
    for (std::uint64_t i = 0; i < ord; ++i) {
        exp_[i] = (std::uint32_t)cur;
        exp_[i + ord] = (std::uint32_t)cur;
        log_[cur] = (std::uint32_t)i;
        cur = mul_slow(cur, g);
    }
    has_tables_ = true;
}

SubfieldRef Field::subfield(std::uint32_t s) const {
    if (s < 1 || s > n_ || n_ % s != 0)
        fail(Errc::NotADivisor, std::to_string(s) + " does not divide n = " + std::to_string(n_));
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = subfield_cache_.find(s);
    if (it != subfield_cache_.end()) return it->second;
    auto view = std::make_shared<SubfieldView>(shared_from_this(), s);
    subfield_cache_.emplace(s, view);
    return view;
}

elem_t eval_linearized(const Field& K, const LinearizedPoly& L, elem_t x) {
    elem_t acc = 0;
    for (size_t i = 0; i < L.coeffs.size(); ++i) {
        if (L.coeffs[i] == 0) continue;
        acc = K.add(acc, K.mul(L.coeffs[i], K.frobenius(x, (std::uint64_t)L.step * i)));
    }
    return acc;
}

DualProjection::DualProjection(FieldRef ctx, std::uint32_t s, std::vector<elem_t> beta)
    : ctx_(std::move(ctx)), s_(s), beta_(std::move(beta)) {
    const Field& K = *ctx_;
    if (s_ < 1 || K.n() % s_ != 0)
        fail(Errc::NotADivisor, "base degree must divide the ambient degree");
    m_ = K.n() / s_;
    base_q_ = 1;
    for (std::uint32_t i = 0; i < s_; ++i) base_q_ *= K.p();
    if (beta_.size() != m_) fail(Errc::InvalidArgument, "basis size must equal n/s");
    for (auto b : beta_)
        if (!K.is_valid(b)) fail(Errc::InvalidArgument, "basis element out of range");

    // Moore matrix and Gauss-Jordan inverse over the ambient field.
    std::vector<std::vector<elem_t>> a(m_, std::vector<elem_t>(2 * m_, 0));
    for (std::uint32_t i = 0; i < m_; ++i) {
        for (std::uint32_t j = 0; j < m_; ++j)
            a[i][j] = K.frobenius(beta_[i], (std::uint64_t)s_ * j);
        a[i][m_ + i] = 1;
    }
    for (std::uint32_t col = 0; col < m_; ++col) {
        std::uint32_t piv = col;
        while (piv < m_ && a[piv][col] == 0) ++piv;
        if (piv == m_) fail(Errc::SingularBasis, "Moore matrix is singular");
        std::swap(a[col], a[piv]);
        elem_t inv = K.inv(a[col][col]);
        for (std::uint32_t j = 0; j < 2 * m_; ++j) a[col][j] = K.mul(a[col][j], inv);
        for (std::uint32_t r = 0; r < m_; ++r) {
            if (r == col || a[r][col] == 0) continue;
            elem_t f = a[r][col];
            for (std::uint32_t j = 0; j < 2 * m_; ++j)
                a[r][j] = K.sub(a[r][j], K.mul(f, a[col][j]));
        }
    }
    ainv_.assign(m_, std::vector<elem_t>(m_, 0));
    for (std::uint32_t i = 0; i < m_; ++i)
        for (std::uint32_t j = 0; j < m_; ++j) ainv_[i][j] = a[i][m_ + j];
    lk_.resize(m_);
    for (std::uint32_t k = 0; k < m_; ++k) {
        lk_[k].step = s_;
        lk_[k].coeffs.resize(m_);
        for (std::uint32_t i = 0; i < m_; ++i) lk_[k].coeffs[i] = ainv_[i][k];
    }
}

elem_t DualProjection::project(elem_t x, std::uint32_t k) const {
    return eval_linearized(*ctx_, lk_[k], x);
}

std::vector<elem_t> DualProjection::coords(elem_t x) const {
    std::vector<elem_t> out(m_);
    for (std::uint32_t k = 0; k < m_; ++k) out[k] = project(x, k);
    return out;
}

elem_t DualProjection::combine(const std::vector<elem_t>& xs) const {
    if (xs.size() != m_) fail(Errc::InvalidArgument, "coordinate count must equal n/s");
    const Field& K = *ctx_;
    elem_t acc = 0;
    for (std::uint32_t k = 0; k < m_; ++k) acc = K.add(acc, K.mul(beta_[k], xs[k]));
    return acc;
}

SubfieldView::SubfieldView(FieldRef ctx, std::uint32_t s) : ctx_(std::move(ctx)), s_(s) {
    const Field& K = *ctx_;
    if (s_ < 1 || s_ > K.n() || K.n() % s_ != 0)
        fail(Errc::NotADivisor, std::to_string(s_) + " does not divide n = " + std::to_string(K.n()));
    if (K.order() > (1ull << 26)) fail(Errc::DomainTooLarge, "subfield view needs q <= 2^26");
    m_ = K.n() / s_;
    sub_q_ = 1;
    for (std::uint32_t i = 0; i < s_; ++i) sub_q_ *= K.p();

    elem_t q = K.order();
    member_.assign(q, 0);
    elements_.reserve(sub_q_);
    for (elem_t x = 0; x < q; ++x)
        if (K.frobenius(x, s_) == x) {
            member_[x] = 1;
            elements_.push_back(x);
        }

    if (m_ == 1) {
        ext_basis_ = {1};
    } else {
        // smallest-index element whose degree over the subfield is exactly m
        elem_t theta = 0;
        for (elem_t cand = 0; cand < q; ++cand) {
            std::uint32_t d = 1;
            elem_t y = K.frobenius(cand, s_);
            while (y != cand) {
                ++d;
                y = K.frobenius(y, s_);
            }
            if (d == m_) {
                theta = cand;
                break;
            }
        }
        ext_basis_.resize(m_);
        ext_basis_[0] = 1;
        for (std::uint32_t i = 1; i < m_; ++i) ext_basis_[i] = K.mul(ext_basis_[i - 1], theta);
    }
    proj_ = std::make_unique<DualProjection>(ctx_, s_, ext_basis_);
}

std::vector<elem_t> subfield_coords(const SubfieldView& view, elem_t x) {
    return view.coords(x);
}

}  // namespace cdu
