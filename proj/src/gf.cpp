#include "k2slot/gf.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <sstream>

namespace k2slot {

namespace {

i64 mod_pos(i64 a, i64 p) {
    a %= p;
    return a < 0 ? a + p : a;
}

bool is_prime_i64(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Coefficient vectors over F_p, least degree first, trailing zeros
// stripped. Only used underneath FqElem arithmetic.
using FpVec = std::vector<i64>;

void fp_trim(FpVec& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

FpVec fp_mul(const FpVec& a, const FpVec& b, i64 p) {
    if (a.empty() || b.empty()) return {};
    FpVec r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = mod_pos(r[i + j] + a[i] * b[j], p);
    }
    fp_trim(r);
    return r;
}

// Remainder modulo a monic divisor.
FpVec fp_rem(FpVec a, const FpVec& mod, i64 p) {
    fp_trim(a);
    const size_t dm = mod.size() - 1;
    while (a.size() > dm) {
        i64 lead = a.back();
        size_t shift = a.size() - 1 - dm;
        if (lead != 0)
            for (size_t i = 0; i < dm; ++i)
                a[shift + i] = mod_pos(a[shift + i] - lead * mod[i], p);
        a.pop_back();
        fp_trim(a);
    }
    return a;
}

std::string int_str(i64 n) {
    std::ostringstream os;
    os << n;
    return os.str();
}

}  // namespace

bool elem_less(const FqElem& a, const FqElem& b) {
    // base-p integer order: most significant coefficient is the last one
    return std::lexicographical_compare(a.c.rbegin(), a.c.rend(),
                                        b.c.rbegin(), b.c.rend());
}

Fq::Fq(i64 p, int e, std::vector<i64> modulus) : p_(p), e_(e), mod_(std::move(modulus)) {
    if (p_ < 2 || p_ > (i64(1) << 20))
        throw MathError("CapExceeded",
                        "characteristic " + int_str(p_) + " is outside the supported range");
    if (!is_prime_i64(p_))
        throw MathError("NotPrime", int_str(p_) + " is not a prime");
    if (e_ < 1)
        throw MathError("BadModulus", "extension degree must be at least 1");
    i64 q = 1;
    for (int i = 0; i < e_; ++i) {
        q *= p_;
        if (q > (i64(1) << 20))
            throw MathError("CapExceeded",
                            "field size q = " + int_str(p_) + "^" + int_str(e_) +
                                " exceeds the supported bound 2^20");
    }
    q_ = q;
    if (static_cast<int>(mod_.size()) != e_ + 1)
        throw MathError("BadModulus", "modulus must have degree " + int_str(e_));
    for (i64& c : mod_) c = mod_pos(c, p_);
    if (mod_.back() != 1)
        throw MathError("BadModulus", "modulus must be monic");
    if (e_ >= 2) {
        Fq base(p_, 1, {0, 1});
        Poly f;
        f.c.reserve(mod_.size());
        for (i64 c : mod_) f.c.push_back(FqElem{{c}});
        f = poly_trim(std::move(f));
        if (!is_irreducible(base, f))
            throw MathError("ReducibleModulus",
                            "modulus is reducible over F_" + int_str(p_));
    }
}

FqElem Fq::zero() const { return FqElem{std::vector<i64>(e_, 0)}; }

FqElem Fq::one() const {
    FqElem a = zero();
    a.c[0] = 1;
    return a;
}

FqElem Fq::from_int(i64 n) const {
    FqElem a = zero();
    a.c[0] = mod_pos(n, p_);
    return a;
}

FqElem Fq::gen() const {
    if (e_ == 1) {
        // u is a root of the degree one modulus u + c0
        return from_int(-mod_[0]);
    }
    FqElem a = zero();
    a.c[1] = 1;
    return a;
}

bool Fq::is_zero(const FqElem& a) const {
    for (i64 c : a.c)
        if (c != 0) return false;
    return true;
}

FqElem Fq::add(const FqElem& a, const FqElem& b) const {
    FqElem r = zero();
    for (int i = 0; i < e_; ++i) r.c[i] = mod_pos(a.c[i] + b.c[i], p_);
    return r;
}

FqElem Fq::sub(const FqElem& a, const FqElem& b) const {
    FqElem r = zero();
    for (int i = 0; i < e_; ++i) r.c[i] = mod_pos(a.c[i] - b.c[i], p_);
    return r;
}

FqElem Fq::neg(const FqElem& a) const {
    FqElem r = zero();
    for (int i = 0; i < e_; ++i) r.c[i] = mod_pos(-a.c[i], p_);
    return r;
}

FqElem Fq::mul(const FqElem& a, const FqElem& b) const {
    FpVec prod = fp_mul(a.c, b.c, p_);
    FpVec red = fp_rem(std::move(prod), mod_, p_);
    FqElem r = zero();
    for (size_t i = 0; i < red.size(); ++i) r.c[i] = red[i];
    return r;
}

FqElem Fq::inv(const FqElem& a) const {
    if (is_zero(a)) throw MathError("ZeroElement", "inverse of zero");
    return pow(a, q_ - 2);
}

FqElem Fq::pow(const FqElem& a, i64 k) const {
    if (k < 0) return inv(pow(a, -k));
    FqElem base = a;
    FqElem acc = one();
    u64 n = static_cast<u64>(k);
    while (n > 0) {
        if (n & 1) acc = mul(acc, base);
        base = mul(base, base);
        n >>= 1;
    }
    return acc;
}

i64 Fq::rank(const FqElem& a) const {
    i64 r = 0;
    for (int i = e_ - 1; i >= 0; --i) r = r * p_ + a.c[i];
    return r;
}

FqElem Fq::from_rank(i64 r) const {
    FqElem a = zero();
    for (int i = 0; i < e_; ++i) {
        a.c[i] = r % p_;
        r /= p_;
    }
    return a;
}

i64 Fq::mult_order(const FqElem& a) const {
    if (is_zero(a)) throw MathError("ZeroElement", "order of zero");
    i64 n = q_ - 1;
    i64 order = n;
    i64 rest = n;
    for (i64 d = 2; d * d <= rest; ++d) {
        if (rest % d != 0) continue;
        while (rest % d == 0) rest /= d;
        while (order % d == 0 && pow(a, order / d) == one()) order /= d;
    }
    if (rest > 1)
        while (order % rest == 0 && pow(a, order / rest) == one()) order /= rest;
    return order;
}

// ---------------------------------------------------------------- Poly

Poly poly_zero() { return Poly{}; }

Poly poly_one(const Fq& k) { return Poly{{k.one()}}; }

Poly poly_x(const Fq& k) { return Poly{{k.zero(), k.one()}}; }

Poly poly_const(const Fq& k, const FqElem& a) {
    if (k.is_zero(a)) return poly_zero();
    return Poly{{a}};
}

Poly poly_from_ints(const Fq& k, const std::vector<i64>& coeffs) {
    Poly f;
    f.c.reserve(coeffs.size());
    for (i64 c : coeffs) f.c.push_back(k.from_int(c));
    return poly_trim(std::move(f));
}

Poly poly_trim(Poly f) {
    while (!f.c.empty()) {
        bool zero = true;
        for (i64 c : f.c.back().c)
            if (c != 0) { zero = false; break; }
        if (!zero) break;
        f.c.pop_back();
    }
    return f;
}

const FqElem& poly_lc(const Poly& f) {
    assert(!f.is_zero());
    return f.c.back();
}

Poly poly_add(const Fq& k, const Poly& a, const Poly& b) {
    Poly r;
    size_t n = std::max(a.c.size(), b.c.size());
    r.c.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        FqElem x = i < a.c.size() ? a.c[i] : k.zero();
        FqElem y = i < b.c.size() ? b.c[i] : k.zero();
        r.c.push_back(k.add(x, y));
    }
    return poly_trim(std::move(r));
}

Poly poly_sub(const Fq& k, const Poly& a, const Poly& b) {
    return poly_add(k, a, poly_neg(k, b));
}

Poly poly_neg(const Fq& k, const Poly& a) {
    Poly r = a;
    for (FqElem& c : r.c) c = k.neg(c);
    return r;
}

Poly poly_mul(const Fq& k, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return poly_zero();
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, k.zero());
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (k.is_zero(a.c[i])) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = k.add(r.c[i + j], k.mul(a.c[i], b.c[j]));
    }
    return poly_trim(std::move(r));
}

Poly poly_scale(const Fq& k, const FqElem& c, const Poly& a) {
    if (k.is_zero(c)) return poly_zero();
    Poly r = a;
    for (FqElem& x : r.c) x = k.mul(c, x);
    return r;
}

std::pair<Poly, Poly> poly_divmod(const Fq& k, const Poly& a, const Poly& b) {
    if (b.is_zero())
        throw MathError("ZeroPolynomial", "division by the zero polynomial");
    Poly rem = a;
    if (rem.deg() < b.deg()) return {poly_zero(), rem};
    FqElem lb_inv = k.inv(poly_lc(b));
    Poly quo;
    quo.c.assign(rem.c.size() - b.c.size() + 1, k.zero());
    while (!rem.is_zero() && rem.deg() >= b.deg()) {
        int shift = rem.deg() - b.deg();
        FqElem coef = k.mul(poly_lc(rem), lb_inv);
        quo.c[shift] = coef;
        for (int i = 0; i <= b.deg(); ++i) {
            rem.c[shift + i] = k.sub(rem.c[shift + i], k.mul(coef, b.c[i]));
        }
        rem = poly_trim(std::move(rem));
    }
    return {poly_trim(std::move(quo)), rem};
}

Poly poly_mod(const Fq& k, const Poly& a, const Poly& b) {
    return poly_divmod(k, a, b).second;
}

Poly poly_div_exact(const Fq& k, const Poly& a, const Poly& b) {
    auto [q, r] = poly_divmod(k, a, b);
    assert(r.is_zero());
    return q;
}

Poly poly_make_monic(const Fq& k, const Poly& a) {
    if (a.is_zero()) return a;
    return poly_scale(k, k.inv(poly_lc(a)), a);
}

Poly poly_gcd(const Fq& k, const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = poly_mod(k, x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return poly_make_monic(k, x);
}

Poly poly_derivative(const Fq& k, const Poly& a) {
    Poly r;
    for (int i = 1; i <= a.deg(); ++i)
        r.c.push_back(k.mul(k.from_int(i), a.c[i]));
    return poly_trim(std::move(r));
}

FqElem poly_eval(const Fq& k, const Poly& f, const FqElem& x) {
    FqElem acc = k.zero();
    for (int i = f.deg(); i >= 0; --i) acc = k.add(k.mul(acc, x), f.c[i]);
    return acc;
}

Poly poly_pow_mod(const Fq& k, const Poly& base, u64 exp, const Poly& mod) {
    Poly b = poly_mod(k, base, mod);
    Poly acc = poly_one(k);
    while (exp > 0) {
        if (exp & 1) acc = poly_mod(k, poly_mul(k, acc, b), mod);
        b = poly_mod(k, poly_mul(k, b, b), mod);
        exp >>= 1;
    }
    return acc;
}

std::pair<Poly, Poly> poly_half_ext_gcd(const Fq& k, const Poly& a, const Poly& b) {
    Poly r0 = a, r1 = b;
    Poly s0 = poly_one(k), s1 = poly_zero();
    while (!r1.is_zero()) {
        auto [q, r] = poly_divmod(k, r0, r1);
        Poly s = poly_sub(k, s0, poly_mul(k, q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.is_zero()) return {r0, s0};
    FqElem c = k.inv(poly_lc(r0));
    return {poly_scale(k, c, r0), poly_scale(k, c, s0)};
}

bool poly_less(const Poly& a, const Poly& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg();
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == b.c[i]) continue;
        return elem_less(a.c[i], b.c[i]);
    }
    return false;
}

// -------------------------------------------------------- factorization

namespace {

// p-th root of a polynomial whose derivative vanishes: f(t) = g(t^p)
// with root coefficients a^(q/p).
Poly poly_pth_root(const Fq& k, const Poly& f) {
    i64 p = k.p();
    i64 root_exp = k.q() / p;  // a -> a^(q/p) inverts Frobenius on F_q
    Poly r;
    for (int i = 0; i <= f.deg(); i += static_cast<int>(p))
        r.c.push_back(k.pow(f.c[i], root_exp));
    return poly_trim(std::move(r));
}

void squarefree_decomp(const Fq& k, const Poly& f, int scale,
                       std::vector<std::pair<Poly, int>>& out) {
    Poly fp = poly_derivative(k, f);
    if (fp.is_zero()) {
        squarefree_decomp(k, poly_pth_root(k, f), scale * static_cast<int>(k.p()), out);
        return;
    }
    Poly c = poly_gcd(k, f, fp);
    Poly w = poly_div_exact(k, f, c);
    int i = 1;
    while (w.deg() > 0) {
        Poly y = poly_gcd(k, w, c);
        Poly z = poly_div_exact(k, w, y);
        if (z.deg() > 0) out.emplace_back(z, i * scale);
        w = std::move(y);
        c = poly_div_exact(k, c, w);
        ++i;
    }
    if (c.deg() > 0)
        squarefree_decomp(k, poly_pth_root(k, c), scale * static_cast<int>(k.p()), out);
}

Poly random_poly_below(const Fq& k, int deg_bound, std::mt19937_64& rng) {
    Poly f;
    for (int i = 0; i < deg_bound; ++i)
        f.c.push_back(k.from_rank(static_cast<i64>(rng() % static_cast<u64>(k.q()))));
    return poly_trim(std::move(f));
}

// x -> x^(1 + q + ... + q^(d-1)) mod f, built with d-1 Frobenius steps so
// the exponent never has to be materialized.
Poly norm_tower_pow(const Fq& k, const Poly& a, int d, const Poly& f) {
    Poly n = poly_mod(k, a, f);
    for (int i = 1; i < d; ++i) {
        n = poly_pow_mod(k, n, static_cast<u64>(k.q()), f);
        n = poly_mod(k, poly_mul(k, n, a), f);
    }
    return n;
}

// Equal-degree splitting of a squarefree monic product of irreducibles of
// degree d (Cantor-Zassenhaus; trace construction in characteristic 2).
void equal_degree_factor(const Fq& k, const Poly& f, int d,
                         std::mt19937_64& rng, std::vector<Poly>& out) {
    if (f.deg() == d) {
        out.push_back(f);
        return;
    }
    while (true) {
        Poly a = random_poly_below(k, f.deg(), rng);
        if (a.is_zero()) continue;
        Poly g = poly_gcd(k, a, f);
        if (g.deg() > 0 && g.deg() < f.deg()) {
            equal_degree_factor(k, g, d, rng, out);
            equal_degree_factor(k, poly_div_exact(k, f, g), d, rng, out);
            return;
        }
        if (a.deg() < 1) continue;
        if (k.p() != 2) {
            Poly n = norm_tower_pow(k, a, d, f);
            Poly b = poly_pow_mod(k, n, static_cast<u64>((k.q() - 1) / 2), f);
            for (int sgn : {-1, 1}) {
                Poly s = poly_add(k, b, poly_const(k, k.from_int(sgn)));
                Poly h = poly_gcd(k, s, f);
                if (h.deg() > 0 && h.deg() < f.deg()) {
                    equal_degree_factor(k, h, d, rng, out);
                    equal_degree_factor(k, poly_div_exact(k, f, h), d, rng, out);
                    return;
                }
            }
        } else {
            int bits = k.e() * d;
            Poly acc = poly_mod(k, a, f);
            Poly tr = acc;
            for (int i = 1; i < bits; ++i) {
                acc = poly_mod(k, poly_mul(k, acc, acc), f);
                tr = poly_add(k, tr, acc);
            }
            Poly h = poly_gcd(k, tr, f);
            if (h.deg() > 0 && h.deg() < f.deg()) {
                equal_degree_factor(k, h, d, rng, out);
                equal_degree_factor(k, poly_div_exact(k, f, h), d, rng, out);
                return;
            }
        }
    }
}

std::vector<Poly> distinct_degree_factor(const Fq& k, Poly f,
                                         std::mt19937_64& rng,
                                         std::vector<int>& degrees) {
    std::vector<Poly> out;
    Poly h = poly_x(k);
    for (int d = 1; 2 * d <= f.deg(); ++d) {
        h = poly_pow_mod(k, h, static_cast<u64>(k.q()), f);
        Poly g = poly_gcd(k, poly_sub(k, h, poly_x(k)), f);
        if (g.deg() > 0) {
            std::vector<Poly> pieces;
            equal_degree_factor(k, g, d, rng, pieces);
            for (Poly& p : pieces) {
                out.push_back(std::move(p));
                degrees.push_back(d);
            }
            f = poly_div_exact(k, f, g);
            h = poly_mod(k, h, f);
        }
    }
    if (f.deg() > 0) {
        degrees.push_back(f.deg());
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace

PolyFactorization poly_factor(const Fq& k, const Poly& f, u64 seed) {
    if (f.is_zero())
        throw MathError("ZeroPolynomial", "cannot factor the zero polynomial");
    PolyFactorization result;
    result.unit = poly_lc(f);
    Poly fm = poly_make_monic(k, f);
    if (fm.deg() == 0) return result;

    std::mt19937_64 rng(seed);
    std::vector<std::pair<Poly, int>> sqf;
    squarefree_decomp(k, fm, 1, sqf);
    for (auto& [g, mult] : sqf) {
        std::vector<int> degs;
        std::vector<Poly> irr = distinct_degree_factor(k, g, rng, degs);
        for (Poly& pi : irr) result.factors.emplace_back(std::move(pi), mult);
    }
    std::sort(result.factors.begin(), result.factors.end(),
              [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
    return result;
}

bool is_irreducible(const Fq& k, const Poly& f) {
    if (f.is_zero())
        throw MathError("ZeroPolynomial", "irreducibility of the zero polynomial");
    if (f.deg() == 0)
        throw MathError("ConstantPolynomial", "irreducibility of a constant");
    Poly fm = poly_make_monic(k, f);
    int n = fm.deg();
    if (n == 1) return true;

    // Rabin: t^(q^n) = t mod f, and t^(q^(n/r)) - t coprime to f for every
    // prime r dividing n.
    std::vector<Poly> frob(n + 1);
    frob[0] = poly_x(k);
    for (int i = 1; i <= n; ++i)
        frob[i] = poly_pow_mod(k, frob[i - 1], static_cast<u64>(k.q()), fm);
    if (!(frob[n] == poly_mod(k, poly_x(k), fm))) return false;

    int rest = n;
    for (int r = 2; r * r <= rest; ++r) {
        if (rest % r != 0) continue;
        Poly g = poly_gcd(k, poly_sub(k, frob[n / r], poly_x(k)), fm);
        if (g.deg() != 0) return false;
        while (rest % r == 0) rest /= r;
    }
    if (rest > 1 && rest < n) {
        Poly g = poly_gcd(k, poly_sub(k, frob[n / rest], poly_x(k)), fm);
        if (g.deg() != 0) return false;
    }
    if (rest == n && n > 1) {
        // n itself prime: factor condition with r = n uses frob[1]
        Poly g = poly_gcd(k, poly_sub(k, frob[1], poly_x(k)), fm);
        if (g.deg() != 0) return false;
    }
    return true;
}

Poly irreducible_of_degree_avoiding(const Fq& k, int d,
                                    const std::vector<Poly>& forbidden) {
    if (d < 1) throw MathError("BadDegree", "degree must be at least 1");
    // lexicographic scan over monic polynomials of degree d: the constant
    // coefficient is the most significant digit of the counter
    __int128 total = 1;
    for (int i = 0; i < d; ++i) total *= k.q();
    for (__int128 n = 0; n < total; ++n) {
        Poly f;
        f.c.assign(d + 1, k.zero());
        f.c[d] = k.one();
        __int128 rest = n;
        for (int i = d - 1; i >= 0; --i) {
            f.c[i] = k.from_rank(static_cast<i64>(rest % k.q()));
            rest /= k.q();
        }
        if (std::find(forbidden.begin(), forbidden.end(), f) != forbidden.end())
            continue;
        if (is_irreducible(k, f)) return f;
    }
    throw MathError("Exhausted",
                    "no monic irreducible of degree " + int_str(d) + " available");
}

// ------------------------------------------------------------ FieldSpec

FieldSpec FieldSpec::make(i64 p, int e, std::vector<i64> modulus, i64 m,
                          std::string gen_name) {
    Fq fq(p, e, std::move(modulus));
    if (m < 2)
        throw MathError("BadModulusM", "m must be at least 2");
    if ((fq.q() - 1) % m != 0)
        throw MathError("BadModulusM", "m = " + int_str(m) + " does not divide q-1 = " +
                                           int_str(fq.q() - 1));
    // least generator of F_q^* in the base-p element order
    FqElem g = fq.one();
    bool found = false;
    for (i64 r = 1; r < fq.q(); ++r) {
        FqElem cand = fq.from_rank(r);
        if (fq.mult_order(cand) == fq.q() - 1) {
            g = cand;
            found = true;
            break;
        }
    }
    assert(found);
    (void)found;
    FqElem zeta = fq.pow(g, (fq.q() - 1) / m);
    return FieldSpec(std::move(fq), m, std::move(zeta), std::move(gen_name));
}

FieldSpec field_make(i64 p, int e, const std::vector<i64>& modulus, i64 m,
                     const std::string& gen_name) {
    return FieldSpec::make(p, e, modulus, m, gen_name);
}

// ------------------------------------------------------------- ExtField

ExtField::ExtField(FieldSpec spec, Poly pi, bool)
    : spec_(std::move(spec)), pi_(std::move(pi)) {
    d_ = pi_.deg();
    i64 q = spec_.q();
    i64 card = 1;
    for (int i = 0; i < d_; ++i) {
        if (card > (i64(1) << 62) / q)
            throw MathError("CapExceeded",
                            "residue field of degree " + int_str(d_) +
                                " is too large for exact machine arithmetic");
        card *= q;
    }
    card_ = card;
}

ExtField::ExtField(FieldSpec spec, Poly pi) : ExtField(std::move(spec), std::move(pi), true) {
    if (pi_.deg() < 1)
        throw MathError("BadModulus", "extension modulus must be non-constant");
    if (!(poly_lc(pi_) == spec_.fq().one()))
        throw MathError("BadModulus", "extension modulus must be monic");
    if (pi_.deg() > 1 && !is_irreducible(spec_.fq(), pi_))
        throw MathError("ReducibleModulus", "extension modulus is reducible");
}

ExtField ExtField::trusted(FieldSpec spec, Poly pi) {
    return ExtField(std::move(spec), std::move(pi), true);
}

Poly ExtField::embed(const FqElem& a) const { return poly_const(spec_.fq(), a); }

Poly ExtField::reduce(const Poly& f) const { return poly_mod(spec_.fq(), f, pi_); }

Poly ExtField::add(const Poly& a, const Poly& b) const {
    return poly_add(spec_.fq(), a, b);
}

Poly ExtField::sub(const Poly& a, const Poly& b) const {
    return poly_sub(spec_.fq(), a, b);
}

Poly ExtField::neg(const Poly& a) const { return poly_neg(spec_.fq(), a); }

Poly ExtField::mul(const Poly& a, const Poly& b) const {
    return poly_mod(spec_.fq(), poly_mul(spec_.fq(), a, b), pi_);
}

Poly ExtField::inv(const Poly& a) const {
    Poly ar = reduce(a);
    if (ar.is_zero()) throw MathError("ZeroElement", "inverse of zero");
    auto [g, s] = poly_half_ext_gcd(spec_.fq(), ar, pi_);
    assert(g.deg() == 0);
    return reduce(poly_scale(spec_.fq(), spec_.fq().inv(g.c[0]), s));
}

Poly ExtField::pow(const Poly& a, u64 k) const {
    Poly base = reduce(a);
    Poly acc = one();
    while (k > 0) {
        if (k & 1) acc = mul(acc, base);
        base = mul(base, base);
        k >>= 1;
    }
    return acc;
}

i64 ExtField::rank(const Poly& a) const {
    i64 r = 0;
    for (int i = d_ - 1; i >= 0; --i) {
        FqElem c = i <= a.deg() ? a.c[i] : spec_.fq().zero();
        r = r * spec_.q() + spec_.fq().rank(c);
    }
    return r;
}

Poly ExtField::from_rank(i64 r) const {
    Poly f;
    for (int i = 0; i < d_; ++i) {
        f.c.push_back(spec_.fq().from_rank(r % spec_.q()));
        r /= spec_.q();
    }
    return poly_trim(std::move(f));
}

i64 mth_power_index(const ExtField& kappa, const Poly& x) {
    Poly xr = kappa.reduce(x);
    if (xr.is_zero())
        throw MathError("ZeroElement", "power residue index of zero");
    u64 exp = static_cast<u64>((kappa.card() - 1) / kappa.spec().m());
    Poly y = kappa.pow(xr, exp);
    Poly acc = kappa.one();
    Poly z = kappa.embed(kappa.spec().zeta());
    for (i64 k = 0; k < kappa.spec().m(); ++k) {
        if (y == acc) return k;
        acc = kappa.mul(acc, z);
    }
    throw MathError("InternalError", "power residue is not a power of zeta");
}

FqElem norm_to_base(const ExtField& kappa, const Poly& x) {
    Poly xr = kappa.reduce(x);
    if (xr.is_zero()) return kappa.spec().fq().zero();
    u64 exp = static_cast<u64>((kappa.card() - 1) / (kappa.spec().q() - 1));
    Poly y = kappa.pow(xr, exp);
    assert(y.deg() <= 0);
    return y.is_zero() ? kappa.spec().fq().zero() : y.c[0];
}

}  // namespace k2slot
