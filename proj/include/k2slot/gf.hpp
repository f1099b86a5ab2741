#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "k2slot/errors.hpp"

namespace k2slot {

using i64 = std::int64_t;
using u64 = std::uint64_t;

// Element of F_q = F_p[u]/(modulus) in the power basis of the class of u.
// Coefficients are least degree first, always of length e, reduced mod p.
struct FqElem {
    std::vector<i64> c;

    bool operator==(const FqElem&) const = default;
};

// Total order on field elements: coefficient vectors read as base-p
// integers, c[0] least significant. Used wherever a deterministic scan
// order over F_q is required.
bool elem_less(const FqElem& a, const FqElem& b);

// Arithmetic context for F_q = F_p[u]/(modulus), q = p^e.
//
// The modulus is a monic irreducible polynomial of degree e over F_p,
// given as a coefficient vector of length e+1 (least degree first).
// Construction validates primality of p and irreducibility of the
// modulus; q is capped at 2^20 so that exhaustive element scans stay
// exact and fast.
class Fq {
public:
    Fq(i64 p, int e, std::vector<i64> modulus);

    i64 p() const { return p_; }
    int e() const { return e_; }
    i64 q() const { return q_; }
    const std::vector<i64>& modulus() const { return mod_; }

    FqElem zero() const;
    FqElem one() const;
    FqElem from_int(i64 n) const;  // reduces n mod p
    FqElem gen() const;            // the class of u

    bool is_zero(const FqElem& a) const;
    FqElem add(const FqElem& a, const FqElem& b) const;
    FqElem sub(const FqElem& a, const FqElem& b) const;
    FqElem neg(const FqElem& a) const;
    FqElem mul(const FqElem& a, const FqElem& b) const;
    FqElem inv(const FqElem& a) const;  // errors ZeroElement on 0
    FqElem pow(const FqElem& a, i64 k) const;  // k may be negative

    // Rank of an element in the base-p total order, in [0, q).
    i64 rank(const FqElem& a) const;
    FqElem from_rank(i64 r) const;

    i64 mult_order(const FqElem& a) const;  // order in F_q^*, errors on 0

    bool operator==(const Fq& o) const {
        return p_ == o.p_ && e_ == o.e_ && mod_ == o.mod_;
    }

private:
    i64 p_;
    int e_;
    i64 q_;
    std::vector<i64> mod_;
};

// Dense univariate polynomial over F_q, least degree first, no trailing
// zero coefficients. The zero polynomial has an empty coefficient vector
// and deg() == -1; callers treat that as degree minus infinity.
struct Poly {
    std::vector<FqElem> c;

    bool is_zero() const { return c.empty(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }

    bool operator==(const Poly&) const = default;
};

Poly poly_zero();
Poly poly_one(const Fq& k);
Poly poly_x(const Fq& k);                       // the monomial t
Poly poly_const(const Fq& k, const FqElem& a);  // constant polynomial
Poly poly_from_ints(const Fq& k, const std::vector<i64>& coeffs);
Poly poly_trim(Poly f);

const FqElem& poly_lc(const Poly& f);  // leading coefficient, f nonzero

Poly poly_add(const Fq& k, const Poly& a, const Poly& b);
Poly poly_sub(const Fq& k, const Poly& a, const Poly& b);
Poly poly_neg(const Fq& k, const Poly& a);
Poly poly_mul(const Fq& k, const Poly& a, const Poly& b);
Poly poly_scale(const Fq& k, const FqElem& c, const Poly& a);
std::pair<Poly, Poly> poly_divmod(const Fq& k, const Poly& a, const Poly& b);
Poly poly_mod(const Fq& k, const Poly& a, const Poly& b);
Poly poly_div_exact(const Fq& k, const Poly& a, const Poly& b);
Poly poly_gcd(const Fq& k, const Poly& a, const Poly& b);  // monic or zero
Poly poly_make_monic(const Fq& k, const Poly& a);
Poly poly_derivative(const Fq& k, const Poly& a);
FqElem poly_eval(const Fq& k, const Poly& f, const FqElem& x);
Poly poly_pow_mod(const Fq& k, const Poly& base, u64 exp, const Poly& mod);

// Extended gcd: returns (g, s) with g = gcd(a, b) monic and
// s*a = g mod b. Enough to invert units modulo b.
std::pair<Poly, Poly> poly_half_ext_gcd(const Fq& k, const Poly& a, const Poly& b);

// Canonical order on polynomials: by degree, then by coefficient lists
// compared least degree first with elem_less. Places, factor lists and
// search candidates are all sorted with this order.
bool poly_less(const Poly& a, const Poly& b);

// Factorization of a nonzero polynomial into a unit times monic
// irreducible powers, factors sorted by (degree, lex). Squarefree
// decomposition and distinct-degree splitting are deterministic; the
// equal-degree stage is randomized and reseeded from `seed`, so equal
// seeds give bit-identical output.
struct PolyFactorization {
    FqElem unit;
    std::vector<std::pair<Poly, int>> factors;
};

PolyFactorization poly_factor(const Fq& k, const Poly& f, u64 seed);

// Deterministic irreducibility test (Rabin). Errors on zero and constant
// input.
bool is_irreducible(const Fq& k, const Poly& f);

// The lexicographically least monic irreducible of degree d that is not
// listed in `forbidden`. Errors with Exhausted if every monic irreducible
// of degree d is forbidden.
Poly irreducible_of_degree_avoiding(const Fq& k, int d,
                                    const std::vector<Poly>& forbidden);

// Field configuration for the whole library: F_q together with the
// modulus m (m >= 2, m | q-1) and the fixed primitive m-th root of unity
// zeta = g^((q-1)/m), where g is the least generator of F_q^* in the
// base-p element order.
class FieldSpec {
public:
    static FieldSpec make(i64 p, int e, std::vector<i64> modulus, i64 m,
                          std::string gen_name = "u");

    const Fq& fq() const { return fq_; }
    i64 p() const { return fq_.p(); }
    int e() const { return fq_.e(); }
    i64 q() const { return fq_.q(); }
    i64 m() const { return m_; }
    const FqElem& zeta() const { return zeta_; }
    const std::string& gen_name() const { return gen_name_; }

    bool operator==(const FieldSpec& o) const {
        return fq_ == o.fq_ && m_ == o.m_;
    }

private:
    FieldSpec(Fq fq, i64 m, FqElem zeta, std::string gen_name)
        : fq_(std::move(fq)), m_(m), zeta_(std::move(zeta)),
          gen_name_(std::move(gen_name)) {}

    Fq fq_;
    i64 m_;
    FqElem zeta_;
    std::string gen_name_;
};

FieldSpec field_make(i64 p, int e, const std::vector<i64>& modulus, i64 m,
                     const std::string& gen_name = "u");

// Presentation of F_{q^d} = F_q[t]/(pi) for a monic irreducible pi of
// degree d. Elements are polynomials of degree < d. pi = t presents F_q
// itself. The cardinality q^d is capped so that exponents stay in i64.
class ExtField {
public:
    ExtField(FieldSpec spec, Poly pi);  // validates irreducibility

    // Trusted variant for internal callers that already validated pi.
    static ExtField trusted(FieldSpec spec, Poly pi);

    const FieldSpec& spec() const { return spec_; }
    const Poly& pi() const { return pi_; }
    int d() const { return d_; }
    i64 card() const { return card_; }

    Poly zero() const { return poly_zero(); }
    Poly one() const { return poly_one(spec_.fq()); }
    Poly embed(const FqElem& a) const;  // constant class
    Poly reduce(const Poly& f) const;

    Poly add(const Poly& a, const Poly& b) const;
    Poly sub(const Poly& a, const Poly& b) const;
    Poly neg(const Poly& a) const;
    Poly mul(const Poly& a, const Poly& b) const;
    Poly inv(const Poly& a) const;
    Poly pow(const Poly& a, u64 k) const;

    i64 rank(const Poly& a) const;  // base-q order on F_{q^d}, in [0, card)
    Poly from_rank(i64 r) const;

private:
    ExtField(FieldSpec spec, Poly pi, bool trusted_tag);

    FieldSpec spec_;
    Poly pi_;
    int d_;
    i64 card_;
};

// Canonical index of x in kappa^* modulo m-th powers: the unique
// k in [0, m) with x^((q^d-1)/m) = zeta^k. A complete invariant of the
// class of x in kappa^*/(kappa^*)^m. Errors ZeroElement on x = 0.
i64 mth_power_index(const ExtField& kappa, const Poly& x);

// Norm map F_{q^d} -> F_q, x -> x^((q^d-1)/(q-1)); norm of 0 is 0.
FqElem norm_to_base(const ExtField& kappa, const Poly& x);

}  // namespace k2slot
