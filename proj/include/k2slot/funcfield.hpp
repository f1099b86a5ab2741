#pragma once

#include <vector>

#include "k2slot/gf.hpp"

namespace k2slot {

// A place of F_q(t): either a monic irreducible polynomial of F_q[t] or the
// degree valuation at infinity.
struct Place {
    bool infinite = false;
    Poly pi;  // monic irreducible; empty when infinite

    int degree() const { return infinite ? 1 : pi.deg(); }
    bool operator==(const Place&) const = default;
};

Place place_infinity();

// Validates that pi is monic irreducible.
Place place_finite(const FieldSpec& F, Poly pi);

// Finite places ordered by (degree, coefficient order); Infinity sorts last.
bool place_less(const Place& a, const Place& b);

// Element of F_q(t), stored gcd-reduced with monic denominator. The zero
// function is 0/1.
struct RatFun {
    Poly num;
    Poly den;

    bool is_zero() const { return num.is_zero(); }
    bool operator==(const RatFun&) const = default;
};

RatFun ratfun_make(const FieldSpec& F, Poly num, Poly den);
RatFun ratfun_from_poly(const FieldSpec& F, Poly f);
RatFun ratfun_one(const FieldSpec& F);

RatFun rat_add(const FieldSpec& F, const RatFun& a, const RatFun& b);
RatFun rat_sub(const FieldSpec& F, const RatFun& a, const RatFun& b);
RatFun rat_neg(const FieldSpec& F, const RatFun& a);
RatFun rat_mul(const FieldSpec& F, const RatFun& a, const RatFun& b);
RatFun rat_div(const FieldSpec& F, const RatFun& a, const RatFun& b);
RatFun rat_inv(const FieldSpec& F, const RatFun& a);

// Multiplicity of pi in a nonzero polynomial.
int poly_ord(const Fq& k, const Poly& f, const Poly& pi);

// v(f) as an integer; the degree valuation at infinity is
// deg(denominator) - deg(numerator).
i64 valuation(const FieldSpec& F, const Place& v, const RatFun& f);

// kappa_v presented as F_q[t]/(pi), or F_q itself at infinity.
ExtField residue_field(const FieldSpec& F, const Place& v);

// Image of a v-unit in the residue field.
Poly residue(const FieldSpec& F, const Place& v, const RatFun& f);

// All places with nonzero valuation, sorted by place_less.
std::vector<Place> support(const FieldSpec& F, const RatFun& f, u64 seed = 0);

}  // namespace k2slot
