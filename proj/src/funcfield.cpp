#include "k2slot/funcfield.hpp"

#include <algorithm>

namespace k2slot {

Place place_infinity() { return Place{true, Poly{}}; }

Place place_finite(const FieldSpec& F, Poly pi) {
    pi = poly_trim(std::move(pi));
    if (pi.deg() < 1)
        throw MathError("BadPlace", "a finite place needs a non-constant polynomial");
    if (!(poly_lc(pi) == F.fq().one()))
        throw MathError("BadPlace", "a finite place needs a monic polynomial");
    if (pi.deg() > 1 && !is_irreducible(F.fq(), pi))
        throw MathError("BadPlace", "a finite place needs an irreducible polynomial");
    return Place{false, std::move(pi)};
}

bool place_less(const Place& a, const Place& b) {
    if (a.infinite != b.infinite) return b.infinite;
    if (a.infinite) return false;
    return poly_less(a.pi, b.pi);
}

RatFun ratfun_make(const FieldSpec& F, Poly num, Poly den) {
    const Fq& k = F.fq();
    den = poly_trim(std::move(den));
    if (den.is_zero())
        throw MathError("ZeroDenominator", "denominator must be nonzero");
    num = poly_trim(std::move(num));
    if (num.is_zero()) return RatFun{poly_zero(), poly_one(k)};
    Poly g = poly_gcd(k, num, den);
    if (g.deg() > 0) {
        num = poly_div_exact(k, num, g);
        den = poly_div_exact(k, den, g);
    }
    FqElem scale = k.inv(poly_lc(den));
    return RatFun{poly_scale(k, scale, num), poly_scale(k, scale, den)};
}

RatFun ratfun_from_poly(const FieldSpec& F, Poly f) {
    return ratfun_make(F, std::move(f), poly_one(F.fq()));
}

RatFun ratfun_one(const FieldSpec& F) {
    return RatFun{poly_one(F.fq()), poly_one(F.fq())};
}

RatFun rat_add(const FieldSpec& F, const RatFun& a, const RatFun& b) {
    const Fq& k = F.fq();
    Poly num = poly_add(k, poly_mul(k, a.num, b.den), poly_mul(k, b.num, a.den));
    return ratfun_make(F, std::move(num), poly_mul(k, a.den, b.den));
}

RatFun rat_sub(const FieldSpec& F, const RatFun& a, const RatFun& b) {
    return rat_add(F, a, rat_neg(F, b));
}

RatFun rat_neg(const FieldSpec& F, const RatFun& a) {
    return RatFun{poly_neg(F.fq(), a.num), a.den};
}

RatFun rat_mul(const FieldSpec& F, const RatFun& a, const RatFun& b) {
    const Fq& k = F.fq();
    return ratfun_make(F, poly_mul(k, a.num, b.num), poly_mul(k, a.den, b.den));
}

RatFun rat_div(const FieldSpec& F, const RatFun& a, const RatFun& b) {
    return rat_mul(F, a, rat_inv(F, b));
}

RatFun rat_inv(const FieldSpec& F, const RatFun& a) {
    if (a.is_zero()) throw MathError("ZeroFunction", "inverse of the zero function");
    return ratfun_make(F, a.den, a.num);
}

int poly_ord(const Fq& k, const Poly& f, const Poly& pi) {
    Poly rest = f;
    int ord = 0;
    while (true) {
        auto [q, r] = poly_divmod(k, rest, pi);
        if (!r.is_zero()) return ord;
        rest = std::move(q);
        ++ord;
    }
}

i64 valuation(const FieldSpec& F, const Place& v, const RatFun& f) {
    if (f.is_zero())
        throw MathError("ZeroFunction", "valuation of the zero function");
    if (v.infinite) return f.den.deg() - f.num.deg();
    const Fq& k = F.fq();
    return poly_ord(k, f.num, v.pi) - poly_ord(k, f.den, v.pi);
}

ExtField residue_field(const FieldSpec& F, const Place& v) {
    if (v.infinite) return ExtField::trusted(F, poly_x(F.fq()));
    return ExtField::trusted(F, v.pi);
}

Poly residue(const FieldSpec& F, const Place& v, const RatFun& f) {
    if (valuation(F, v, f) != 0)
        throw MathError("NotAUnit", "residue of a non-unit at the place");
    const Fq& k = F.fq();
    if (v.infinite) {
        // equal degrees: in the coordinate s = 1/t only the leading
        // coefficients survive the reduction
        FqElem c = k.mul(poly_lc(f.num), k.inv(poly_lc(f.den)));
        return poly_const(k, c);
    }
    ExtField kappa = residue_field(F, v);
    Poly n = kappa.reduce(f.num);
    Poly d = kappa.reduce(f.den);
    return kappa.mul(n, kappa.inv(d));
}

std::vector<Place> support(const FieldSpec& F, const RatFun& f, u64 seed) {
    if (f.is_zero())
        throw MathError("ZeroFunction", "support of the zero function");
    const Fq& k = F.fq();
    std::vector<Place> places;
    for (const Poly& part : {f.num, f.den}) {
        if (part.deg() < 1) continue;
        PolyFactorization fac = poly_factor(k, part, seed);
        for (const auto& [pi, mult] : fac.factors)
            places.push_back(Place{false, pi});
    }
    if (f.num.deg() != f.den.deg()) places.push_back(place_infinity());
    std::sort(places.begin(), places.end(), place_less);
    return places;
}

}  // namespace k2slot
