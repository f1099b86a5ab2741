#include "k2slot/k2.hpp"

#include <algorithm>
#include <cassert>

namespace k2slot {

namespace {

i64 mod_m(i64 c, i64 m) {
    c %= m;
    return c < 0 ? c + m : c;
}

}  // namespace

Symbol2 symbol_make(const FieldSpec& F, RatFun a, RatFun b, i64 coeff) {
    if (a.is_zero() || b.is_zero())
        throw MathError("ZeroEntry", "symbol entries must be nonzero");
    return Symbol2{std::move(a), std::move(b), mod_m(coeff, F.m())};
}

K2Element k2_element(FieldSpec spec, std::vector<Symbol2> terms) {
    for (Symbol2& s : terms) s.coeff = mod_m(s.coeff, spec.m());
    return K2Element{std::move(spec), std::move(terms)};
}

K2Element k2_symbol(const FieldSpec& F, const RatFun& a, const RatFun& b) {
    return K2Element{F, {symbol_make(F, a, b)}};
}

RatFun rat_pow(const FieldSpec& F, const RatFun& f, i64 n) {
    if (n < 0) return rat_pow(F, rat_inv(F, f), -n);
    RatFun acc = ratfun_one(F);
    RatFun base = f;
    u64 e = static_cast<u64>(n);
    while (e > 0) {
        if (e & 1) acc = rat_mul(F, acc, base);
        base = rat_mul(F, base, base);
        e >>= 1;
    }
    return acc;
}

ResidueClass tame_residue(const FieldSpec& F, const Symbol2& s, const Place& v) {
    i64 va = valuation(F, v, s.a);
    i64 vb = valuation(F, v, s.b);
    RatFun u = rat_mul(F, rat_pow(F, s.a, -vb), rat_pow(F, s.b, va));
    if ((va * vb) % 2 != 0) u = rat_mul(F, u, ratfun_from_poly(F, poly_from_ints(F.fq(), {-1})));
    ExtField kappa = residue_field(F, v);
    Poly rep = kappa.pow(residue(F, v, u), static_cast<u64>(mod_m(s.coeff, F.m())));
    return ResidueClass{v, mth_power_index(kappa, rep), rep};
}

std::vector<Place> k2_joint_support(const K2Element& alpha) {
    std::vector<Place> all;
    for (const Symbol2& s : alpha.terms) {
        for (const RatFun* f : {&s.a, &s.b}) {
            std::vector<Place> part = support(alpha.spec, *f);
            all.insert(all.end(), part.begin(), part.end());
        }
    }
    std::sort(all.begin(), all.end(), place_less);
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

RamificationProfile ramification(const K2Element& alpha) {
    RamificationProfile profile;
    for (const Place& v : k2_joint_support(alpha)) {
        ExtField kappa = residue_field(alpha.spec, v);
        Poly rep = kappa.one();
        i64 index = 0;
        for (const Symbol2& s : alpha.terms) {
            ResidueClass rc = tame_residue(alpha.spec, s, v);
            rep = kappa.mul(rep, rc.representative);
            index = mod_m(index + rc.index, alpha.spec.m());
        }
        assert(index == mth_power_index(kappa, rep));
        if (index != 0) profile.entries.push_back(ResidueClass{v, index, rep});
    }
    return profile;
}

bool is_zero(const K2Element& alpha) { return ramification(alpha).empty(); }

ReciprocityReport reciprocity_check(const K2Element& alpha) {
    const FieldSpec& F = alpha.spec;
    ExtField base(F, poly_x(F.fq()));
    i64 total = 0;
    for (const ResidueClass& rc : ramification(alpha).entries) {
        ExtField kappa = residue_field(F, rc.place);
        FqElem nm = norm_to_base(kappa, rc.representative);
        total = mod_m(total + mth_power_index(base, base.embed(nm)), F.m());
    }
    return ReciprocityReport{total == 0, total};
}

K2Element k2_add(const K2Element& alpha, const K2Element& beta) {
    if (!(alpha.spec == beta.spec))
        throw MathError("SpecMismatch", "elements live over different fields");
    K2Element out = alpha;
    out.terms.insert(out.terms.end(), beta.terms.begin(), beta.terms.end());
    return out;
}

K2Element k2_scale(const K2Element& alpha, i64 c) {
    K2Element out = alpha;
    for (Symbol2& s : out.terms) s.coeff = mod_m(s.coeff * mod_m(c, alpha.spec.m()), alpha.spec.m());
    return out;
}

K2Element k2_negate(const K2Element& alpha) { return k2_scale(alpha, -1); }

}  // namespace k2slot
