#pragma once

#include <vector>

#include "k2slot/funcfield.hpp"

namespace k2slot {

// Coefficient times the symbol {a, b}; the coefficient lives in Z/m.
struct Symbol2 {
    RatFun a;
    RatFun b;
    i64 coeff = 1;

    bool operator==(const Symbol2&) const = default;
};

Symbol2 symbol_make(const FieldSpec& F, RatFun a, RatFun b, i64 coeff = 1);

// A class in K2 mod m of F_q(t), kept as a formal sum of symbols. There is
// no canonical form; equality of classes is decided through residues.
struct K2Element {
    FieldSpec spec;
    std::vector<Symbol2> terms;
};

K2Element k2_element(FieldSpec spec, std::vector<Symbol2> terms);
K2Element k2_symbol(const FieldSpec& F, const RatFun& a, const RatFun& b);

// Tame residue data at one place: the canonical index in Z/m together with
// the residue-field element that witnesses it.
struct ResidueClass {
    Place place;
    i64 index = 0;
    Poly representative;
};

// All places with nonzero residue index, sorted by place_less.
struct RamificationProfile {
    std::vector<ResidueClass> entries;

    bool empty() const { return entries.empty(); }
};

// (-1)^{v(a)v(b)} a^{-v(b)} b^{v(a)} reduced at v, raised to the symbol
// coefficient; the index is the canonical power-residue index of that unit.
ResidueClass tame_residue(const FieldSpec& F, const Symbol2& s, const Place& v);

RamificationProfile ramification(const K2Element& alpha);

// Zero test through the residue map: over F_q(t) with mu_m in F_q the joint
// residue map is injective, so an empty profile decides the class.
bool is_zero(const K2Element& alpha);

struct ReciprocityReport {
    bool ok = true;
    i64 total = 0;  // sum over places of the index of the normed residue
};

// Degree-weighted residue sum computed through norms down to F_q; must be
// zero for every element, so a nonzero total flags an arithmetic bug.
ReciprocityReport reciprocity_check(const K2Element& alpha);

K2Element k2_add(const K2Element& alpha, const K2Element& beta);
K2Element k2_scale(const K2Element& alpha, i64 c);
K2Element k2_negate(const K2Element& alpha);

// Union of the supports of all symbol entries, sorted by place_less. Every
// place with a nonzero residue lies in this set.
std::vector<Place> k2_joint_support(const K2Element& alpha);

// f^n with integer (possibly negative) exponent.
RatFun rat_pow(const FieldSpec& F, const RatFun& f, i64 n);

}  // namespace k2slot
