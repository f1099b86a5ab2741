#pragma once

#include <vector>

#include "k2slot/k2.hpp"

namespace k2slot {

// Degree-m symbol algebra over a finite field K: generated by x, y subject to
// x^m = a, y^m = b, yx = omega*xy, with omega the distinguished root of unity
// of the spec. Basis monomial x^i y^j sits at index i*m + j.
struct SymbolAlgebra {
    FieldSpec spec;
    ExtField K;
    Poly a;
    Poly b;
    // table[p][q] is the coordinate vector of (basis p)*(basis q), length m^2
    std::vector<std::vector<std::vector<Poly>>> table;

    i64 m() const { return spec.m(); }
    i64 dim() const { return spec.m() * spec.m(); }
};

// The table holds m^6 field elements; larger m is out of scope.
inline constexpr i64 kMaxAlgebraM = 8;

inline constexpr i64 kDefaultAlgebraBudget = 2'000'000;

// Associativity is verified on every basis triple at construction.
SymbolAlgebra build_algebra(const FieldSpec& spec, const ExtField& K,
                            const Poly& a, const Poly& b);

// Same algebra over F_q itself, presented as F_q[t]/(t).
SymbolAlgebra build_algebra(const FieldSpec& spec, const FqElem& a,
                            const FqElem& b);

// Product of coordinate vectors through the multiplication table.
std::vector<Poly> algebra_mul(const SymbolAlgebra& A, const std::vector<Poly>& u,
                              const std::vector<Poly>& v);

// Dimension over K of the subspace commuting with both generators.
i64 center_dimension(const SymbolAlgebra& A);

// For m = 2 the witness is a nonzero isotropy triple (x0, y0, z0) with
// a*x0^2 + b*y0^2 = z0^2. For m >= 3 it is a zero divisor with at most two
// nonzero coordinates, found by a singular left-multiplication matrix.
struct SplitWitness {
    bool isotropy = false;
    std::vector<Poly> data;
};

SplitWitness split_witness(const SymbolAlgebra& A,
                           i64 budget = kDefaultAlgebraBudget);

// Constant symbols give algebras over F_q: c*{a,b} maps to (a^c, b). Entries
// with any t-dependence have no finite-dimensional counterpart here.
SymbolAlgebra symbol_to_algebra(const Symbol2& s, const FieldSpec& spec);

}  // namespace k2slot
