#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "k2slot/gf.hpp"

namespace k2slot {

// Element of k[x,y] with finite support; zero coefficients are never stored.
struct BivariatePoly {
    // (x degree, y degree) -> coefficient
    std::map<std::pair<int, int>, FqElem> c;

    bool is_zero() const { return c.empty(); }
    bool operator==(const BivariatePoly&) const = default;
};

BivariatePoly biv_make(const Fq& k,
                       const std::vector<std::tuple<int, int, i64>>& terms);
BivariatePoly biv_add(const Fq& k, const BivariatePoly& a, const BivariatePoly& b);
BivariatePoly biv_sub(const Fq& k, const BivariatePoly& a, const BivariatePoly& b);
BivariatePoly biv_neg(const Fq& k, const BivariatePoly& a);
BivariatePoly biv_mul(const Fq& k, const BivariatePoly& a, const BivariatePoly& b);

int biv_total_degree(const BivariatePoly& f);  // -1 for the zero polynomial
FqElem biv_at_origin(const Fq& k, const BivariatePoly& f);

// Total order used for canonical factor lists and reports: total degree, then
// the coefficient maps lexicographically.
bool biv_less(const BivariatePoly& a, const BivariatePoly& b);

// Greatest common divisor, normalized to head coefficient 1.
BivariatePoly biv_gcd(const Fq& k, const BivariatePoly& a, const BivariatePoly& b);

// Fully distributed monomials ascending in (total degree, y degree); reparses
// under the session grammar.
std::string render_bipoly(const FieldSpec& F, const BivariatePoly& f);

struct IntersectionNumber {
    bool infinite = false;
    i64 value = 0;

    bool operator==(const IntersectionNumber&) const = default;
};

// Local intersection number of two nonzero curves at the origin; infinite
// exactly when they share a component through the origin.
IntersectionNumber intersection_multiplicity(const Fq& k, const BivariatePoly& f,
                                             const BivariatePoly& g);

// unit * prod factors[i].first ^ factors[i].second, with each factor head
// coefficient 1, squarefree, pairwise coprime, and irreducibility asserted by
// the caller. Constant and scalar parts fold into the unit.
struct FactoredBivariate {
    FqElem unit;
    std::vector<std::pair<BivariatePoly, i64>> factors;

    bool operator==(const FactoredBivariate&) const = default;
};

FactoredBivariate factored_make(const FieldSpec& F, FqElem unit,
                                std::vector<std::pair<BivariatePoly, i64>> factors);
FactoredBivariate factored_one(const FieldSpec& F);
FactoredBivariate factored_mul(const FieldSpec& F, const FactoredBivariate& a,
                               const FactoredBivariate& b);

struct LocalSymbol {
    FactoredBivariate a;
    FactoredBivariate b;
    i64 coeff = 1;
};

LocalSymbol local_symbol_make(const FieldSpec& F, FactoredBivariate a,
                              FactoredBivariate b, i64 coeff = 1);

// Exponent of the prime p among the factors of u; factors not vanishing at
// the origin are units of the local ring and never match.
i64 prime_valuation(const FieldSpec& F, const BivariatePoly& p,
                    const FactoredBivariate& u);

// Tame residue of the symbol at the prime p, as a factored unit with the
// p-part cancelled: (-1)^(v(a)v(b)) a^(-v(b)) b^(v(a)), all raised to the
// symbol coefficient.
FactoredBivariate local_residue(const FieldSpec& F, const LocalSymbol& s,
                                const BivariatePoly& p);

// Sum of exponent * intersection_multiplicity(p, factor) over the factors
// through the origin, mod m.
i64 mult_index(const FieldSpec& F, const BivariatePoly& p,
               const FactoredBivariate& u);

struct Reciprocity2DReport {
    bool ok = false;
    i64 total = 0;
    // per-prime contribution mod m, sorted by biv_less
    std::vector<std::pair<BivariatePoly, i64>> breakdown;
};

// Evaluates the composite residue-then-multiplicity map at every prime
// through the origin appearing in the symbol entries; the total must vanish.
Reciprocity2DReport reciprocity_2d(const FieldSpec& F,
                                   const std::vector<LocalSymbol>& symbols);

}  // namespace k2slot
