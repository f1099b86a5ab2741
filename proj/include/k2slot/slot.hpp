#pragma once

#include <string>
#include <vector>

#include "k2slot/k2.hpp"

namespace k2slot {

// Finitely many classes that should share one slot.
struct SlotProblem {
    FieldSpec spec;
    std::vector<K2Element> classes;
};

SlotProblem slot_problem(FieldSpec spec, std::vector<K2Element> classes);

// Union of the ramification supports of all classes, sorted by place_less.
std::vector<Place> joint_support(const SlotProblem& problem);

// Product of the finite-place polynomials of S; when S contains the place
// at infinity and deg f is not coprime to m, one extra irreducible factor
// of least suitable degree (avoiding S) restores coprimality. Returns 1 for
// empty S. v(f) = 1 at every finite place of S.
RatFun weak_approx_slot(const FieldSpec& F, const std::vector<Place>& S);

struct SlotCertificate {
    RatFun f;
    std::vector<Place> support;   // ramified places of the certified class
    std::vector<i64> valuations;  // v(f) at those places, parallel to support
    bool has_cofactor = false;
    RatFun cofactor;              // b with alpha - {f, b} = 0, when found
    i64 candidates_tried = 0;
};

inline constexpr i64 kDefaultSearchBudget = 2'000'000;

// Checks gcd(v(f), m) = 1 at every ramified place of alpha (throwing
// PreconditionViolated otherwise), then searches for a cofactor b with
// alpha - {f, b} = 0 by enumerating candidates c * prod(pi_i^{e_i}) in
// (total degree, factor count, coefficient order), scalars covering every
// power-residue class, exponents below m, total degree up to degree_bound.
// Any witness is re-verified with the full residue computation before it is
// returned. Exhausting the bound or the budget yields a certificate whose
// precondition is verified but which carries no cofactor.
SlotCertificate certify_slot(const K2Element& alpha, const RatFun& f, int degree_bound,
                             i64 budget = kDefaultSearchBudget);

struct LinkageResult {
    RatFun f;
    std::vector<SlotCertificate> certificates;
};

// joint_support + weak_approx_slot + certify_slot over every class.
LinkageResult strong_linkage(const SlotProblem& problem, int degree_bound,
                             i64 budget = kDefaultSearchBudget);

// "F_q(t)((f)^(1/m))", or "F_q(t)" for f = 1; documentation output only.
std::string splitting_field_descriptor(const FieldSpec& F, const RatFun& f);

}  // namespace k2slot
