#pragma once

#include <string>
#include <vector>

#include "k2slot/cyclic_algebra.hpp"
#include "k2slot/k2.hpp"
#include "k2slot/local2d.hpp"
#include "k2slot/slot.hpp"

namespace k2slot {

// One command of a session. Only the fields matching the kind are filled;
// the rest stay default-constructed.
enum class ProblemKind {
    K2Residues,
    K2Zero,
    K2Reciprocity,
    SlotFind,
    SlotVerify,
    AlgBuild,
    AlgSplit,
    R2dMult,
    R2dReciprocity,
};

struct ParsedProblem {
    ProblemKind kind;
    std::vector<K2Element> classes;          // k2 and slot commands
    RatFun slot;                             // slot verify
    FqElem alg_a, alg_b;                     // alg commands
    BivariatePoly prime;                     // r2d mult
    FactoredBivariate element;               // r2d mult
    std::vector<LocalSymbol> local_symbols;  // r2d reciprocity
};

struct ParsedSession {
    FieldSpec spec;
    std::vector<ParsedProblem> problems;
};

// Grammar (whitespace-insensitive, ';' after every declaration and command):
//
//   session    := field_decl ";" { command ";" }
//   field_decl := "field" base ["=" tower] "m" "=" INT
//   base       := "GF" "(" INT ")"
//   tower      := "GF" "(" INT ")" "[" IDENT "]" "/" "(" poly ")"
//   command    := "k2" ("residues" | "zero" | "reciprocity") k2list
//              | "slot" ("find" | "verify" ratfn) k2list
//              | "alg" ("build" | "split") "(" const "," const ")"
//              | "r2d" ("mult" "(" bipoly "," faclist ")"
//                      | "reciprocity" lsymlist)
//   k2list     := k2class { "," k2class }
//   k2class    := sym { "+" sym }
//   sym        := [INT "*"] "{" ratfn "," ratfn "}"
//   ratfn      := poly ["/" poly]
//   faclist    := fac { "*" fac }
//   fac        := INT | "(" bipoly ")" ["^" ["-"] INT]
//   lsymlist   := lsym { "," lsym }
//   lsym       := [INT "*"] "{" faclist "," faclist "}"
//   poly       := ["-"] term { ("+" | "-") term }
//   term       := factor { "*" factor }
//   factor     := INT | IDENT ["^" INT]
//
// Variables: 't' plus the extension generator in field context, 'x' and 'y'
// plus the generator in r2d context. There is no implicit multiplication and
// no parenthesized grouping inside polynomials.
//
// Failures while reading tokens raise SyntaxError with line, column, and the
// expected tokens; mathematically invalid input (m not dividing q-1, a zero
// denominator, a reducible field modulus) raises SemanticError. Both are
// InputError.
ParsedSession parse_session(const std::string& input);

// Canonical text of a parsed session; parse_session(render_session(s)) is
// structurally equal to s.
std::string render_session(const ParsedSession& s);

std::string render_symbol(const FieldSpec& F, const Symbol2& s);
std::string render_class(const FieldSpec& F, const K2Element& alpha);
std::string render_factored(const FieldSpec& F, const FactoredBivariate& u);
std::string render_local_symbol(const FieldSpec& F, const LocalSymbol& s);

}  // namespace k2slot
