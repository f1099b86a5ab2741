#include "doctest.h"

#include "k2slot/cyclic_algebra.hpp"

using namespace k2slot;

namespace {

FqElem fq(const FieldSpec& F, i64 n) { return F.fq().from_int(n); }

RatFun rconst(const FieldSpec& F, i64 n) {
    return ratfun_from_poly(F, poly_from_ints(F.fq(), {n}));
}

// solves M w = 0 for a nonzero w, or returns empty when M is invertible
std::vector<Poly> kernel_vector(const ExtField& K,
                                std::vector<std::vector<Poly>> M) {
    const i64 n = static_cast<i64>(M.size());
    std::vector<i64> pivot_col;
    i64 rank = 0;
    for (i64 col = 0; col < n && rank < n; ++col) {
        i64 piv = -1;
        for (i64 r = rank; r < n; ++r)
            if (!M[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(M[rank], M[piv]);
        Poly inv = K.inv(M[rank][col]);
        for (i64 c = col; c < n; ++c) M[rank][c] = K.mul(M[rank][c], inv);
        for (i64 r = 0; r < n; ++r) {
            if (r == rank || M[r][col].is_zero()) continue;
            Poly f = M[r][col];
            for (i64 c = col; c < n; ++c)
                M[r][c] = K.sub(M[r][c], K.mul(f, M[rank][c]));
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> used(n, false);
    for (i64 c : pivot_col) used[c] = true;
    i64 free_col = -1;
    for (i64 c = 0; c < n; ++c)
        if (!used[c]) {
            free_col = c;
            break;
        }
    if (free_col < 0) return {};
    std::vector<Poly> w(n, K.zero());
    w[free_col] = K.one();
    for (i64 r = 0; r < rank; ++r) w[pivot_col[r]] = K.neg(M[r][free_col]);
    return w;
}

std::vector<std::vector<Poly>> left_matrix(const SymbolAlgebra& A,
                                           const std::vector<Poly>& e) {
    std::vector<std::vector<Poly>> L(A.dim(),
                                     std::vector<Poly>(A.dim(), A.K.zero()));
    for (i64 s = 0; s < A.dim(); ++s) {
        std::vector<Poly> basis(A.dim(), A.K.zero());
        basis[s] = A.K.one();
        std::vector<Poly> col = algebra_mul(A, e, basis);
        for (i64 w = 0; w < A.dim(); ++w) L[w][s] = col[w];
    }
    return L;
}

// a witness must either solve the norm form or be an exact zero divisor
void check_witness(const SymbolAlgebra& A, const SplitWitness& wit) {
    const ExtField& K = A.K;
    if (wit.isotropy) {
        REQUIRE(wit.data.size() == 3);
        bool all_zero = wit.data[0].is_zero() && wit.data[1].is_zero() &&
                        wit.data[2].is_zero();
        CHECK_FALSE(all_zero);
        Poly lhs = K.add(K.mul(A.a, K.mul(wit.data[0], wit.data[0])),
                         K.mul(A.b, K.mul(wit.data[1], wit.data[1])));
        CHECK(lhs == K.mul(wit.data[2], wit.data[2]));
    } else {
        REQUIRE(static_cast<i64>(wit.data.size()) == A.dim());
        bool nonzero = false;
        for (const Poly& c : wit.data) nonzero = nonzero || !c.is_zero();
        CHECK(nonzero);
        std::vector<Poly> partner = kernel_vector(K, left_matrix(A, wit.data));
        REQUIRE_FALSE(partner.empty());
        std::vector<Poly> prod = algebra_mul(A, wit.data, partner);
        for (const Poly& c : prod) CHECK(c.is_zero());
    }
}

}  // namespace

TEST_CASE("multiplication table realizes the defining relations") {
    FieldSpec F = field_make(3, 1, {0, 1}, 2);
    SymbolAlgebra A = build_algebra(F, fq(F, 2), fq(F, 2));
    const ExtField& K = A.K;
    CHECK(A.dim() == 4);
    // basis order 1, y, x, xy
    Poly two = K.embed(fq(F, 2));
    CHECK(A.table[2][2][0] == two);              // x^2 = 2
    CHECK(A.table[1][1][0] == two);              // y^2 = 2
    CHECK(A.table[1][2][3] == two);              // yx = -xy
    CHECK(A.table[2][1][3] == K.one());          // xy
    CHECK(A.table[0][3][3] == K.one());          // identity
    for (i64 w = 0; w < 4; ++w)
        if (w != 3) CHECK(A.table[1][2][w].is_zero());

    FieldSpec F7 = field_make(7, 1, {0, 1}, 3);
    CHECK(F7.zeta() == fq(F7, 2));
    SymbolAlgebra B = build_algebra(F7, fq(F7, 3), fq(F7, 5));
    CHECK(B.dim() == 9);
    // y x = omega xy with omega = 2
    CHECK(B.table[1][3][4] == B.K.embed(fq(F7, 2)));

    CHECK_THROWS_WITH_AS(build_algebra(F, fq(F, 0), fq(F, 2)),
                         doctest::Contains("ZeroParameter"), MathError);
    FieldSpec F17 = field_make(17, 1, {0, 1}, 16);
    CHECK_THROWS_WITH_AS(build_algebra(F17, fq(F17, 3), fq(F17, 3)),
                         doctest::Contains("CapExceeded"), MathError);
}

TEST_CASE("center is one dimensional") {
    FieldSpec F3 = field_make(3, 1, {0, 1}, 2);
    CHECK(center_dimension(build_algebra(F3, fq(F3, 2), fq(F3, 2))) == 1);
    CHECK(center_dimension(build_algebra(F3, fq(F3, 1), fq(F3, 1))) == 1);

    FieldSpec F7 = field_make(7, 1, {0, 1}, 3);
    CHECK(center_dimension(build_algebra(F7, fq(F7, 3), fq(F7, 5))) == 1);

    FieldSpec F5 = field_make(5, 1, {0, 1}, 4);
    CHECK(center_dimension(build_algebra(F5, fq(F5, 2), fq(F5, 3))) == 1);

    // base field F_9 presented as a residue field
    FieldSpec F9spec = field_make(3, 2, {1, 0, 1}, 2);
    ExtField F9(F9spec, poly_from_ints(F9spec.fq(), {0, 1}));
    SymbolAlgebra over9 =
        build_algebra(F9spec, F9, F9.from_rank(3), F9.embed(fq(F9spec, 2)));
    CHECK(center_dimension(over9) == 1);
    check_witness(over9, split_witness(over9));
}

TEST_CASE("split witnesses for quadratic norm forms") {
    FieldSpec F3 = field_make(3, 1, {0, 1}, 2);
    SymbolAlgebra A = build_algebra(F3, fq(F3, 2), fq(F3, 2));
    SplitWitness w = split_witness(A);
    REQUIRE(w.isotropy);
    CHECK(w.data[0] == A.K.one());
    CHECK(w.data[1] == A.K.one());
    CHECK(w.data[2] == A.K.one());
    check_witness(A, w);

    // a = 1 splits through the rank-order first solution (1, 0, 1)
    SymbolAlgebra U = build_algebra(F3, fq(F3, 1), fq(F3, 2));
    SplitWitness wu = split_witness(U);
    REQUIRE(wu.isotropy);
    CHECK(wu.data[0] == U.K.one());
    CHECK(wu.data[1].is_zero());
    CHECK(wu.data[2] == U.K.one());

    FieldSpec F5 = field_make(5, 1, {0, 1}, 2);
    SymbolAlgebra B = build_algebra(F5, fq(F5, 2), fq(F5, 2));
    SplitWitness wb = split_witness(B);
    REQUIRE(wb.isotropy);
    CHECK(wb.data[0] == B.K.one());
    CHECK(wb.data[1] == B.K.one());
    CHECK(wb.data[2] == B.K.embed(fq(F5, 2)));

    CHECK_THROWS_WITH_AS(split_witness(A, 5),
                         doctest::Contains("BudgetExhausted"), MathError);
}

TEST_CASE("every quadratic algebra over small odd fields splits") {
    struct Config {
        i64 p;
        int e;
        std::vector<i64> h;
    };
    std::vector<Config> configs = {
        {3, 1, {0, 1}},  {5, 1, {0, 1}},  {7, 1, {0, 1}},     {3, 2, {1, 0, 1}},
        {11, 1, {0, 1}}, {13, 1, {0, 1}}, {17, 1, {0, 1}},    {19, 1, {0, 1}},
        {23, 1, {0, 1}}, {5, 2, {3, 0, 1}}, {3, 3, {1, 2, 0, 1}},
    };
    for (const Config& cfg : configs) {
        FieldSpec F = field_make(cfg.p, cfg.e, cfg.h, 2);
        const Fq& k = F.fq();
        for (i64 ar = 1; ar < k.q(); ++ar)
            for (i64 br = 1; br < k.q(); ++br) {
                SymbolAlgebra A =
                    build_algebra(F, k.from_rank(ar), k.from_rank(br));
                check_witness(A, split_witness(A));
            }
    }
}

TEST_CASE("zero divisors certify higher degree splits") {
    FieldSpec F7 = field_make(7, 1, {0, 1}, 3);
    for (i64 a = 1; a < 7; ++a)
        for (i64 b = 1; b < 7; ++b) {
            SymbolAlgebra A = build_algebra(F7, fq(F7, a), fq(F7, b));
            SplitWitness w = split_witness(A);
            CHECK_FALSE(w.isotropy);
            check_witness(A, w);
        }

    FieldSpec F5 = field_make(5, 1, {0, 1}, 4);
    SymbolAlgebra Q = build_algebra(F5, fq(F5, 2), fq(F5, 3));
    check_witness(Q, split_witness(Q));
}

TEST_CASE("constant symbols map to algebras consistently") {
    FieldSpec F3 = field_make(3, 1, {0, 1}, 2);
    SymbolAlgebra direct = build_algebra(F3, fq(F3, 2), fq(F3, 2));
    SymbolAlgebra via =
        symbol_to_algebra(symbol_make(F3, rconst(F3, 2), rconst(F3, 2)), F3);
    CHECK(via.table == direct.table);

    // the coefficient folds into the first entry
    FieldSpec F7 = field_make(7, 1, {0, 1}, 3);
    SymbolAlgebra doubled = symbol_to_algebra(
        symbol_make(F7, rconst(F7, 3), rconst(F7, 5), 2), F7);
    SymbolAlgebra folded = build_algebra(F7, fq(F7, 2), fq(F7, 5));
    CHECK(doubled.table == folded.table);

    RatFun t = ratfun_from_poly(F3, poly_from_ints(F3.fq(), {0, 1}));
    CHECK_THROWS_WITH_AS(
        symbol_to_algebra(symbol_make(F3, t, rconst(F3, 2)), F3),
        doctest::Contains("NonConstantEntries"), MathError);
    CHECK_THROWS_WITH_AS(
        symbol_to_algebra(symbol_make(F3, rconst(F3, 2), rat_inv(F3, t)), F3),
        doctest::Contains("NonConstantEntries"), MathError);

    // constant symbols vanish in K2 and their algebras split; the two facts
    // must agree
    FieldSpec F5 = field_make(5, 1, {0, 1}, 4);
    for (i64 a = 1; a < 5; ++a)
        for (i64 b = 1; b < 5; ++b) {
            K2Element cls = k2_symbol(F5, rconst(F5, a), rconst(F5, b));
            CHECK(is_zero(cls));
            SymbolAlgebra A = symbol_to_algebra(
                symbol_make(F5, rconst(F5, a), rconst(F5, b)), F5);
            check_witness(A, split_witness(A));
        }
}
