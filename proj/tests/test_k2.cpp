#include "doctest.h"

#include <random>

#include "k2slot/k2.hpp"

using namespace k2slot;

namespace {

RatFun rf(const FieldSpec& F, const std::vector<i64>& num,
          const std::vector<i64>& den = {1}) {
    return ratfun_make(F, poly_from_ints(F.fq(), num), poly_from_ints(F.fq(), den));
}

RatFun random_ratfun(const FieldSpec& F, std::mt19937_64& rng, int max_deg = 3) {
    const Fq& k = F.fq();
    auto random_poly = [&](bool nonzero) {
        while (true) {
            Poly f;
            int d = static_cast<int>(rng() % (max_deg + 1));
            for (int i = 0; i <= d; ++i)
                f.c.push_back(k.from_rank(static_cast<i64>(rng() % k.q())));
            f = poly_trim(std::move(f));
            if (!nonzero || !f.is_zero()) return f;
        }
    };
    return ratfun_make(F, random_poly(true), random_poly(true));
}

i64 profile_index_at(const RamificationProfile& profile, const Place& v) {
    for (const ResidueClass& rc : profile.entries)
        if (rc.place == v) return rc.index;
    return 0;
}

}  // namespace

TEST_CASE("tame residues at hand-checked places") {
    FieldSpec F = field_make(3, 1, {0, 1}, 2);
    const Fq& k = F.fq();
    Place at_t = place_finite(F, poly_from_ints(k, {0, 1}));

    // {t, 2}: residue at (t) is the non-square 2
    ResidueClass r1 = tame_residue(F, symbol_make(F, rf(F, {0, 1}), rf(F, {2})), at_t);
    CHECK(r1.representative == poly_from_ints(k, {2}));
    CHECK(r1.index == 1);

    // both entries units at the place: index 0
    ResidueClass r2 =
        tame_residue(F, symbol_make(F, rf(F, {1, 1}), rf(F, {2, 1})), at_t);
    CHECK(r2.index == 0);

    // {t, t}: the sign makes the residue -1
    ResidueClass r3 =
        tame_residue(F, symbol_make(F, rf(F, {0, 1}), rf(F, {0, 1})), at_t);
    CHECK(r3.representative == poly_from_ints(k, {2}));
    CHECK(r3.index == 1);

    CHECK_THROWS_WITH_AS(symbol_make(F, rf(F, {0}), rf(F, {1})),
                         doctest::Contains("ZeroEntry"), MathError);
}

TEST_CASE("ramification profiles") {
    FieldSpec F = field_make(3, 1, {0, 1}, 2);
    const Fq& k = F.fq();
    Place at_t = place_finite(F, poly_from_ints(k, {0, 1}));

    K2Element alpha = k2_symbol(F, rf(F, {0, 1}), rf(F, {2}));
    RamificationProfile p1 = ramification(alpha);
    REQUIRE(p1.entries.size() == 2);
    CHECK(p1.entries[0].place == at_t);
    CHECK(p1.entries[0].index == 1);
    CHECK(p1.entries[1].place == place_infinity());
    CHECK(p1.entries[1].index == 1);

    // Steinberg class {a, 1-a} is unramified everywhere
    RatFun a = rf(F, {0, 1}, {1, 1});
    RatFun one_minus_a = rat_sub(F, ratfun_one(F), a);
    CHECK(ramification(k2_symbol(F, a, one_minus_a)).empty());

    // constants are units at every place
    CHECK(ramification(k2_symbol(F, rf(F, {2}), rf(F, {2}))).empty());
}

TEST_CASE("zero test by residues") {
    FieldSpec F = field_make(3, 1, {0, 1}, 2);
    RatFun t = rf(F, {0, 1});
    CHECK(is_zero(k2_symbol(F, t, rat_sub(F, ratfun_one(F), t))));
    // {t, t} + {t, -1} is zero
    K2Element s = k2_add(k2_symbol(F, t, t), k2_symbol(F, t, rf(F, {-1})));
    CHECK(is_zero(s));
    CHECK_FALSE(is_zero(k2_symbol(F, t, rf(F, {2}))));
}

TEST_CASE("group operations") {
    FieldSpec F = field_make(5, 1, {0, 1}, 4);
    K2Element alpha = k2_symbol(F, rf(F, {0, 1}), rf(F, {4, 1}));
    CHECK_FALSE(is_zero(alpha));
    CHECK(is_zero(k2_add(alpha, k2_negate(alpha))));
    CHECK(is_zero(k2_scale(alpha, 4)));
    CHECK(is_zero(k2_scale(k2_symbol(F, rf(F, {0, 1}), rf(F, {2})), 4)));

    FieldSpec other = field_make(3, 1, {0, 1}, 2);
    K2Element beta = k2_symbol(other, rf(other, {0, 1}), rf(other, {2}));
    CHECK_THROWS_WITH_AS(k2_add(alpha, beta), doctest::Contains("SpecMismatch"),
                         MathError);
}

TEST_CASE("reciprocity on hand-checked elements") {
    // {t, t-1} over F_5 with m = 4: indices 2 at (t) and 2 at infinity
    FieldSpec F5 = field_make(5, 1, {0, 1}, 4);
    K2Element alpha = k2_symbol(F5, rf(F5, {0, 1}), rf(F5, {4, 1}));
    RamificationProfile p = ramification(alpha);
    REQUIRE(p.entries.size() == 2);
    CHECK(profile_index_at(p, place_finite(F5, poly_from_ints(F5.fq(), {0, 1}))) == 2);
    CHECK(profile_index_at(p, place_infinity()) == 2);
    ReciprocityReport r = reciprocity_check(alpha);
    CHECK(r.ok);
    CHECK(r.total == 0);

    // {t, t+1} over F_3 with m = 2: indices 1 at (t+1) and 1 at infinity
    FieldSpec F3 = field_make(3, 1, {0, 1}, 2);
    K2Element beta = k2_symbol(F3, rf(F3, {0, 1}), rf(F3, {1, 1}));
    RamificationProfile pb = ramification(beta);
    REQUIRE(pb.entries.size() == 2);
    CHECK(profile_index_at(pb, place_finite(F3, poly_from_ints(F3.fq(), {1, 1}))) == 1);
    CHECK(profile_index_at(pb, place_infinity()) == 1);
    CHECK(reciprocity_check(beta).ok);

    // empty profile
    CHECK(reciprocity_check(k2_symbol(F3, rf(F3, {2}), rf(F3, {2}))).ok);
}

TEST_CASE("residue bilinearity antisymmetry and Steinberg") {
    std::vector<FieldSpec> configs = {
        field_make(3, 1, {0, 1}, 2),
        field_make(5, 1, {0, 1}, 4),
        field_make(7, 1, {0, 1}, 3),
        field_make(3, 2, {1, 0, 1}, 4),
    };
    std::mt19937_64 rng(2026);
    for (const FieldSpec& F : configs) {
        for (int trial = 0; trial < 40; ++trial) {
            RatFun a = random_ratfun(F, rng);
            RatFun a2 = random_ratfun(F, rng);
            RatFun b = random_ratfun(F, rng);

            // residue-level bilinearity at every place that could matter
            K2Element probe = k2_element(
                F, {symbol_make(F, a, b), symbol_make(F, a2, b),
                    symbol_make(F, rat_mul(F, a, a2), b)});
            for (const Place& v : k2_joint_support(probe)) {
                i64 joint = tame_residue(F, symbol_make(F, rat_mul(F, a, a2), b), v).index;
                i64 split = (tame_residue(F, symbol_make(F, a, b), v).index +
                             tame_residue(F, symbol_make(F, a2, b), v).index) %
                            F.m();
                CHECK(joint == split);
            }

            // antisymmetry
            CHECK(is_zero(k2_add(k2_symbol(F, a, b), k2_symbol(F, b, a))));

            // K2 of the constant field dies in K2 of F_q(t)
            FqElem c1 = F.fq().from_rank(1 + static_cast<i64>(rng() % (F.q() - 1)));
            FqElem c2 = F.fq().from_rank(1 + static_cast<i64>(rng() % (F.q() - 1)));
            CHECK(is_zero(k2_symbol(F, ratfun_from_poly(F, poly_const(F.fq(), c1)),
                                    ratfun_from_poly(F, poly_const(F.fq(), c2)))));
        }
        // Steinberg classes vanish: 200 draws per configuration
        int done = 0;
        while (done < 200) {
            RatFun a = random_ratfun(F, rng);
            RatFun one_minus = rat_sub(F, ratfun_one(F), a);
            if (a.is_zero() || one_minus.is_zero()) continue;
            CHECK(is_zero(k2_symbol(F, a, one_minus)));
            ++done;
        }
    }
}

TEST_CASE("reciprocity and zero-test stability under random elements") {
    std::vector<FieldSpec> configs = {
        field_make(3, 1, {0, 1}, 2),
        field_make(5, 1, {0, 1}, 4),
        field_make(7, 1, {0, 1}, 3),
    };
    std::mt19937_64 rng(515);
    for (const FieldSpec& F : configs) {
        for (int trial = 0; trial < 60; ++trial) {
            std::vector<Symbol2> terms;
            int nterms = 1 + static_cast<int>(rng() % 3);
            for (int i = 0; i < nterms; ++i)
                terms.push_back(symbol_make(F, random_ratfun(F, rng),
                                            random_ratfun(F, rng),
                                            static_cast<i64>(rng() % F.m())));
            K2Element alpha = k2_element(F, terms);
            ReciprocityReport r = reciprocity_check(alpha);
            CHECK(r.ok);
            CHECK(r.total == 0);

            // adding a Steinberg term never changes the zero test
            RatFun a = random_ratfun(F, rng);
            RatFun one_minus = rat_sub(F, ratfun_one(F), a);
            if (a.is_zero() || one_minus.is_zero()) continue;
            K2Element shifted = k2_add(alpha, k2_symbol(F, a, one_minus));
            CHECK(is_zero(alpha) == is_zero(shifted));
        }
    }
}
