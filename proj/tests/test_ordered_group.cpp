#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "om/ordered_group.hpp"

using namespace om;
using omtest::gv1;
using omtest::gv2;
using omtest::Q;

TEST_CASE("lex_cmp decides by the first differing coordinate") {
    CHECK(lex_cmp(gv2(Q(1, 2), Q(0)), gv2(Q(1, 2), Q(1, 3))) == std::strong_ordering::less);
    CHECK(lex_cmp(gv2(Q(1), Q(-5)), gv2(Q(0), Q(100))) == std::strong_ordering::greater);
    CHECK(lex_cmp(gv1(Q(2, 3)), gv1(Q(2, 3))) == std::strong_ordering::equal);
    CHECK_THROWS_AS(lex_cmp(gv1(Q(1)), gv2(Q(1), Q(1))), math_error);
}

TEST_CASE("coords_in_basis solves the rational linear system exactly") {
    Basis b1({gv1(Q(1))}, -1);
    CHECK(b1.coords_of(gv1(Q(1, 2))) == std::vector<Rat>{Q(1, 2)});

    Basis b2 = Basis::standard(2);
    CHECK(b2.coords_of(gv2(Q(1, 2), Q(1, 3))) == std::vector<Rat>{Q(1, 2), Q(1, 3)});

    Basis b3({gv2(Q(1, 2), Q(1, 3)), gv2(Q(0), Q(1, 3))}, 0);
    CHECK(b3.coords_of(gv2(Q(1, 2), Q(1, 3))) == std::vector<Rat>{Q(1), Q(0)});

    CHECK_THROWS_AS(Basis({gv2(Q(1), Q(2)), gv2(Q(2), Q(4))}, -1), math_error);
}

TEST_CASE("bezout_ledger on (1/2)") {
    LevelLedger lg = bezout_ledger({Q(1, 2)});
    CHECK(lg.h == std::vector<Int>{1});
    CHECK(lg.e == std::vector<Int>{2});
    CHECK(lg.d == std::vector<Int>{1});
    CHECK(lg.eprime == std::vector<Int>{1});
    CHECK(lg.ell == std::vector<Int>{1});
    CHECK(lg.ellprime == std::vector<Int>{0});
    CHECK(lg.e_level == 2);
    CHECK(lg.Lprime == 0);
    CHECK(lg.L == std::vector<Int>{1});
    CHECK(Rat(lg.Lprime) + L_value(lg, lg.gamma_coords) == Q(1, 2));
}

TEST_CASE("bezout_ledger on (1/2, 1/3)") {
    LevelLedger lg = bezout_ledger({Q(1, 2), Q(1, 3)});
    CHECK(lg.d == std::vector<Int>{1, 1});
    CHECK(lg.eprime == std::vector<Int>{1, 2});
    CHECK(lg.ell == std::vector<Int>{1, 2});
    CHECK(lg.ellprime == std::vector<Int>{0, -1});
    CHECK(lg.e_level == 6);
    CHECK(lg.Lprime == 0);
    CHECK(lg.L == std::vector<Int>{-1, 2});
    // 0 + (-1)(1/2) + 2(1/3) = 1/6
    CHECK(Rat(lg.Lprime) + L_value(lg, lg.gamma_coords) == Q(1, 6));
}

TEST_CASE("bezout_ledger on an integer value") {
    LevelLedger lg = bezout_ledger({Q(3)});
    CHECK(lg.e == std::vector<Int>{1});
    CHECK(lg.d == std::vector<Int>{1});
    CHECK(lg.ell == std::vector<Int>{0});
    CHECK(lg.ellprime == std::vector<Int>{1});
    CHECK(lg.e_level == 1);
    CHECK(lg.Lprime == 1);
    CHECK(lg.L == std::vector<Int>{0});
}

TEST_CASE("bezout_ledger rejects the zero vector") {
    CHECK_THROWS_AS(bezout_ledger({Q(0), Q(0)}), math_error);
}

TEST_CASE("augment_basis matches the hand-computed Q matrices") {
    SUBCASE("rank one, gamma = 1/2") {
        Basis b({gv1(Q(1))}, -1);
        Basis nb = augment_basis(b, bezout_ledger(b.coords_of(gv1(Q(1, 2)))));
        CHECK(nb.vec(0) == gv1(Q(1, 2)));
        CHECK(nb.level() == 0);
        // span <1, 1/2> = (1/2)Z
        CHECK(nb.contains(gv1(Q(1))));
        CHECK(nb.contains(gv1(Q(1, 2))));
        CHECK_FALSE(nb.contains(gv1(Q(1, 4))));
    }
    SUBCASE("rank two, gamma = (1/2, 1/3)") {
        Basis b = Basis::standard(2);
        GroupVec gamma = gv2(Q(1, 2), Q(1, 3));
        Basis nb = augment_basis(b, bezout_ledger(b.coords_of(gamma)));
        CHECK(nb.vec(0) == gv2(Q(1, 2), Q(1, 3)));
        CHECK(nb.vec(1) == gv2(Q(0), Q(1, 3)));
        // (1,0) = 2 iota'_1 - 2 iota'_2 and (0,1) = 3 iota'_2
        CHECK(nb.coords_of(gv2(Q(1), Q(0))) == std::vector<Rat>{Q(2), Q(-2)});
        CHECK(nb.coords_of(gv2(Q(0), Q(1))) == std::vector<Rat>{Q(0), Q(3)});
    }
    SUBCASE("integer gamma leaves the group unchanged") {
        Basis b({gv1(Q(1))}, -1);
        Basis nb = augment_basis(b, bezout_ledger(b.coords_of(gv1(Q(3)))));
        CHECK(nb.vec(0) == gv1(Q(1)));
    }
}

TEST_CASE("L_value on the worked ledgers") {
    LevelLedger l1 = bezout_ledger({Q(1, 2)});
    CHECK(L_value(l1, {Q(1)}) == Q(1));
    LevelLedger l2 = bezout_ledger({Q(1, 2), Q(1, 3)});
    CHECK(L_value(l2, {Q(1), Q(0)}) == Q(-1));
    CHECK(L_value(l2, {Q(0), Q(0)}) == Q(0));
    CHECK_THROWS_AS(L_value(l2, {Q(1)}), math_error);
}

TEST_CASE("membership in the Z-span") {
    Basis half({gv1(Q(1, 2))}, 0);
    CHECK(membership(half, gv1(Q(3, 2))));
    CHECK_FALSE(membership(half, gv1(Q(1, 3))));
    Basis b3({gv2(Q(1, 2), Q(1, 3)), gv2(Q(0), Q(1, 3))}, 0);
    CHECK(membership(b3, gv2(Q(1), Q(0))));
}

// Random-ledger laws; the full-size run lives in the acceptance suite.
TEST_CASE("ledger and basis laws on random reduced vectors") {
    omtest::Rng rng(20240601);
    for (int trial = 0; trial < 200; ++trial) {
        const int k = static_cast<int>(rng.i(1, 4));
        std::vector<Rat> u;
        bool nz = false;
        for (int j = 0; j < k; ++j) {
            Rat q = rng.rat(12, 30);
            if (q != 0) nz = true;
            u.push_back(q);
        }
        if (!nz) u[static_cast<size_t>(rng.i(0, k - 1))] = rng.nonzero_rat(12, 30);

        LevelLedger lg = bezout_ledger(u);
        Int prod_e = 1, prod_d = 1, lcm = 1;
        for (int j = 0; j < k; ++j) {
            const size_t js = static_cast<size_t>(j);
            Int g;
            mpz_gcd(g.get_mpz_t(), lg.h[js].get_mpz_t(), lg.e[js].get_mpz_t());
            CHECK(g == 1);
            CHECK(lg.e[js] > 0);
            CHECK(lg.ell[js] * lg.h[js] * lg.eprime[js] + lg.ellprime[js] * lg.e[js] == lg.d[js]);
            CHECK(lg.ell[js] >= 0);
            CHECK(lg.ell[js] * lg.d[js] < lg.e[js]);
            prod_e *= lg.e[js];
            prod_d *= lg.d[js];
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), lg.e[js].get_mpz_t());
        }
        CHECK(lg.e_level == prod_e / prod_d);
        CHECK(lg.e_level == lcm);
        CHECK(Rat(lg.Lprime) + L_value(lg, u) == make_rat(Int(1), lg.e_level));

        Basis b = Basis::standard(k);
        GroupVec gamma(u);
        Basis nb = augment_basis(b, lg);
        CHECK(b.contains(gamma * Rat(lg.e_level)));
        // span(new) = <span(old), gamma>, both inclusions
        CHECK(nb.contains(gamma));
        for (int j = 0; j < k; ++j) CHECK(nb.contains(b.vec(j)));
        for (int j = 0; j < k; ++j) {
            GroupVec w =
                nb.vec(j) - gamma * Rat(lg.ell[static_cast<size_t>(j)] * lg.eprime[static_cast<size_t>(j)]);
            CHECK(b.contains(w));
        }
        // index: |det new| / |det old| = 1/e_level, i.e. (Gamma_i : Gamma_{i-1}) = e_i
        Rat dr = nb.det() / b.det();
        CHECK(abs(dr) == make_rat(Int(1), lg.e_level));

        // eigenvector law: (I - e B) u = e L' u for B = u L^T
        Rat Lu = L_value(lg, u);
        for (int i = 0; i < k; ++i) {
            const size_t is = static_cast<size_t>(i);
            Rat lhs = u[is] - Rat(lg.e_level) * u[is] * Lu;
            Rat rhs = Rat(lg.e_level) * Rat(lg.Lprime) * u[is];
            CHECK(lhs == rhs);
        }
    }
}
