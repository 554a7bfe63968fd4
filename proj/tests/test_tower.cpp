#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "om/tower.hpp"

using namespace om;

namespace {

// F_2 < F_4 via y^2+y+1
Tower f4() {
    Tower t{Prime(2)};
    TowerPoly m = t.pmake(0, {t.one(0), t.one(0), t.one(0)});
    return t.extend(m);
}

// F_2 < F_4 < F_16 via y^2+y+z0
Tower f16() {
    Tower t = f4();
    TowerPoly m = t.pmake(1, {t.gen(1), t.one(1), t.one(1)});
    return t.extend(m);
}

TowerElem random_elem(const Tower& t, int level, omtest::Rng& rng) {
    if (level == 0) return t.from_residue(rng.i(0, static_cast<long>(t.p()) - 1), 0);
    std::vector<TowerElem> rep;
    TowerElem e = t.zero(level);
    for (long j = 0; j < t.fdeg(level - 1); ++j) {
        TowerElem c = random_elem(t, level - 1, rng);
        e = t.add(e, t.mul(t.embed(c, level), t.pow(t.gen(level), Int(j))));
    }
    return e;
}

TowerPoly random_poly(const Tower& t, int level, long deg, omtest::Rng& rng, bool monic) {
    std::vector<TowerElem> c;
    for (long j = 0; j < deg; ++j) c.push_back(random_elem(t, level, rng));
    c.push_back(monic ? t.one(level) : random_elem(t, level, rng));
    while (c.back().is_zero()) c.back() = random_elem(t, level, rng);
    return t.pmake(level, std::move(c));
}

} // namespace

TEST_CASE("extend builds the quadratic extension of F_2") {
    Tower t = f4();
    CHECK(t.levels() == 1);
    CHECK(t.cardinality(1) == 4);
    CHECK(t.fdeg(0) == 2);
}

TEST_CASE("extend rejects reducible minimal polynomials and names a factor") {
    Tower t{Prime(2)};
    TowerPoly m = t.pmake(0, {t.one(0), t.zero(0), t.one(0)}); // y^2+1 = (y+1)^2
    CHECK_THROWS_WITH_AS(t.extend(m), "Tower::extend: reducible minimal polynomial, factor y+1",
                         math_error);
}

TEST_CASE("extend of F_4 by y^2+y+z0 reaches q = 16") {
    Tower t = f16();
    CHECK(t.levels() == 2);
    CHECK(t.cardinality(2) == 16);
    // root exhaustion: y^2+y+z0 has no root among the 4 elements of F_4
    Tower t4 = f4();
    TowerPoly m = t4.pmake(1, {t4.gen(1), t4.one(1), t4.one(1)});
    for (long a = 0; a < 2; ++a)
        for (long b = 0; b < 2; ++b) {
            TowerElem x = t4.add(t4.embed(t4.from_residue(a, 0), 1),
                                 t4.mul(t4.from_residue(b, 1), t4.gen(1)));
            CHECK_FALSE(t4.peval(m, x).is_zero());
        }
}

TEST_CASE("field arithmetic in small towers") {
    Tower t2{Prime(2)};
    CHECK(t2.add(t2.one(0), t2.one(0)).is_zero());

    Tower t = f4();
    TowerElem z = t.gen(1);
    CHECK(t.mul(z, z) == t.add(z, t.one(1))); // z^2 = z + 1 mod z^2+z+1

    omtest::Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        TowerElem a = random_elem(t, 1, rng);
        if (a.is_zero()) continue;
        CHECK(t.pow(a, t.cardinality(1) - 1) == t.one(1));   // Fermat
        CHECK(t.mul(a, t.inv(a)) == t.one(1));
        CHECK(t.pow(a, Int(-1)) == t.inv(a));
    }
    CHECK_THROWS_AS(t.inv(t.zero(1)), math_error);
    CHECK_THROWS_AS(t.div(t.one(1), t.zero(1)), math_error);
}

TEST_CASE("factor worked examples") {
    SUBCASE("y^2+1 over F_2") {
        Tower t{Prime(2)};
        auto fz = t.factor(t.pmake(0, {t.one(0), t.zero(0), t.one(0)}));
        REQUIRE(fz.factors.size() == 1);
        CHECK(fz.factors[0].multiplicity == 2);
        CHECK(t.poly_str(fz.factors[0].poly) == "y+1");
    }
    SUBCASE("y^4+1 over F_5") {
        Tower t{Prime(5)};
        auto fz = t.factor(t.pmake(0, {t.one(0), t.zero(0), t.zero(0), t.zero(0), t.one(0)}));
        REQUIRE(fz.factors.size() == 2);
        CHECK(fz.factors[0].multiplicity == 1);
        CHECK(fz.factors[1].multiplicity == 1);
        CHECK(t.poly_str(fz.factors[0].poly) == "y^2+2");
        CHECK(t.poly_str(fz.factors[1].poly) == "y^2+3");
    }
    SUBCASE("y^2+y+z0 is irreducible over F_4") {
        Tower t = f4();
        TowerPoly m = t.pmake(1, {t.gen(1), t.one(1), t.one(1)});
        auto fz = t.factor(m);
        REQUIRE(fz.factors.size() == 1);
        CHECK(fz.factors[0].multiplicity == 1);
        CHECK(fz.factors[0].poly == m);
        CHECK(t.is_irreducible(m));
    }
}

TEST_CASE("embed and norm_down are mutually inverse inclusions") {
    Tower t = f16();
    TowerElem one16 = t.embed(t.one(0), 2);
    CHECK(one16.level == 2);
    CHECK(one16 == t.one(2));

    TowerElem z0_up = t.embed(t.gen(1), 2);
    CHECK(t.norm_down(z0_up, 1) == t.gen(1));
    CHECK_THROWS_AS(t.norm_down(t.gen(2), 1), math_error);
}

TEST_CASE("cardinality towers and the Frobenius fixed field") {
    Tower t = f16();
    CHECK(t.cardinality(2) == t.cardinality(1) * t.cardinality(1));
    omtest::Rng rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        TowerElem a = random_elem(t, 2, rng);
        bool fixed = t.pow(a, t.cardinality(1)) == a;
        bool in_subfield = true;
        try {
            t.norm_down(a, 1);
        } catch (const math_error&) {
            in_subfield = false;
        }
        CHECK(fixed == in_subfield);
    }
}

TEST_CASE("factor reassembles random polynomials over towers with q <= 64") {
    omtest::Rng rng(13);
    std::vector<Tower> towers;
    towers.push_back(Tower{Prime(2)});
    towers.push_back(f4());
    towers.push_back(f16());
    towers.push_back(Tower{Prime(7)});
    {
        Tower t3{Prime(3)};
        // y^2+1 is irreducible over F_3
        towers.push_back(t3.extend(t3.pmake(0, {t3.one(0), t3.zero(0), t3.one(0)})));
    }
    {
        Tower t2{Prime(2)};
        // y^3+y+1 is irreducible over F_2; then a quadratic step up to q = 64
        Tower f8 = t2.extend(t2.pmake(0, {t2.one(0), t2.one(0), t2.zero(0), t2.one(0)}));
        towers.push_back(f8);
        // y^2+y+z0 splits over F_8 (trace zero); y^2+y+1 does not since F_8
        // meets F_4 in F_2
        TowerPoly m = f8.pmake(1, {f8.one(1), f8.one(1), f8.one(1)});
        towers.push_back(f8.extend(m));
        CHECK(towers.back().cardinality(2) == 64);
    }
    for (auto& t : towers) {
        const int level = t.levels();
        for (int trial = 0; trial < 12; ++trial) {
            TowerPoly f = random_poly(t, level, rng.i(1, 12), rng, false);
            if (f.deg() < 1) continue;
            auto fz = t.factor(f);
            TowerPoly prod = t.pconst(level, fz.lead);
            for (const auto& fac : fz.factors) {
                CHECK(fac.poly.c.back() == t.one(level));
                CHECK(t.is_irreducible(fac.poly));
                for (int m = 0; m < fac.multiplicity; ++m) prod = t.pmul(prod, fac.poly);
                // separability witness on multiplicity-one factors
                if (fac.multiplicity == 1 && fac.poly.deg() >= 1) {
                    TowerPoly g = t.pgcd(fac.poly, t.pderiv(fac.poly));
                    CHECK(g.deg() == 0);
                }
            }
            CHECK(prod == f);
        }
    }
}

TEST_CASE("factor output is deterministic for a fixed seed") {
    Tower t = f4();
    omtest::Rng rng(14);
    TowerPoly f = random_poly(t, 1, 8, rng, true);
    auto a = t.factor(f, 7);
    auto b = t.factor(f, 7);
    REQUIRE(a.factors.size() == b.factors.size());
    for (size_t i = 0; i < a.factors.size(); ++i) {
        CHECK(a.factors[i].poly == b.factors[i].poly);
        CHECK(a.factors[i].multiplicity == b.factors[i].multiplicity);
    }
}
