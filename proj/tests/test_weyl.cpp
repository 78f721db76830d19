#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "affchar/errors.hpp"
#include "affchar/weyl.hpp"
#include "group_instances.hpp"
#include "test_helpers.hpp"

using namespace affchar;
using affchar::testing::Rng;

namespace {

CompactGroupData rank1_pm(long k, std::optional<Vec> rho = std::nullopt) {
    Level lv(Torus{1}, IntMat::from_rows({{-k}}));
    WeylGroup w(1, {IntMat::from_rows({{-1}})});
    return CompactGroupData(lv, w, std::move(rho));
}

}  // namespace

TEST_CASE("closure on pinned generator sets") {
    WeylGroup s3(3, affchar::testing::symmetric_group_gens(3));
    CHECK(s3.closure().size() == 6);

    WeylGroup trivial(2, {});
    CHECK(trivial.closure().size() == 1);
    CHECK(trivial.closure()[0] == IntMat::identity(2));

    WeylGroup pm(1, {IntMat::from_rows({{-1}})});
    CHECK(pm.closure().size() == 2);

    CHECK_THROWS_WITH_AS(WeylGroup(2, {IntMat::from_rows({{2, 0}, {0, 1}})}),
                         doctest::Contains("NotUnimodular"), Error);

    WeylGroup s4(4, affchar::testing::symmetric_group_gens(4));
    CHECK_THROWS_WITH_AS(s4.closure(10), doctest::Contains("ClosureCapExceeded"), Error);
}

TEST_CASE("level equivariance is enforced") {
    Level skew(Torus{2}, IntMat::from_rows({{-1, 0}, {0, -2}}));
    CHECK_THROWS_WITH_AS(
        CompactGroupData(skew, WeylGroup(2, {affchar::testing::transposition(2, 0, 1)})),
        doctest::Contains("NotEquivariant"), Error);
}

TEST_CASE("is_regular pinned examples") {
    CompactGroupData u3 = affchar::testing::u3_group();
    CHECK(is_regular({Int(0), Int(1), Int(2)}, u3));
    CHECK_FALSE(is_regular({Int(0), Int(0), Int(1)}, u3));

    CompactGroupData pm4 = rank1_pm(4);
    CHECK_FALSE(is_regular({Int(2)}, pm4));
    CHECK(is_regular({Int(1)}, pm4));
}

TEST_CASE("char_group pinned examples") {
    CompactGroupData u3 = affchar::testing::u3_group();
    std::vector<RegularOrbit> orbits = char_group(u3);
    REQUIRE(orbits.size() == 1);
    CHECK(orbits[0].members.size() == 6);

    // Trivial Weyl group: every orbit of the level is regular.
    CompactGroupData torus(Level(Torus{1}, IntMat::from_rows({{-4}})), WeylGroup(1, {}));
    CHECK(char_group(torus).size() == 4);

    std::vector<RegularOrbit> pm = char_group(rank1_pm(4));
    REQUIRE(pm.size() == 1);
    CHECK(pm[0].members == std::vector<Vec>{{Int(1)}, {Int(3)}});
}

TEST_CASE("char_max_torus pinned examples") {
    CompactGroupData u3 = affchar::testing::u3_group();
    GroupCharElement x = group_basis_orbit(u3, {Int(0), Int(1), Int(2)});
    CharElement y = char_max_torus(u3, x);
    CHECK(y.terms().size() == 6);
    for (const auto& [rep, c] : y.terms()) CHECK(c == 1);

    CompactGroupData pm4 = rank1_pm(4);
    CharElement z = char_max_torus(pm4, group_basis_orbit(pm4, {Int(1)}));
    CharElement expect(orbit_space_of(pm4.level));
    expect.add({Int(1)}, Int(1));
    expect.add({Int(3)}, Int(1));
    CHECK(z == expect);

    // Irregular inputs are rejected.
    GroupCharElement bad;
    bad.add({Int(0)}, Int(1));
    CHECK_THROWS_WITH_AS(char_max_torus(pm4, bad), doctest::Contains("NotRegular"), Error);
}

TEST_CASE("char_max_torus sends distinct orbits to disjoint supports") {
    Rng rng(0x5117);
    for (int it = 0; it < 40; ++it) {
        affchar::testing::GroupMorphismInstance inst = affchar::testing::rand_group_morphism(rng);
        std::vector<RegularOrbit> orbits = char_group(inst.m.target);
        std::vector<CharElement> images;
        for (const auto& o : orbits) {
            GroupCharElement x;
            x.add(o.rep(), Int(1));
            images.push_back(char_max_torus(inst.m.target, x));
        }
        for (size_t a = 0; a < images.size(); ++a)
            for (size_t b = a + 1; b < images.size(); ++b)
                for (const auto& [rep, c] : images[a].terms())
                    CHECK(images[b].coeff(rep) == 0);
    }
}

TEST_CASE("check_decomposable pinned examples") {
    // U(3) <- T along the first coordinate, trivial W(H): passes.
    CompactGroupData u3 = affchar::testing::u3_group();
    CompactGroupData t1(Level(Torus{1}, IntMat::from_rows({{-3}})), WeylGroup(1, {}));
    TorusMorphism i1(Torus{1}, Torus{3}, affchar::testing::coordinate_inclusion(1, 3),
                     MorphismKind::local_injection);
    GroupMorphismData m(t1, u3, i1, {});
    DecomposableReport r = check_decomposable(m, u3.level);
    CHECK(r.passed());

    // Equal-rank identity morphism: passes.
    GroupMorphismData id_m(u3, u3, TorusMorphism::identity(Torus{3}),
                           affchar::testing::symmetric_group_gens(3));
    CHECK(check_decomposable(id_m, u3.level).passed());

    // Broken equivariance: torus map diag(1,2) with f_star the swap. Both
    // group data are valid on their own; only the pairing is inconsistent.
    Level lv2(Torus{2}, IntMat::from_rows({{-2, 0}, {0, -2}}));
    WeylGroup swap2(2, {affchar::testing::transposition(2, 0, 1)});
    CompactGroupData g2(lv2, swap2);
    CompactGroupData h2(lv2, swap2);
    TorusMorphism skew(Torus{2}, Torus{2}, IntMat::from_rows({{1, 0}, {0, 2}}),
                       MorphismKind::local_injection);
    GroupMorphismData broken(h2, g2, skew, {affchar::testing::transposition(2, 0, 1)});
    DecomposableReport br = check_decomposable(broken, g2.level);
    CHECK_FALSE(br.weight_equivariant);
    CHECK(br.equivariance_witness == 0);
    CHECK_FALSE(br.passed());
}

TEST_CASE("char_general reproduces the worked example") {
    CompactGroupData u3 = affchar::testing::u3_group();
    CompactGroupData t1(Level(Torus{1}, IntMat::from_rows({{-3}})), WeylGroup(1, {}));
    TorusMorphism i1(Torus{1}, Torus{3}, affchar::testing::coordinate_inclusion(1, 3),
                     MorphismKind::local_injection);
    GroupMorphismData m(t1, u3, i1, {});

    GroupCharElement x = group_basis_orbit(u3, {Int(0), Int(1), Int(2)});
    GroupCharElement out = char_general(m, u3.level, x);

    GroupCharElement expect;
    expect.add({Int(0)}, Int(2));
    expect.add({Int(1)}, Int(2));
    expect.add({Int(2)}, Int(2));
    CHECK(out == expect);
}

TEST_CASE("char_general on identity and rank-1 folding") {
    CompactGroupData u3 = affchar::testing::u3_group();
    GroupMorphismData id_m(u3, u3, TorusMorphism::identity(Torus{3}),
                           affchar::testing::symmetric_group_gens(3));
    GroupCharElement x = group_basis_orbit(u3, {Int(0), Int(1), Int(2)});
    CHECK(char_general(id_m, u3.level, x) == x);

    CompactGroupData pm4 = rank1_pm(4);
    GroupMorphismData pm_id(pm4, pm4, TorusMorphism::identity(Torus{1}),
                            {IntMat::from_rows({{-1}})});
    GroupCharElement y = group_basis_orbit(pm4, {Int(1)});
    CHECK(char_general(pm_id, pm4.level, y) == y);
}

TEST_CASE("char_general rejects data that fails the decomposable proxies") {
    Level lv2(Torus{2}, IntMat::from_rows({{-2, 0}, {0, -2}}));
    WeylGroup swap2(2, {affchar::testing::transposition(2, 0, 1)});
    CompactGroupData g2(lv2, swap2);
    CompactGroupData h2(lv2, swap2);
    TorusMorphism skew(Torus{2}, Torus{2}, IntMat::from_rows({{1, 0}, {0, 2}}),
                       MorphismKind::local_injection);
    GroupMorphismData broken(h2, g2, skew, {affchar::testing::transposition(2, 0, 1)});
    GroupCharElement x = group_basis_orbit(g2, {Int(0), Int(1)});
    CHECK_THROWS_WITH_AS(char_general(broken, g2.level, x), doctest::Contains("GroupingFailure"),
                         Error);
}

TEST_CASE("char_general blocks are regular and the defining diagram commutes") {
    Rng rng(0x6E0);
    for (int it = 0; it < 500; ++it) {
        affchar::testing::GroupMorphismInstance inst = affchar::testing::rand_group_morphism(rng);
        const GroupMorphismData& m = inst.m;
        REQUIRE(check_decomposable(m, inst.tau).passed());
        Int wh = m.source.weyl.order();

        for (const RegularOrbit& orbit : char_group(m.target)) {
            GroupCharElement x;
            x.add(orbit.rep(), Int(1));
            GroupCharElement out = char_general(m, inst.tau, x);

            // Every output block is regular with |W(H)| torus orbits.
            for (const auto& [rep, c] : out.terms())
                CHECK(is_regular(rep, m.source));

            // char(i) . char_general = char(f|_S) . char(k), term by term.
            CharElement lhs = char_max_torus(m.source, out);
            CharElement rhs =
                char_local_injection(m.torus_map, inst.tau, char_max_torus(m.target, x));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("rho_shift pinned tables") {
    // Trivial W, rho = 0, same K: the identity table.
    CompactGroupData low(Level(Torus{1}, IntMat::from_rows({{-3}})), WeylGroup(1, {}));
    CompactGroupData high(Level(Torus{1}, IntMat::from_rows({{-3}})), WeylGroup(1, {}),
                          Vec{Int(0)});
    RhoShiftTable t = rho_shift(low, high);
    REQUIRE(t.pairs.size() == 3);
    for (const auto& [a, b] : t.pairs) CHECK(a == b);

    // Consistent rank-1 data (level 1 -> 3 with the negation action).
    RhoShiftTable t1 = rho_shift(rank1_pm(2), rank1_pm(6, Vec{Int(1)}));
    REQUIRE(t1.pairs.size() == 2);
    CHECK(t1.pairs[0].first == Vec{Int(0)});
    CHECK(t1.pairs[0].second == Vec{Int(1)});
    CHECK(t1.pairs[1].first == Vec{Int(1)});
    CHECK(t1.pairs[1].second == Vec{Int(2)});

    // The spec's deliberately inconsistent data: [1] + rho = [2] is fixed by
    // negation mod 4, so the shift hits a non-regular orbit.
    CHECK_THROWS_WITH_AS(rho_shift(rank1_pm(2), rank1_pm(4, Vec{Int(1)})),
                         doctest::Contains("NotBijective"), Error);

    // Consistent rank-2 data with the swap action.
    WeylGroup swap2(2, {affchar::testing::transposition(2, 0, 1)});
    CompactGroupData low2(Level(Torus{2}, IntMat::from_rows({{-1, 0}, {0, -1}})), swap2);
    CompactGroupData high2(Level(Torus{2}, IntMat::from_rows({{-2, 0}, {0, -2}})), swap2,
                           Vec{Int(1), Int(0)});
    RhoShiftTable t2 = rho_shift(low2, high2);
    REQUIRE(t2.pairs.size() == 1);
    CHECK(t2.pairs[0].second == Vec{Int(0), Int(1)});

    // U(3)-style data: one orbit on each side.
    CompactGroupData u3low(Level(Torus{3}, -IntMat::identity(3)),
                           WeylGroup(3, affchar::testing::symmetric_group_gens(3)));
    RhoShiftTable t3 = rho_shift(u3low, affchar::testing::u3_group());
    REQUIRE(t3.pairs.size() == 1);
}
