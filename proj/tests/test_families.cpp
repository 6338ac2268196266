#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ordercalc/families.hpp"

#include <string>
#include <vector>

#include "ordercalc/errors.hpp"
#include "ordercalc/family_io.hpp"

using namespace ordercalc;

namespace {

Ordinal O(const std::string& s) { return parse_ordinal(s); }
Alpha W() { return make_alpha(omega()); }

Point pt(const Alpha& a, std::vector<unsigned long> bits) {
    std::vector<Ordinal> support;
    for (auto b : bits) support.push_back(nat(b));
    return make_point(a, std::move(support));
}

bool strictly_increasing(const std::vector<Point>& pts) {
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (lex_cmp(pts[i], pts[i + 1]) >= 0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("schedule groups, lambdas and sup") {
    LevelSchedule s = make_schedule({{nat(2)}, {nat(7)}}, nat(9), nat(1));
    CHECK(schedule_group(s, 0) == std::vector<Ordinal>{nat(2)});
    CHECK(schedule_group(s, 1) == std::vector<Ordinal>{nat(7)});
    CHECK(schedule_group(s, 2) == std::vector<Ordinal>{nat(9)});
    CHECK(schedule_group(s, 5) == std::vector<Ordinal>{nat(12)});
    CHECK(schedule_lambda(s, 0) == nat(2));
    CHECK(schedule_lambda(s, 3) == nat(10));
    CHECK(schedule_sup(s) == omega());

    CHECK(schedule_contains(s, nat(7)));
    CHECK(schedule_contains(s, nat(11)));
    CHECK(!schedule_contains(s, nat(3)));
    CHECK(!schedule_contains(s, nat(8)));

    CHECK(first_group_at_or_above(s, nat(7)) == 1);
    CHECK(first_group_at_or_above(s, nat(8)) == 2);
    CHECK(first_group_at_or_above(s, zero()) == 0);
    CHECK_THROWS_AS(first_group_at_or_above(s, omega()), DomainError);
}

TEST_CASE("schedule with stride and offsets") {
    LevelSchedule s = make_schedule({}, zero(), nat(1), 2, {0, 1});
    CHECK(schedule_group(s, 0) == std::vector<Ordinal>{zero(), nat(1)});
    CHECK(schedule_group(s, 3) == std::vector<Ordinal>{nat(6), nat(7)});
    CHECK(schedule_lambda(s, 3) == nat(6));
    CHECK(schedule_contains(s, nat(12)));
    CHECK(schedule_sup(s) == omega());

    LevelSchedule d = schedule_drop(s, 2);
    CHECK(schedule_group(d, 0) == schedule_group(s, 2));
    CHECK(schedule_group(d, 4) == schedule_group(s, 6));
}

TEST_CASE("schedule drop and merge_head") {
    LevelSchedule s = make_schedule({{nat(2)}, {nat(7)}}, nat(9), nat(1));
    LevelSchedule d1 = schedule_drop(s, 1);
    CHECK(schedule_group(d1, 0) == std::vector<Ordinal>{nat(7)});
    CHECK(schedule_group(d1, 1) == std::vector<Ordinal>{nat(9)});
    LevelSchedule d3 = schedule_drop(s, 3);
    CHECK(schedule_lambda(d3, 0) == nat(10));
    CHECK(schedule_group(d3, 2) == std::vector<Ordinal>{nat(12)});

    LevelSchedule m = schedule_merge_head(s, 2);
    CHECK(schedule_group(m, 0) == std::vector<Ordinal>{nat(2), nat(7), nat(9)});
    CHECK(schedule_lambda(m, 0) == nat(2));
    CHECK(schedule_group(m, 1) == std::vector<Ordinal>{nat(10)});
    for (std::size_t j = 1; j < 6; ++j) {
        CHECK(schedule_group(m, j) == schedule_group(s, j + 2));
    }
}

TEST_CASE("schedule validation errors") {
    CHECK_THROWS_AS(make_schedule({}, zero(), zero()), DomainError);
    CHECK_THROWS_AS(make_schedule({{}}, nat(5), nat(1)), DomainError);
    // Split levels must increase.
    CHECK_THROWS_AS(make_schedule({{nat(7)}, {nat(2)}}, nat(9), nat(1)), DomainError);
    CHECK_THROWS_AS(make_schedule({{nat(9)}}, nat(9), nat(1)), DomainError);
    // Values must be pairwise distinct, including against the tail.
    CHECK_THROWS_AS(make_schedule({{nat(2), nat(2)}}, nat(9), nat(1)), DomainError);
    CHECK_THROWS_AS(make_schedule({{nat(2), nat(11)}}, nat(9), nat(1)), DomainError);
    // Offsets must start at 0, increase, and stay below the stride.
    CHECK_THROWS_AS(make_schedule({}, zero(), nat(1), 2, {1}), DomainError);
    CHECK_THROWS_AS(make_schedule({}, zero(), nat(1), 2, {0, 2}), DomainError);
    CHECK_THROWS_AS(make_schedule({}, zero(), nat(1), 2, {0, 0}), DomainError);
    // Junk above later lambdas is fine as long as the minima increase.
    CHECK_NOTHROW(make_schedule({{nat(2), nat(8)}, {nat(7)}}, nat(9), nat(1)));
}

TEST_CASE("ascending class decode satisfies the split law") {
    Alpha a = W();
    SymbolicClass c = make_asc_class(a, {zero()}, make_schedule({}, nat(1), nat(1)));
    CHECK(class_decode(c, 0) == pt(a, {0}));
    CHECK(class_decode(c, 1) == pt(a, {0, 1}));
    CHECK(class_decode(c, 3) == pt(a, {0, 1, 2, 3}));
    for (std::size_t n = 0; n < 8; ++n) {
        for (std::size_t m = n + 1; m < 8; ++m) {
            CHECK(lex_cmp(class_decode(c, n), class_decode(c, m)) < 0);
            CHECK(delta(class_decode(c, n), class_decode(c, m)) == schedule_lambda(c.sched, n));
        }
    }
}

TEST_CASE("descending class decode satisfies the split law") {
    Alpha a = W();
    // Levels 2n+1: the classic one-bit descending chain.
    SymbolicClass c = make_desc_class(a, {}, make_schedule({}, nat(1), nat(2)));
    CHECK(class_decode(c, 0) == pt(a, {1}));
    CHECK(class_decode(c, 1) == pt(a, {3}));
    for (std::size_t n = 0; n < 8; ++n) {
        for (std::size_t m = n + 1; m < 8; ++m) {
            CHECK(lex_cmp(class_decode(c, n), class_decode(c, m)) > 0);
            CHECK(delta(class_decode(c, n), class_decode(c, m)) == schedule_lambda(c.sched, n));
        }
    }
}

TEST_CASE("junk values inside groups do not disturb the split law") {
    Alpha a = W();
    LevelSchedule s = make_schedule({{nat(2), nat(50)}, {nat(7), nat(30)}}, nat(9), nat(20));
    SymbolicClass asc = make_asc_class(a, {}, s);
    SymbolicClass desc = make_desc_class(a, {}, s);
    for (std::size_t n = 0; n < 6; ++n) {
        for (std::size_t m = n + 1; m < 6; ++m) {
            CHECK(delta(class_decode(asc, n), class_decode(asc, m)) == schedule_lambda(s, n));
            CHECK(delta(class_decode(desc, n), class_decode(desc, m)) == schedule_lambda(s, n));
        }
    }
}

TEST_CASE("class extras sit at the closed end") {
    Alpha a = W();
    SymbolicClass asc = make_asc_class(a, {nat(1)}, make_schedule({}, nat(2), nat(1)),
                                       {pt(a, {5}), pt(a, {3})});
    // decode(0) = {1}; extras {5} > {3} > ... wait {5} vs {3}: first diff 3.
    CHECK(strictly_increasing(class_window(asc, 4)));
    CHECK(lex_cmp(asc.extras.back(), class_decode(asc, 0)) < 0);

    CHECK_THROWS_AS(make_asc_class(a, {nat(1)}, make_schedule({}, nat(2), nat(1)),
                                   {pt(a, {0})}),
                    DomainError);
    CHECK_THROWS_AS(make_desc_class(a, {}, make_schedule({}, nat(1), nat(2)),
                                    {pt(a, {2})}),
                    DomainError);
    SymbolicClass desc = make_desc_class(a, {}, make_schedule({}, nat(1), nat(2)),
                                         {pt(a, {0})});
    CHECK(strictly_increasing(class_window(desc, 4)));
}

TEST_CASE("zeta class halves and the crossing root") {
    Alpha a = W();
    SymbolicClass z = make_zeta_class(a, {}, zero(), make_schedule({}, nat(1), nat(2)),
                                      make_schedule({}, nat(2), nat(2)));
    CHECK(zeta_left_decode(z, 0) == pt(a, {1}));
    CHECK(zeta_left_decode(z, 2) == pt(a, {5}));
    CHECK(zeta_right_decode(z, 0) == pt(a, {0}));
    CHECK(zeta_right_decode(z, 2) == pt(a, {0, 2, 4}));
    CHECK(strictly_increasing(class_window(z, 5)));
    for (std::size_t n = 0; n < 5; ++n) {
        for (std::size_t m = 0; m < 5; ++m) {
            CHECK(delta(zeta_left_decode(z, n), zeta_right_decode(z, m)) == z.root);
        }
    }
    // Left half splits: lambda of the left schedule.
    for (std::size_t n = 0; n < 5; ++n) {
        for (std::size_t m = n + 1; m < 5; ++m) {
            CHECK(delta(zeta_left_decode(z, n), zeta_left_decode(z, m)) ==
                  schedule_lambda(z.left, n));
        }
    }
    CHECK_THROWS_AS(class_decode(z, 0), DomainError);
    // Levels on either half must lie above the root.
    CHECK_THROWS_AS(make_zeta_class(a, {}, nat(3), make_schedule({}, nat(1), nat(2)),
                                    make_schedule({}, nat(4), nat(2))),
                    DomainError);
}

TEST_CASE("zeta extras lie strictly between the halves") {
    Alpha a = W();
    SymbolicClass z = make_zeta_class(a, {}, zero(), make_schedule({}, nat(1), nat(2)),
                                      make_schedule({}, nat(2), nat(2)), {pt(a, {1, 3})});
    // {1,3} beats every left point {2n+1} at the first spare bit, yet loses to
    // every right point at the root bit 0.
    CHECK(lex_cmp(pt(a, {1, 3}), zeta_left_decode(z, 0)) > 0);
    CHECK(lex_cmp(pt(a, {1, 3}), zeta_right_decode(z, 0)) < 0);
    CHECK(strictly_increasing(class_window(z, 5)));
    // {2} falls below the left maximum {1}, so it cannot separate the halves.
    CHECK_THROWS_AS(make_zeta_class(a, {}, zero(), make_schedule({}, nat(1), nat(2)),
                                    make_schedule({}, nat(2), nat(2)), {pt(a, {2})}),
                    DomainError);
}

TEST_CASE("drop_class_prefix shifts the enumeration") {
    Alpha a = W();
    SymbolicClass asc = make_asc_class(a, {zero()}, make_schedule({}, nat(1), nat(1)));
    SymbolicClass d = drop_class_prefix(asc, 2);
    CHECK(d.stem == std::vector<Ordinal>{zero(), nat(1), nat(2)});
    for (std::size_t n = 0; n < 5; ++n) CHECK(class_decode(d, n) == class_decode(asc, n + 2));

    SymbolicClass desc = make_desc_class(a, {}, make_schedule({}, nat(1), nat(2)));
    SymbolicClass e = drop_class_prefix(desc, 3);
    for (std::size_t n = 0; n < 5; ++n) CHECK(class_decode(e, n) == class_decode(desc, n + 3));
}

TEST_CASE("keep_head_drop removes interior points only") {
    Alpha a = W();
    SymbolicClass asc = make_asc_class(a, {}, make_schedule({{nat(2)}, {nat(7)}}, nat(9), nat(1)));
    SymbolicClass k = keep_head_drop(asc, 2);
    CHECK(class_decode(k, 0) == class_decode(asc, 0));
    for (std::size_t n = 1; n < 5; ++n) CHECK(class_decode(k, n) == class_decode(asc, n + 2));
    CHECK(delta(class_decode(k, 0), class_decode(k, 1)) ==
          delta(class_decode(asc, 0), class_decode(asc, 1)));

    SymbolicClass desc = make_desc_class(a, {}, make_schedule({}, nat(1), nat(2)));
    SymbolicClass kd = keep_head_drop(desc, 2);
    CHECK(class_decode(kd, 0) == class_decode(desc, 0));
    for (std::size_t n = 1; n < 5; ++n) CHECK(class_decode(kd, n) == class_decode(desc, n + 2));
    CHECK(delta(class_decode(kd, 0), class_decode(kd, 1)) ==
          delta(class_decode(desc, 0), class_decode(desc, 3)));
}

TEST_CASE("drop_zeta_side trims either half") {
    Alpha a = W();
    SymbolicClass z = make_zeta_class(a, {}, zero(), make_schedule({}, nat(1), nat(2)),
                                      make_schedule({}, nat(2), nat(2)));
    SymbolicClass l = drop_zeta_side(z, Side::Left, 2);
    for (std::size_t n = 0; n < 4; ++n) {
        CHECK(zeta_left_decode(l, n) == zeta_left_decode(z, n + 2));
        CHECK(zeta_right_decode(l, n) == zeta_right_decode(z, n));
    }
    SymbolicClass r = drop_zeta_side(z, Side::Right, 2);
    CHECK(r.right_carry == std::vector<Ordinal>{nat(2), nat(4)});
    for (std::size_t n = 0; n < 4; ++n) {
        CHECK(zeta_left_decode(r, n) == zeta_left_decode(z, n));
        CHECK(zeta_right_decode(r, n) == zeta_right_decode(z, n + 2));
    }
    // The cross-split law survives the trim.
    CHECK(delta(zeta_left_decode(r, 0), zeta_right_decode(r, 0)) == z.root);
}

TEST_CASE("raw ascending sequence: general split law") {
    Alpha a = W();
    RawSequence r = make_raw(a, false, {}, {O("5"), O("2"), O("7")}, nat(9), nat(1), 3);
    CHECK(raw_decode(r, 0) == pt(a, {}));
    CHECK(raw_decode(r, 1) == pt(a, {5}));
    CHECK(raw_decode(r, 2) == pt(a, {2, 5}));
    for (std::size_t n = 0; n < 8; ++n) {
        for (std::size_t m = n + 1; m < 8; ++m) {
            CHECK(lex_cmp(raw_decode(r, n), raw_decode(r, m)) < 0);
            Ordinal expect = raw_level(r, n);
            for (std::size_t i = n + 1; i < m; ++i) expect = min(expect, raw_level(r, i));
            CHECK(delta(raw_decode(r, n), raw_decode(r, m)) == expect);
        }
    }
}

TEST_CASE("raw descending sequence: running minima decode") {
    Alpha a = W();
    RawSequence r = make_raw(a, true, {}, {O("5"), O("2"), O("7")}, nat(9), nat(1), 3);
    CHECK(raw_decode(r, 0) == pt(a, {2, 5}));
    CHECK(raw_decode(r, 1) == pt(a, {2}));
    CHECK(raw_decode(r, 2) == pt(a, {7}));
    CHECK(raw_decode(r, 3) == pt(a, {9}));
    for (std::size_t n = 0; n < 8; ++n) {
        for (std::size_t m = n + 1; m < 8; ++m) {
            CHECK(lex_cmp(raw_decode(r, n), raw_decode(r, m)) > 0);
            Ordinal expect = raw_level(r, n);
            for (std::size_t i = n + 1; i < m; ++i) expect = min(expect, raw_level(r, i));
            CHECK(delta(raw_decode(r, n), raw_decode(r, m)) == expect);
        }
    }
}

TEST_CASE("raw window certificate") {
    Alpha a = W();
    CHECK_THROWS_WITH_AS(make_raw(a, false, {}, {O("5"), O("2"), O("7")}, nat(9), nat(1), 1),
                         "window certificate invalid", DomainError);
    CHECK_THROWS_WITH_AS(make_raw(a, false, {}, {O("5"), O("7")}, nat(2), nat(2), 2),
                         "window certificate invalid", DomainError);
    CHECK_NOTHROW(make_raw(a, false, {}, {O("5"), O("2"), O("7")}, nat(9), nat(1), 2));
    CHECK_THROWS_AS(make_raw(a, false, {}, {O("5"), O("5")}, nat(9), nat(1), 2), DomainError);
    CHECK_THROWS_AS(make_raw(a, false, {}, {O("10")}, nat(9), nat(1), 1), DomainError);
}

TEST_CASE("drop_raw_prefix shifts the decode") {
    Alpha a = W();
    RawSequence r = make_raw(a, false, {}, {O("5"), O("2"), O("7")}, nat(9), nat(1), 3);
    RawSequence d = drop_raw_prefix(r, 2);
    CHECK(d.stem == std::vector<Ordinal>{nat(2), nat(5)});
    for (std::size_t n = 0; n < 6; ++n) CHECK(raw_decode(d, n) == raw_decode(r, n + 2));
    RawSequence dd = drop_raw_prefix(r, 5);
    for (std::size_t n = 0; n < 4; ++n) CHECK(raw_decode(dd, n) == raw_decode(r, n + 5));

    RawSequence s = make_raw(a, true, {}, {O("5"), O("2"), O("7")}, nat(9), nat(1), 3);
    RawSequence e = drop_raw_prefix(s, 1);
    CHECK(e.stem.empty());
    for (std::size_t n = 0; n < 6; ++n) CHECK(raw_decode(e, n) == raw_decode(s, n + 1));
}

TEST_CASE("raw zeta halves share the stem and cross at the root") {
    Alpha a = W();
    RawSequence left;
    left.levels = {O("3"), O("1")};
    left.tail_start = nat(5);
    left.tail_step = nat(1);
    left.window = 2;
    RawSequence right;
    right.levels = {};
    right.tail_start = nat(2);
    right.tail_step = nat(2);
    right.window = 1;
    RawZeta z = make_raw_zeta(a, {}, zero(), left, right);
    CHECK(raw_decode(z.left, 0) == pt(a, {1, 3}));
    CHECK(raw_decode(z.right, 0) == pt(a, {0}));
    CHECK(raw_decode(z.right, 2) == pt(a, {0, 2, 4}));
    for (std::size_t n = 0; n < 5; ++n) {
        for (std::size_t m = 0; m < 5; ++m) {
            CHECK(delta(raw_decode(z.left, n), raw_decode(z.right, m)) == z.root);
        }
    }
    // Left levels must stay above the root.
    RawSequence bad = left;
    bad.levels = {O("3"), zero()};
    CHECK_THROWS_AS(make_raw_zeta(a, {nat(20)}, zero(), bad, right), DomainError);
}

TEST_CASE("tower decode: intervals descend and ascend across roots") {
    Alpha a = W();
    // Roots 2k, inner levels 2k + 2n + 1.
    Tower t = make_tower(a, {}, make_schedule({}, zero(), nat(2)), zero(), nat(2), nat(2), nat(1));
    CHECK(tower_root(t, 0) == zero());
    CHECK(tower_root(t, 3) == nat(6));
    CHECK(tower_decode(t, 0, 0) == pt(a, {1}));
    CHECK(tower_decode(t, 0, 2) == pt(a, {5}));
    CHECK(tower_decode(t, 1, 0) == pt(a, {0, 3}));
    CHECK(tower_decode(t, 2, 1) == pt(a, {0, 2, 7}));
    for (std::size_t k = 0; k < 4; ++k) {
        for (std::size_t n = 0; n < 4; ++n) {
            for (std::size_t m = n + 1; m < 4; ++m) {
                CHECK(lex_cmp(tower_decode(t, k, n), tower_decode(t, k, m)) > 0);
                CHECK(delta(tower_decode(t, k, n), tower_decode(t, k, m)) ==
                      tower_inner_level(t, k, n));
            }
            for (std::size_t j = k + 1; j < 4; ++j) {
                for (std::size_t m = 0; m < 4; ++m) {
                    CHECK(lex_cmp(tower_decode(t, k, n), tower_decode(t, j, m)) < 0);
                    CHECK(delta(tower_decode(t, k, n), tower_decode(t, j, m)) == tower_root(t, k));
                }
            }
        }
    }
}

TEST_CASE("tower intervals as standalone classes, and interval drops") {
    Alpha a = W();
    Tower t = make_tower(a, {}, make_schedule({}, zero(), nat(2)), zero(), nat(2), nat(2), nat(1));
    SymbolicClass c1 = tower_interval(t, 1);
    for (std::size_t n = 0; n < 5; ++n) CHECK(class_decode(c1, n) == tower_decode(t, 1, n));

    Tower d = drop_tower_intervals(t, 2);
    CHECK(d.stem == std::vector<Ordinal>{zero(), nat(2)});
    for (std::size_t k = 0; k < 3; ++k) {
        for (std::size_t n = 0; n < 3; ++n) {
            CHECK(tower_decode(d, k, n) == tower_decode(t, k + 2, n));
        }
    }
}

TEST_CASE("transfinite tower over w^2") {
    Alpha a = make_alpha(O("w^(2)"));
    Tower t = make_tower(a, {}, make_schedule({}, zero(), nat(1)), zero(), omega(), nat(1), nat(1));
    CHECK(tower_inner_level(t, 2, 3) == O("w*2 + 4"));
    CHECK(tower_decode(t, 1, 0) == make_point(a, {zero(), O("w + 1")}));
    for (std::size_t k = 0; k < 3; ++k) {
        for (std::size_t j = k + 1; j < 3; ++j) {
            CHECK(delta(tower_decode(t, k, 0), tower_decode(t, j, 1)) == tower_root(t, k));
        }
    }
}

TEST_CASE("tower validation") {
    Alpha a = W();
    // Interval 1 would sit at its own root: 2+0+1 = 3 vs root 3.
    CHECK_THROWS_AS(make_tower(a, {}, make_schedule({}, zero(), nat(3)), zero(), nat(2), nat(2),
                               nat(1)),
                    DomainError);
    // Constant inner levels never ascend.
    CHECK_THROWS_AS(make_tower(make_alpha(O("w^(2)")), {}, make_schedule({}, zero(), nat(1)),
                               zero(), omega(), zero(), nat(1)),
                    DomainError);
    // Valid beyond the window but not certifiable: roots w*k against scale w.
    CHECK_THROWS_WITH_AS(make_tower(make_alpha(O("w^(3)")), {},
                                    make_schedule({}, zero(), omega()), zero(), omega(), nat(1),
                                    nat(1)),
                         "tower root growth not certified", DomainError);
    // Root groups must be singletons.
    CHECK_THROWS_AS(make_tower(a, {}, make_schedule({}, zero(), nat(2), 2, {0, 1}), zero(),
                               nat(4), nat(2), nat(1)),
                    DomainError);
    // Stem bits may not recur as inner levels.
    CHECK_THROWS_AS(make_tower(a, {nat(3)}, make_schedule({}, zero(), nat(2)), zero(), nat(2),
                               nat(2), nat(1)),
                    DomainError);
}

TEST_CASE("block comparison certifies separation") {
    Alpha a = W();
    // All points of the ascending class lie below {0}:  supports start at 1.
    SymbolicClass asc = make_asc_class(a, {nat(1)}, make_schedule({}, nat(2), nat(1)));
    FiniteBlock top = make_finite_block(a, {pt(a, {0})});
    CHECK(compare_blocks(asc, top) == BlockOrder::Less);
    CHECK(compare_blocks(top, asc) == BlockOrder::Greater);

    // An unbounded ascending class overlaps a later finite point.
    SymbolicClass wide = make_asc_class(a, {}, make_schedule({}, zero(), nat(1)));
    FiniteBlock inside = make_finite_block(a, {pt(a, {5})});
    CHECK(compare_blocks(wide, inside) == BlockOrder::Overlap);

    // Descending class above its stem point; finite block below fits first.
    SymbolicClass desc = make_desc_class(a, {nat(1)}, make_schedule({}, nat(2), nat(1)));
    FiniteBlock low = make_finite_block(a, {pt(a, {2})});
    // {2} vs stem {1}: the stem-point is bigger... {1} has 1 at position 1,
    // {2} has 0 there, so {2} < every point of the descending class.
    CHECK(compare_blocks(low, desc) == BlockOrder::Less);
}

TEST_CASE("family construction enforces order") {
    Alpha a = W();
    SymbolicClass asc = make_asc_class(a, {nat(1)}, make_schedule({}, nat(2), nat(1)));
    FiniteBlock top = make_finite_block(a, {pt(a, {0})});
    CHECK_NOTHROW(make_family(a, {Block(asc), Block(top)}));
    CHECK_THROWS_AS(make_family(a, {Block(top), Block(asc)}), DomainError);
}

TEST_CASE("family order types normalize across block shapes") {
    Alpha a = W();
    // desc + finite + asc glue into a zeta: w* + 2 + w == zeta.
    SymbolicClass desc = make_desc_class(a, {nat(1)}, make_schedule({}, nat(2), nat(2)));
    FiniteBlock mid = make_finite_block(a, {pt(a, {0, 2}), pt(a, {0, 2, 4})});
    SymbolicClass asc = make_asc_class(a, {zero(), nat(1)}, make_schedule({}, nat(3), nat(2)));
    RepFamily f = make_family(a, {Block(desc), Block(mid), Block(asc)});
    NormalReport rep = family_order_type(f);
    REQUIRE(rep.form.has_value());
    CHECK(to_string(*rep.form) == "w~ + w");

    RawSequence left;
    left.levels = {};
    left.tail_start = nat(3);
    left.tail_step = nat(2);
    left.window = 1;
    RawSequence right;
    right.levels = {};
    right.tail_start = nat(2);
    right.tail_step = nat(2);
    right.window = 1;
    RepFamily g = make_family(a, {Block(make_raw_zeta(a, {}, zero(), left, right))});
    CHECK(same_order_type(f, g));

    Tower t = make_tower(a, {}, make_schedule({}, zero(), nat(2)), zero(), nat(2), nat(2), nat(1));
    RepFamily h = make_family(a, {Block(t)});
    NormalReport rt = family_order_type(h);
    CHECK(!rt.form.has_value());
    CHECK(rt.embeds_omegastar_omega);
    CHECK(!rt.embeds_eta);
    CHECK(!same_order_type(f, h));
}

TEST_CASE("condensation classes merge across blocks") {
    Alpha a = W();
    SymbolicClass desc = make_desc_class(a, {nat(1)}, make_schedule({}, nat(2), nat(2)));
    FiniteBlock mid = make_finite_block(a, {pt(a, {0, 2}), pt(a, {0, 2, 4})});
    SymbolicClass asc = make_asc_class(a, {zero(), nat(1)}, make_schedule({}, nat(3), nat(2)));

    RepFamily zeta_like = make_family(a, {Block(desc), Block(mid), Block(asc)});
    auto ccs = cc_enumerate(zeta_like);
    REQUIRE(ccs.size() == 1);
    CHECK(ccs[0].kind == CcKind::Zeta);
    CHECK(ccs[0].first_block == 0);
    CHECK(ccs[0].last_block == 2);

    RepFamily pair = make_family(a, {Block(desc), Block(asc)});
    auto ccp = cc_enumerate(pair);
    REQUIRE(ccp.size() == 1);
    CHECK(ccp[0].kind == CcKind::Zeta);

    // desc + finite with nothing ascending after it: one w* class.
    RepFamily tail = make_family(a, {Block(desc), Block(mid)});
    auto cct = cc_enumerate(tail);
    REQUIRE(cct.size() == 1);
    CHECK(cct[0].kind == CcKind::OmegaStar);
    CHECK(cct[0].last_block == 1);

    // finite before a descending class stays its own class.
    FiniteBlock low = make_finite_block(a, {pt(a, {2})});
    SymbolicClass hi = make_desc_class(a, {nat(1)}, make_schedule({}, nat(3), nat(1)));
    RepFamily fd = make_family(a, {Block(low), Block(hi)});
    auto ccf = cc_enumerate(fd);
    REQUIRE(ccf.size() == 2);
    CHECK(ccf[0].kind == CcKind::Finite);
    CHECK(ccf[1].kind == CcKind::OmegaStar);

    // finite directly before an ascending class joins it.
    SymbolicClass upper = make_asc_class(a, {nat(1), nat(2)}, make_schedule({}, nat(3), nat(1)));
    RepFamily fa = make_family(a, {Block(low), Block(upper)});
    auto cca = cc_enumerate(fa);
    REQUIRE(cca.size() == 1);
    CHECK(cca[0].kind == CcKind::Omega);
    CHECK(cca[0].first_block == 0);
}

TEST_CASE("two ascending classes stay separate classes") {
    Alpha a = W();
    SymbolicClass one = make_asc_class(a, {nat(1)}, make_schedule({}, nat(4), nat(1)));
    SymbolicClass two = make_asc_class(a, {zero(), nat(1)}, make_schedule({}, nat(4), nat(1)));
    RepFamily f = make_family(a, {Block(one), Block(two)});
    auto ccs = cc_enumerate(f);
    REQUIRE(ccs.size() == 2);
    CHECK(ccs[0].kind == CcKind::Omega);
    CHECK(ccs[1].kind == CcKind::Omega);

    NormalReport rep = family_order_type(f);
    REQUIRE(rep.form.has_value());
    CHECK(to_string(*rep.form) == "w*2");
}

TEST_CASE("block samples are sorted and respect block order") {
    Alpha a = W();
    SymbolicClass desc = make_desc_class(a, {nat(1)}, make_schedule({}, nat(2), nat(2)));
    SymbolicClass asc = make_asc_class(a, {zero(), nat(1)}, make_schedule({}, nat(3), nat(2)));
    RepFamily f = make_family(a, {Block(desc), Block(asc)});
    std::vector<Point> all;
    for (const auto& b : f.blocks) {
        auto s = block_sample(b, 5);
        CHECK(strictly_increasing(s));
        all.insert(all.end(), s.begin(), s.end());
    }
    CHECK(strictly_increasing(all));

    Tower t = make_tower(a, {}, make_schedule({}, zero(), nat(2)), zero(), nat(2), nat(2), nat(1));
    CHECK(strictly_increasing(block_sample(Block(t), 4)));
}

TEST_CASE("family text round trips") {
    std::string text =
        "ambient w\n"
        "desc(stem={1}, sched=sched(start=2, step=2))\n"
        "finite[point{0, 2}, point{0, 2, 4}]\n"
        "asc(stem={0, 1}, sched=sched(start=3, step=2))\n";
    RepFamily f = parse_family(text);
    CHECK(f.blocks.size() == 3);
    CHECK(to_text(f) == text);

    std::string sched_text =
        "ambient w^(2)\n"
        "asc(stem={0}, sched=sched(prefix=[[2, 50], [7]], start=9, step=20, stride=2, offsets=[0, 1]), "
        "extras=[point{1}])\n";
    RepFamily g = parse_family(sched_text);
    CHECK(to_text(g) == sched_text);

    std::string zeta_text =
        "ambient w\n"
        "zeta(root=0, stem={}, left=sched(start=1, step=2), right=sched(start=6, step=2), "
        "carry={2, 4}, extras=[point{1, 3}])\n";
    RepFamily z = parse_family(zeta_text);
    CHECK(to_text(z) == zeta_text);

    std::string raw_text =
        "ambient w\n"
        "rawdesc(stem={}, levels=[5, 2, 7], tail=(start=9, step=1), window=3)\n"
        "finite[point{1}]\n";
    CHECK(to_text(parse_family(raw_text)) == raw_text);

    std::string rz_text =
        "ambient w\n"
        "rawzeta(root=0, stem={}, left=(levels=[3, 1], tail=(start=5, step=1), window=2), "
        "right=(levels=[], tail=(start=2, step=2), window=1))\n";
    CHECK(to_text(parse_family(rz_text)) == rz_text);

    std::string tower_text =
        "ambient w\n"
        "tower(stem={}, roots=sched(start=0, step=2), inner=(prefix=0, scale=2, step=2, "
        "offset=1))\n";
    CHECK(to_text(parse_family(tower_text)) == tower_text);
}

TEST_CASE("dyadic text round trips") {
    std::string text =
        "ambient w\n"
        "dyadic(height=4, bits={1, 3}, pad0=2, pad1=2, remap0=0, remap1=11)\n";
    DyadicCopy d = parse_dyadic(text);
    CHECK(to_text(d) == text);
    CHECK_THROWS_AS(parse_family(text), DomainError);
}

TEST_CASE("parse errors carry context") {
    CHECK_THROWS_AS(parse_family(""), ParseError);
    CHECK_THROWS_AS(parse_family("ambient w\nnonsense(1)\n"), ParseError);
    CHECK_THROWS_AS(parse_family("asc(stem={}, sched=sched(start=1, step=1))\n"), ParseError);
    CHECK_THROWS_AS(parse_family("ambient w\nasc(stem={}, sched=sched(start=1, step=1)) junk\n"),
                    ParseError);
    // Comments and blank lines are fine.
    CHECK_NOTHROW(parse_family("# header\nambient w\n\nasc(stem={}, sched=sched(start=1, step=1))\n"));
    // Out-of-order blocks are a domain problem, not a syntax problem.
    CHECK_THROWS_AS(parse_family("ambient w\n"
                                 "finite[point{0}]\n"
                                 "asc(stem={1}, sched=sched(start=2, step=1))\n"),
                    DomainError);
}

TEST_CASE("dyadic tree geometry") {
    Alpha a = W();
    DyadicCopy d = make_dyadic(a, {nat(1)}, nat(4), 2, 3);
    CHECK(dyadic_height(d, {}) == nat(4));
    CHECK(dyadic_height(d, {0, 1}) == nat(9));
    Stem s = dyadic_stem(d, {0, 1});
    CHECK(s.height == nat(9));
    CHECK(s.bits == std::vector<Ordinal>{nat(1), nat(6)});
    // Unremapped tree: path passes through unchanged.
    CHECK(dyadic_path(d, {0, 1}) == std::vector<int>{0, 1});
    CHECK(dyadic_point(d, {0, 1}) == make_point(a, {nat(1), nat(6), nat(9)}));

    DyadicCopy r = make_dyadic(a, {}, nat(2), 1, 1, {0, 0}, {1});
    CHECK(dyadic_path(r, {0, 1}) == std::vector<int>{0, 0, 1});
    CHECK(dyadic_path(r, {1}) == std::vector<int>{1});
    CHECK(dyadic_path(r, {}) == std::vector<int>{});
    CHECK(dyadic_height(r, dyadic_path(r, {0})) == nat(4));

    CHECK_THROWS_AS(make_dyadic(a, {nat(5)}, nat(4), 2, 2), DomainError);
    CHECK_THROWS_AS(make_dyadic(a, {}, nat(4), 0, 2), DomainError);
    CHECK_THROWS_AS(make_dyadic(a, {}, nat(4), 1, 1, {1}, {1}), DomainError);
}

TEST_CASE("points decoded from any block stay inside the ambient") {
    Alpha a = make_alpha(O("w*2"));
    SymbolicClass c = make_asc_class(a, {omega()}, make_schedule({}, O("w + 1"), nat(1)));
    CHECK(class_decode(c, 2) == make_point(a, {omega(), O("w + 1"), O("w + 2")}));
    CHECK_THROWS_AS(make_asc_class(a, {}, make_schedule({}, O("w*2"), nat(1))), DomainError);
    CHECK_THROWS_AS(make_raw(a, false, {}, {O("w*2 + 1")}, O("w + 1"), nat(1), 1), DomainError);
}
