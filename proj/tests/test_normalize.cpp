#include <doctest.h>

#include "cpxcp/classify.hpp"
#include "cpxcp/normalize.hpp"
#include "cpxcp/oracle.hpp"

#include <random>

using namespace cpxcp;

namespace {

bool same_group(const GroupPresentation& a, const GroupPresentation& b) {
    return brute_iso(build_table(a), build_table(b)).has_value();
}

}  // namespace

TEST_CASE("locate_t1: pinned examples") {
    SUBCASE("fixed point") {
        GroupPresentation g = parse("group { prime 2; center t:4; comm t^2; xp 1; yp t }");
        CHECK(locate_t1(g) == g);
    }
    SUBCASE("center (t:2, t':4), s = t t'^2 pivots to t1 = t t'^2 with m1 = 1") {
        GroupPresentation g =
            parse("group { prime 2; center t:2, u:4; comm t u^2; xp 1; yp 1 }");
        GroupPresentation n = locate_t1(g);
        CHECK(n.center.at(0).order == CyclicOrder::finite(2));
        CHECK(n.s.c[0] == 1);
        for (std::size_t i = 1; i < n.center.rank(); ++i) CHECK(n.s.c[i] == 0);
        CHECK(invariant_factors(n.center) == invariant_factors(g.center));
        CHECK(same_group(g, n));
    }
    SUBCASE("center C9, s = t^6 rebases to t1 = t^2") {
        GroupPresentation g = parse("group { prime 3; center t:9; comm t^6; xp 1; yp 1 }");
        GroupPresentation n = locate_t1(g);
        CHECK(n.s.c[0] == 3);  // s = t1^{3^{2-1}}
        CHECK(n.center.at(0).order == CyclicOrder::finite(9));
        CHECK(same_group(g, n));
    }
    SUBCASE("mixed factor orders are split first") {
        GroupPresentation g = parse("group { prime 2; center t:12; comm t^6; xp t; yp 1 }");
        GroupPresentation n = locate_t1(g);
        // C12 splits into a 2-part and a 3-part; t1 heads the list.
        CHECK(n.center.rank() == 2);
        CHECK(n.center.at(0).order == CyclicOrder::finite(4));
        CHECK(n.s.c[0] == 2);
        CHECK(invariant_factors(n.center) == invariant_factors(g.center));
        CHECK(same_group(g, n));
    }
    SUBCASE("pivot picks the minimal m with a unit digit") {
        // s = a^2 b^2 over (a:4, b:8): digits c_a = 1 (m=2), c_b hmm 2 = c*4 -> not unit.
        GroupPresentation g =
            parse("group { prime 2; center a:4, b:8; comm a^2 b^4; xp 1; yp 1 }");
        GroupPresentation n = locate_t1(g);
        CHECK(n.center.at(0).order == CyclicOrder::finite(4));
        CHECK(n.s.c[0] == 2);
        CHECK(same_group(g, n));
    }
    SUBCASE("idempotent") {
        GroupPresentation g =
            parse("group { prime 2; center t:2, u:4; comm t u^2; xp u; yp t }");
        GroupPresentation n = locate_t1(g);
        CHECK(locate_t1(n) == n);
    }
}

TEST_CASE("reduce_pth_powers: pinned examples") {
    SUBCASE("p=3, o(t1)=9, xp = t1^5 reduces to t1^2") {
        GroupPresentation g = parse("group { prime 3; center t1:9; comm t1^3; xp t1^5; yp 1 }");
        Transcript tr;
        GroupPresentation n = reduce_pth_powers(g, &tr);
        CHECK(n.xp.c[0] == 2);
        REQUIRE(tr.steps.size() == 1);
        // The recorded move is x *= t1^8 (the paper's t1^{p^{m1}-q} with q=1).
        const auto* mv = std::get_if<GeneratorMove>(&tr.steps[0]);
        REQUIRE(mv);
        CHECK(mv->kind == GeneratorMove::Kind::XTimesCentral);
        CHECK(mod_floor(mv->v.c[0], 9) == 8);
        CHECK(same_group(g, n));
    }
    SUBCASE("p=2, xp = u1^6 on an infinite factor clears to 1") {
        GroupPresentation g =
            parse("group { prime 2; center t1:2, u1:inf; comm t1; xp u1^6; yp 1 }");
        GroupPresentation n = reduce_pth_powers(g);
        CHECK(n.xp.is_zero());
    }
    SUBCASE("already reduced: identity") {
        GroupPresentation g = parse("group { prime 3; center t1:9; comm t1^3; xp t1^2; yp t1 }");
        CHECK(reduce_pth_powers(g) == g);
    }
    SUBCASE("coprime-torsion coordinates clear entirely") {
        GroupPresentation g =
            parse("group { prime 2; center t1:2, c:15; comm t1; xp c^7; yp c^4 }");
        GroupPresentation n = reduce_pth_powers(g);
        CHECK(n.xp.is_zero());
        CHECK(n.yp.is_zero());
        CHECK(same_group(g, n));
    }
    SUBCASE("idempotent on random scrambles") {
        std::mt19937_64 rng(2024);
        GroupPresentation g = canonical_presentation(4, 3, {1, 2});
        for (int it = 0; it < 30; ++it) {
            GroupPresentation s = scramble(g, rng, 4);
            GroupPresentation r = reduce_pth_powers(locate_t1(s));
            CHECK(reduce_pth_powers(r) == r);
        }
    }
}

TEST_CASE("apply_move: pinned examples") {
    SUBCASE("x *= y at odd p turns xp=1, yp=t1 into xp=t1") {
        GroupPresentation g = parse("group { prime 3; center t1:3; comm t1; xp 1; yp t1 }");
        GroupPresentation n = apply_move(g, GeneratorMove::x_times_y_pow(1));
        CHECK(n.xp.c[0] == 1);
        CHECK(n.yp.c[0] == 1);
        CHECK(same_group(g, n));
    }
    SUBCASE("swap exchanges xp and yp and rebases s") {
        GroupPresentation g = canonical_presentation(3, 3, {1, 1});
        GroupPresentation n = apply_move(g, GeneratorMove::swap());
        CHECK(n.xp == g.yp);
        // s is inverted, then locate_t1 re-normalizes it onto the first factor.
        CHECK(n.s.c[0] == pow_int(3, 0));
        CHECK(same_group(g, n));
    }
    SUBCASE("x^2 at p=5 rebases the commutator back to t1-power form") {
        GroupPresentation g = parse("group { prime 5; center t1:5; comm t1; xp 1; yp 1 }");
        GroupPresentation n = apply_move(g, GeneratorMove::x_pow(2));
        CHECK(n.s.c[0] == 1);  // restored by locate_t1
    }
    SUBCASE("gcd(c, p) != 1 rejected") {
        GroupPresentation g = canonical_presentation(1, 3, {1});
        CHECK_THROWS_AS(apply_move(g, GeneratorMove::x_pow(3)), InvalidMove);
    }
}

TEST_CASE("moves preserve the group up to isomorphism (|G| <= 256)") {
    std::mt19937_64 rng(99);
    std::vector<GroupPresentation> fixtures = {
        canonical_presentation(1, 2, {2}),
        canonical_presentation(2, 2, {1}),
        canonical_presentation(3, 2, {1, 2}),
        canonical_presentation(4, 3, {1, 1}),
        canonical_presentation(7, 2, {1, 1, 1}),
    };
    for (const auto& g : fixtures) {
        MulTable before = build_table(g);
        GroupPresentation cur = g;
        for (int it = 0; it < 6; ++it) {
            GeneratorMove mv = random_move(cur, rng);
            cur = apply_move(cur, mv);
            REQUIRE(validate(cur).empty());
        }
        CHECK(brute_iso(before, build_table(cur)).has_value());
    }
}

TEST_CASE("move then inverse move is the identity after reduction") {
    GroupPresentation g = canonical_presentation(4, 3, {1, 1});
    SUBCASE("x *= y^n undone by x *= y^{p-n}") {
        GroupPresentation a = apply_move(g, GeneratorMove::x_times_y_pow(1));
        GroupPresentation b = apply_move(a, GeneratorMove::x_times_y_pow(2));
        CHECK(reduce_pth_powers(b) == reduce_pth_powers(g));
    }
    SUBCASE("swap twice") {
        GroupPresentation a = apply_move(apply_move(g, GeneratorMove::swap()),
                                         GeneratorMove::swap());
        CHECK(reduce_pth_powers(a) == reduce_pth_powers(g));
    }
    SUBCASE("x^c undone by x^{c^{-1} mod p}") {
        GroupPresentation g5 = canonical_presentation(2, 5, {2});
        GroupPresentation a = apply_move(g5, GeneratorMove::x_pow(2));
        GroupPresentation b = apply_move(a, GeneratorMove::x_pow(3));  // 2*3 = 6 = 1 mod 5
        CHECK(reduce_pth_powers(b) == reduce_pth_powers(g5));
    }
}

TEST_CASE("transcript replay reproduces the normalized presentation") {
    std::mt19937_64 rng(555);
    GroupPresentation g = parse(
        "group { prime 2; center t:2, u:4, c:3; comm t u^2; xp u c; yp t c^2 }");
    Transcript tr;
    GroupPresentation n = locate_t1(g, &tr);
    n = reduce_pth_powers(n, &tr);
    n = apply_move(n, GeneratorMove::x_times_y_pow(1), &tr);
    CHECK(replay(g, tr) == n);
}

TEST_CASE("scramble keeps presentations valid and iso") {
    std::mt19937_64 rng(31);
    for (int fam : {1, 3, 4}) {
        GroupPresentation g = canonical_presentation(fam, 2, fam == 1 ? std::vector<Int>{2}
                                                                      : std::vector<Int>{1, 1});
        for (int it = 0; it < 20; ++it) {
            GroupPresentation s = scramble(g, rng, 5);
            REQUIRE(validate(s).empty());
        }
        GroupPresentation s = scramble(g, rng, 8);
        CHECK(same_group(g, s));
    }
}
