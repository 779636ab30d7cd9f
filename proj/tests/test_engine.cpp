#include <doctest.h>

#include "cpxcp/classify.hpp"
#include "cpxcp/engine.hpp"
#include "cpxcp/oracle.hpp"

#include <random>

using namespace cpxcp;

namespace {

std::vector<Element> all_elements(const GroupPresentation& g) {
    // Finite instances only; mixed-radix walk over the center.
    std::vector<Element> out;
    std::vector<Int> orders;
    for (const auto& f : g.center.factors()) orders.push_back(f.order.n);
    std::vector<Int> z(orders.size(), 0);
    for (;;) {
        for (Int xe = 0; xe < g.p; ++xe)
            for (Int ye = 0; ye < g.p; ++ye)
                out.push_back(make_element(g, xe, ye, CentralVector{z}));
        std::size_t k = 0;
        while (k < orders.size()) {
            if (++z[k] < orders[k]) break;
            z[k] = 0;
            ++k;
        }
        if (k == orders.size()) break;
    }
    return out;
}

Element random_element(const GroupPresentation& g, std::mt19937_64& rng) {
    std::uniform_int_distribution<long long> e(0, to_i64(g.p) - 1);
    CentralVector z = g.center.zero();
    for (std::size_t i = 0; i < g.center.rank(); ++i) {
        if (g.center.at(i).order.is_finite())
            z.c[i] = std::uniform_int_distribution<long long>(
                0, to_i64(g.center.at(i).order.n) - 1)(rng);
        else
            z.c[i] = std::uniform_int_distribution<long long>(-9, 9)(rng);
    }
    return make_element(g, e(rng), e(rng), z);
}

std::vector<GroupPresentation> small_instances() {
    // Every canonical finite instance with |G| <= 81.
    std::vector<GroupPresentation> out;
    for (int fam : {1, 2}) {
        out.push_back(canonical_presentation(fam, 2, {1}));  // 8
        out.push_back(canonical_presentation(fam, 2, {2}));  // 16
        out.push_back(canonical_presentation(fam, 2, {3}));  // 32
        out.push_back(canonical_presentation(fam, 3, {1}));  // 27
        out.push_back(canonical_presentation(fam, 3, {2}));  // 81
    }
    for (int fam : {3, 4}) {
        out.push_back(canonical_presentation(fam, 2, {1, 1}));  // 16
        out.push_back(canonical_presentation(fam, 2, {1, 2}));  // 32
        out.push_back(canonical_presentation(fam, 2, {2, 1}));
        out.push_back(canonical_presentation(fam, 2, {2, 2}));  // 64
        out.push_back(canonical_presentation(fam, 3, {1, 1}));  // 81
    }
    out.push_back(canonical_presentation(7, 2, {1, 1, 1}));  // 32
    out.push_back(canonical_presentation(7, 2, {1, 1, 2}));  // 64
    return out;
}

}  // namespace

TEST_CASE("multiply: pinned examples") {
    GroupPresentation g1 = canonical_presentation(1, 2, {1});
    Element x = gen_x(g1), y = gen_y(g1);
    SUBCASE("x*y collects with no correction") {
        Element xy = multiply(g1, x, y);
        CHECK(xy.xe == 1);
        CHECK(xy.ye == 1);
        CHECK(xy.z.is_zero());
    }
    SUBCASE("y*x picks up s^{-1} = t1") {
        Element yx = multiply(g1, y, x);
        CHECK(yx.xe == 1);
        CHECK(yx.ye == 1);
        CHECK(yx.z.c[0] == 1);
        // Definitional check on the 8-element table: x^{-1} y^{-1} x y = t1.
        Element comm = multiply(g1, multiply(g1, inverse(g1, x), inverse(g1, y)),
                                multiply(g1, x, y));
        CHECK(is_central(g1, comm));
        CHECK(comm.z.c[0] == 1);
    }
    SUBCASE("x*x carries into xp in the quaternion-type instance") {
        GroupPresentation g2 = canonical_presentation(2, 2, {1});
        Element xx = multiply(g2, gen_x(g2), gen_x(g2));
        CHECK(xx.xe == 0);
        CHECK(xx.ye == 0);
        CHECK(xx.z.c[0] == 1);
    }
    SUBCASE("mixed presentations rejected") {
        GroupPresentation g2 = canonical_presentation(2, 2, {1});
        CHECK_THROWS_AS(multiply(g1, gen_x(g1), gen_x(g2)), MixedPresentations);
    }
}

TEST_CASE("associativity: exhaustive for every instance with |G| <= 81") {
    for (const auto& g : small_instances()) {
        auto size = g.group_size();
        REQUIRE(size.has_value());
        if (*size > 81) continue;
        auto elems = all_elements(g);
        REQUIRE(Int(elems.size()) == *size);
        for (const auto& a : elems)
            for (const auto& b : elems)
                for (const auto& c : elems)
                    REQUIRE(multiply(g, multiply(g, a, b), c) ==
                            multiply(g, a, multiply(g, b, c)));
    }
}

TEST_CASE("inverse") {
    GroupPresentation g2 = canonical_presentation(2, 2, {1});
    SUBCASE("identity") { CHECK(inverse(g2, identity(g2)) == identity(g2)); }
    SUBCASE("x in the dihedral-type instance has order 2") {
        GroupPresentation g1 = canonical_presentation(1, 2, {1});
        CHECK(inverse(g1, gen_x(g1)) == gen_x(g1));
    }
    SUBCASE("x in the quaternion-type instance") {
        Element xi = inverse(g2, gen_x(g2));
        CHECK(multiply(g2, gen_x(g2), xi) == identity(g2));
        CHECK(multiply(g2, xi, gen_x(g2)) == identity(g2));
    }
    SUBCASE("both-sided inverse on random elements, including infinite factors") {
        GroupPresentation g6 = canonical_presentation(6, 3, {2});
        std::mt19937_64 rng(17);
        for (int it = 0; it < 200; ++it) {
            Element a = random_element(g6, rng);
            CHECK(multiply(g6, a, inverse(g6, a)) == identity(g6));
            CHECK(multiply(g6, inverse(g6, a), a) == identity(g6));
        }
    }
}

TEST_CASE("power: pinned examples") {
    SUBCASE("(xy)^2 = t1 in the dihedral-type instance") {
        GroupPresentation g1 = canonical_presentation(1, 2, {1});
        Element xy = multiply(g1, gen_x(g1), gen_y(g1));
        Element sq = power(g1, xy, 2);
        CHECK(sq.xe == 0);
        CHECK(sq.ye == 0);
        CHECK(sq.z.c[0] == 1);
    }
    SUBCASE("(xy)^3 = 1 at p = 3 (odd-p cancellation)") {
        GroupPresentation g1 = canonical_presentation(1, 3, {1});
        Element xy = multiply(g1, gen_x(g1), gen_y(g1));
        CHECK(power(g1, xy, 3) == identity(g1));
    }
    SUBCASE("g^0 = 1") {
        GroupPresentation g1 = canonical_presentation(1, 3, {1});
        std::mt19937_64 rng(3);
        CHECK(power(g1, random_element(g1, rng), 0) == identity(g1));
    }
}

TEST_CASE("power agrees with iterated multiplication for n in [-5, 20]") {
    for (const auto& g : small_instances()) {
        auto size = g.group_size();
        if (*size > 81) continue;
        for (const auto& a : all_elements(g)) {
            Element acc = identity(g);
            for (int n = 0; n <= 20; ++n) {
                REQUIRE(power(g, a, n) == acc);
                acc = multiply(g, acc, a);
            }
            Element inv = inverse(g, a);
            acc = identity(g);
            for (int n = 0; n >= -5; --n) {
                REQUIRE(power(g, a, n) == acc);
                acc = multiply(g, acc, inv);
            }
        }
    }
    SUBCASE("infinite instance too") {
        GroupPresentation g9 = canonical_presentation(9, 2, {1});
        std::mt19937_64 rng(23);
        for (int it = 0; it < 25; ++it) {
            Element a = random_element(g9, rng);
            Element acc = identity(g9);
            for (int n = 0; n <= 20; ++n) {
                REQUIRE(power(g9, a, n) == acc);
                acc = multiply(g9, acc, a);
            }
        }
    }
}

TEST_CASE("commutator: determinant formula equals the definitional value") {
    SUBCASE("pinned") {
        GroupPresentation g = canonical_presentation(1, 3, {2});
        Element x = gen_x(g), y = gen_y(g);
        CHECK(commutator(g, x, y) == g.s);
        CHECK(commutator(g, x, multiply(g, x, y)) == g.s);
        CHECK(commutator(g, y, x) == g.center.neg(g.s));
    }
    SUBCASE("1000 random pairs per instance") {
        std::mt19937_64 rng(31337);
        std::vector<GroupPresentation> gs = {
            canonical_presentation(1, 2, {1}), canonical_presentation(4, 3, {1, 2}),
            canonical_presentation(8, 3, {1, 1}), canonical_presentation(9, 5, {1})};
        for (const auto& g : gs) {
            for (int it = 0; it < 1000; ++it) {
                Element a = random_element(g, rng), b = random_element(g, rng);
                CentralVector det = commutator(g, a, b);
                Element def = multiply(
                    g, multiply(g, inverse(g, a), inverse(g, b)), multiply(g, a, b));
                CHECK(is_central(g, def));
                CHECK(def.z == det);
            }
        }
    }
}

TEST_CASE("element_order") {
    SUBCASE("x has order 4 in the quaternion-type instance") {
        GroupPresentation g2 = canonical_presentation(2, 2, {1});
        CHECK(element_order(g2, gen_x(g2)) == CyclicOrder::finite(4));
        // Oracle confirmation: the whole table has one element of order 1,
        // one of order 2, six of order 4 (the quaternion census).
        OrderProfile prof = order_profile(build_table(g2));
        CHECK(prof.counts[1] == 1);
        CHECK(prof.counts[2] == 1);
        CHECK(prof.counts[4] == 6);
    }
    SUBCASE("y in a family-5 instance has infinite order") {
        GroupPresentation g5 = canonical_presentation(5, 3, {1});
        CHECK(element_order(g5, gen_y(g5)) == CyclicOrder::infinite());
    }
    SUBCASE("central generator") {
        GroupPresentation g1 = canonical_presentation(1, 3, {2});
        CentralVector z = g1.center.zero();
        z.c[0] = 1;
        CHECK(element_order(g1, central(g1, z)) == CyclicOrder::finite(9));
    }
    SUBCASE("matches table order for every |G| <= 81 instance") {
        for (const auto& g : small_instances()) {
            if (*g.group_size() > 81) continue;
            MulTable t = build_table(g);
            auto elems = all_elements(g);
            for (std::size_t i = 0; i < elems.size(); ++i) {
                CyclicOrder o = element_order(g, elems[i]);
                REQUIRE(o.is_finite());
                // Find the element's table index via its label-free position:
                // rebuild by multiplying out is overkill; just check order by
                // powering to the claimed value and halting early.
                CHECK(power(g, elems[i], o.n) == identity(g));
                for (Int d = 1; d < o.n; ++d)
                    if (o.n % d == 0) CHECK_FALSE(power(g, elems[i], d) == identity(g));
            }
        }
    }
}

TEST_CASE("is_central") {
    GroupPresentation g = canonical_presentation(2, 2, {1});
    CentralVector z = g.center.zero();
    z.c[0] = 1;
    CHECK(is_central(g, central(g, z)));
    CHECK_FALSE(is_central(g, gen_x(g)));
    CHECK(is_central(g, power(g, gen_x(g), 2)));  // x^p is central
    SUBCASE("equivalent to commuting with x and y") {
        std::mt19937_64 rng(7);
        GroupPresentation g8 = canonical_presentation(8, 3, {1, 1});
        for (int it = 0; it < 300; ++it) {
            Element a = random_element(g8, rng);
            bool com = commutator(g8, a, gen_x(g8)).is_zero() &&
                       commutator(g8, a, gen_y(g8)).is_zero();
            CHECK(com == is_central(g8, a));
        }
    }
    SUBCASE("coset order: g not central implies g^p central, G/Z of exponent p") {
        std::mt19937_64 rng(11);
        for (const auto& g2 : small_instances()) {
            for (int it = 0; it < 50; ++it) {
                Element a = random_element(g2, rng);
                if (!is_central(g2, a)) CHECK(is_central(g2, power(g2, a, g2.p)));
            }
        }
    }
}
