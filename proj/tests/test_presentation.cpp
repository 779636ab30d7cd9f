#include <doctest.h>

#include "cpxcp/presentation.hpp"

#include <random>

using namespace cpxcp;

namespace {

GroupPresentation g1_2_1() {
    return parse("group { prime 2; center t1:2; comm t1; xp 1; yp 1 }");
}

// Random valid presentation over a random center; used for round trips.
GroupPresentation random_presentation(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pd(0, 2), nf(1, 4), kind(0, 3), mexp(1, 3);
    Int p = std::vector<Int>{2, 3, 5}[static_cast<std::size_t>(pd(rng))];
    std::vector<Factor> fs;
    int k = nf(rng);
    int p_slot = std::uniform_int_distribution<int>(0, k - 1)(rng);
    for (int i = 0; i < k; ++i) {
        std::string name = "f" + std::to_string(i);
        if (i == p_slot) {
            fs.push_back({name, CyclicOrder::finite(pow_int(p, mexp(rng)))});
            continue;
        }
        switch (kind(rng)) {
            case 0: fs.push_back({name, CyclicOrder::infinite()}); break;
            case 1: fs.push_back({name, CyclicOrder::finite(pow_int(p, mexp(rng)))}); break;
            default:
                fs.push_back({name, CyclicOrder::finite(
                                        std::uniform_int_distribution<int>(2, 20)(rng))});
        }
    }
    FgAbelian z(fs);
    // s: order exactly p, supported on the guaranteed p-power slot.
    CentralVector s = z.zero();
    {
        Int n = z.at(static_cast<std::size_t>(p_slot)).order.n;
        Int cof;
        int e = p_valuation(n, p, cof);
        std::uniform_int_distribution<long long> unit(1, to_i64(p) - 1);
        s.c[static_cast<std::size_t>(p_slot)] = Int(unit(rng)) * pow_int(p, e - 1) * cof;
    }
    auto rand_vec = [&] {
        CentralVector v = z.zero();
        for (std::size_t i = 0; i < z.rank(); ++i) {
            if (z.at(i).order.is_finite())
                v.c[i] = std::uniform_int_distribution<long long>(
                    0, to_i64(z.at(i).order.n) - 1)(rng);
            else
                v.c[i] = std::uniform_int_distribution<long long>(-6, 6)(rng);
        }
        return v;
    };
    return make_presentation(p, z, s, rand_vec(), rand_vec());
}

}  // namespace

TEST_CASE("parse: smallest instance") {
    GroupPresentation g = g1_2_1();
    CHECK(g.p == 2);
    CHECK(g.center.rank() == 1);
    CHECK(g.center.at(0).name == "t1");
    CHECK(g.center.at(0).order == CyclicOrder::finite(2));
    CHECK(g.s.c[0] == 1);
    CHECK(g.xp.is_zero());
    CHECK(g.yp.is_zero());
    CHECK(validate(g).empty());
}

TEST_CASE("parse: family-6 shaped instance") {
    GroupPresentation g =
        parse("group { prime 3; center t1:9, u1:inf; comm t1^3; xp t1; yp u1 }");
    CHECK(g.p == 3);
    CHECK(g.center.at(1).order == CyclicOrder::infinite());
    CHECK(g.s.c[0] == 3);
    CHECK(g.xp.c[0] == 1);
    CHECK(g.yp.c[1] == 1);
    CHECK(validate(g).empty());
}

TEST_CASE("parse: non-prime p is rejected") {
    CHECK_THROWS_AS(parse("group { prime 4; center t1:4; comm t1^2; xp 1; yp 1 }"),
                    ValidationError);
    try {
        parse("group { prime 4; center t1:4; comm t1^2; xp 1; yp 1 }");
    } catch (const ValidationError& e) {
        REQUIRE(!e.violations.empty());
        CHECK(e.violations.front().kind == ViolationKind::NonPrimeP);
    }
}

TEST_CASE("parse: syntax errors carry a position") {
    try {
        parse("group { prime 2; center t1:2; comm t1; xp 1 }");  // missing yp
        FAIL("expected an error");
    } catch (const ParseError&) {
    }
    try {
        parse("group { prime 2; center t1 2; comm t1; xp 1; yp 1 }");
        FAIL("expected an error");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.col > 1);
    }
}

TEST_CASE("parse: comments, whitespace, exponent reduction") {
    GroupPresentation g = parse(
        "group {\n"
        "  prime 3; # the prime\n"
        "  center a:9, b:inf;\n"
        "  comm a^12;   # reduces to a^3\n"
        "  xp a^10 b^-4 a^2;\n"
        "  yp 1\n"
        "}\n");
    CHECK(g.s.c[0] == 3);
    CHECK(g.xp.c[0] == 3);  // 10 + 2 mod 9
    CHECK(g.xp.c[1] == -4);
    CHECK(validate(g).empty());
}

TEST_CASE("validate: violations are data") {
    GroupPresentation g = g1_2_1();
    SUBCASE("commutator order != p") {
        FgAbelian z({{"t1", CyclicOrder::finite(8)}});
        CentralVector s = z.zero();
        s.c[0] = 2;  // order 4
        GroupPresentation bad = make_presentation(2, z, s, z.zero(), z.zero());
        auto v = validate(bad);
        REQUIRE(v.size() == 1);
        CHECK(v[0].kind == ViolationKind::CommutatorOrderNotP);
    }
    SUBCASE("trivial commutator") {
        GroupPresentation bad = make_presentation(2, g.center, g.center.zero(), g.xp, g.yp);
        auto v = validate(bad);
        REQUIRE(v.size() == 1);
        CHECK(v[0].kind == ViolationKind::TrivialCommutator);
    }
    SUBCASE("unknown factor name at parse time") {
        CHECK_THROWS_AS(parse("group { prime 2; center t1:2; comm t1; xp zz; yp 1 }"),
                        ValidationError);
    }
    SUBCASE("unreduced exponent flagged on hand-built data") {
        GroupPresentation bad = g;
        bad.xp.c[0] = 7;  // out of [0, 2)
        auto v = validate(bad);
        REQUIRE(v.size() == 1);
        CHECK(v[0].kind == ViolationKind::UnreducedExponent);
    }
}

TEST_CASE("emit: DSL round trip on fixtures") {
    for (const char* text : {
             "group { prime 2; center t1:2; comm t1; xp 1; yp 1 }",
             "group { prime 3; center t1:9, u1:inf; comm t1^3; xp t1; yp u1 }",
             "group { prime 2; center a:4, b:2, c:inf, d:6, e:8; comm a^2; xp b c^2; yp d^3 e }",
         }) {
        GroupPresentation g = parse(text);
        CHECK(parse(emit(g, EmitFormat::Dsl)) == g);
    }
}

TEST_CASE("emit: declaration order preserved") {
    GroupPresentation g = parse(
        "group { prime 2; center z9:2, a1:4, m7:2, b2:8, q0:inf; comm z9; xp a1; yp b2 }");
    std::string dsl = emit(g, EmitFormat::Dsl);
    CHECK(dsl.find("z9:2, a1:4, m7:2, b2:8, q0:inf") != std::string::npos);
    std::string json = emit(g, EmitFormat::Json);
    CHECK(json.find("\"p\":2") != std::string::npos);
    CHECK(json.find("z9") < json.find("a1"));
}

TEST_CASE("emit/parse: 500 random valid presentations round trip") {
    std::mt19937_64 rng(20260810);
    for (int it = 0; it < 500; ++it) {
        GroupPresentation g = random_presentation(rng);
        REQUIRE(validate(g).empty());
        GroupPresentation back = parse(emit(g, EmitFormat::Dsl));
        CHECK(back == g);
    }
}
