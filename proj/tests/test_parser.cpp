#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "c2f/parser.hpp"

using namespace c2f;

TEST_CASE("field specs") {
    CHECK(parse_field("GF(2)")->order() == 2);
    auto F4 = parse_field("GF(2^2)");
    CHECK(F4->kind == FieldKind::Finite);
    CHECK(F4->k == 2);
    auto T = parse_field("GF(2)((a))((b))");
    CHECK(T->spec() == "GF(2)((a))((b))");
    CHECK(T->kind == FieldKind::LaurentLocal);
    auto R = parse_field("GF(3)(t)");
    CHECK(R->kind == FieldKind::RationalFunc);

    CHECK_THROWS_AS(parse_field("GF(4)"), std::invalid_argument);  // non-prime
    CHECK_THROWS_AS(parse_field("GF(2)((a))((a))"), std::invalid_argument);
    CHECK_THROWS_AS(parse_field("XY(2)"), ParseError);
}

TEST_CASE("element literals and round trips") {
    auto T = parse_field("GF(2)((a))((b))");
    Elem e = parse_elem("(b^3+b)/(1+b)+a", T);
    CHECK(!e.is_zero());

    auto F4t = parse_field("GF(2^2)(t)");
    Elem g = parse_elem("g", F4t);
    CHECK(g * g == g + Elem::one(F4t));

    CHECK_THROWS_AS(parse_elem("x+1", T), ParseError);  // unknown variable

    // parse . print = identity, fuzzed
    for (auto F : {T, F4t, parse_field("GF(3)(s)"), FieldPtr(Field::finite(5, 2))}) {
        Rng rng(67);
        for (int i = 0; i < 250; ++i) {
            Elem x = random_elem(F, rng, 2);
            Elem back = parse_elem(x.str(), F);
            CHECK(back == x);
        }
    }
}

TEST_CASE("form literals") {
    auto T = parse_field("GF(2)((a))((b))");
    QuadraticForm pf = parse_form("pf<<a,b;1]]", T);
    CHECK(pf.dim() == 8);

    QuadraticForm q = parse_form("[1,a] | a*[1,b] | <1,a>", T);
    CHECK(q.dim() == 6);
    CHECK(q.blocks.size() == 2);
    CHECK(q.quasilinear.size() == 2);
    // scaling normalization: a*[1,b] = [a, b/a]
    CHECK(q.blocks[1].first == parse_elem("a", T));
    CHECK(q.blocks[1].second == parse_elem("b/a", T));

    // syntax error carries a position
    try {
        parse_form("[1,", parse_field("GF(2)"));
        CHECK(false);
    } catch (const ParseError& pe) {
        CHECK(pe.col >= 3);
        CHECK(!pe.expected.empty());
    }
}

TEST_CASE("command lines") {
    Command c = parse_command("witt \"pf<<a,b;1]]\" @ \"GF(2)((a))((b))\"");
    CHECK(c.kind == Command::Kind::Witt);
    REQUIRE(c.form.has_value());
    CHECK(c.form->dim() == 8);
    CHECK(c.field->spec() == "GF(2)((a))((b))");

    Command u = parse_command("u @ \"GF(2)((t))\" --seed 7");
    CHECK(u.kind == Command::Kind::UInvariant);
    CHECK(u.seed == 7);

    Command alb = parse_command("albert 2 \"1\" \"1\" \"a\" \"b\" --pure @ \"GF(2)((a))((b))\"");
    CHECK(alb.kind == Command::Kind::Albert);
    CHECK(alb.pure);
    CHECK(alb.elems.size() == 4);

    CHECK_THROWS_AS(parse_command("witt \"[1,1]\""), ParseError);  // no field anywhere
    CHECK_THROWS_AS(parse_command("frobnicate @ \"GF(2)\""), ParseError);
}

TEST_CASE("asext literals") {
    auto F = parse_field("GF(3)(t)");
    ASExt u = parse_asext("(t|1|2)@t", F);
    CHECK(u.c.size() == 3);
    CHECK(u.a == parse_elem("t", F));
    CHECK(u.c[2] == parse_elem("2", F));
}
