#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "c2f/parser.hpp"
#include "c2f/symbols.hpp"

using namespace c2f;

TEST_CASE("single rule applications") {
    auto F = parse_field("GF(2)(t)");
    Elem t = parse_elem("t", F), one = Elem::one(F);

    // rule (a): b dlog(a) ^ dlog(c) = (b+a) dlog(a) ^ dlog(c)
    SymbolExpr e{make_symbol(t, {t + one, t * t + one})};
    RewriteStep a_step;
    a_step.rule = RuleTag::CoeffShift;
    a_step.slot = 0;
    SymbolExpr r = apply_step(e, a_step);
    CHECK(r[0].coeff == t + (t + one));
    CHECK(r[0].slots[0] == t + one);

    // CoeffWpKill with witness lambda = t kills coefficient t^2 + t
    SymbolExpr k{make_symbol(t * t + t, {t + one})};
    RewriteStep kill;
    kill.rule = RuleTag::CoeffWpKill;
    kill.w.lambda = t;
    CHECK(apply_step(k, kill).empty());

    // SlotRepeatKill on equal slots
    SymbolExpr rep{make_symbol(t, {t + one, t + one})};
    RewriteStep rk;
    rk.rule = RuleTag::SlotRepeatKill;
    rk.slot = 0;
    rk.slot2 = 1;
    CHECK(apply_step(rep, rk).empty());

    // SlotNormScale: norm witness over F_coeff
    ASExt u = asext_make(t, {one, one});  // norm = 1 + 1 + t = t
    RewriteStep b_step;
    b_step.rule = RuleTag::SlotNormScale;
    b_step.slot = 0;
    b_step.w.u = u;
    SymbolExpr bs = apply_step(e, b_step);
    CHECK(bs[0].slots[0] == (t + one) * (one + one + t * one));

    // rejected: witness over the wrong extension
    RewriteStep bad = b_step;
    bad.w.u = asext_make(t + one, {one, one});
    CHECK_THROWS_WITH_AS(apply_step(e, bad),
                         "norm witness must live in the Artin-Schreier extension of the coefficient",
                         std::invalid_argument);

    // SlotPthPowerShift keeps the symbol equal in Omega
    RewriteStep sh;
    sh.rule = RuleTag::SlotPthPowerShift;
    sh.slot = 0;
    sh.w.c = t;
    SymbolExpr shifted = apply_step(e, sh);
    CHECK(shifted[0].slots[0] == (t + one) + t * t);
    CHECK(shifted[0].coeff == t * ((t + one) + t * t) / (t + one));

    // SlotMultSplit needs a true factorization
    SymbolExpr m{make_symbol(t, {t * t + t})};
    RewriteStep ms;
    ms.rule = RuleTag::SlotMultSplit;
    ms.slot = 0;
    ms.w.f1 = t;
    ms.w.f2 = t + one;
    SymbolExpr parts = apply_step(m, ms);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].slots[0] == t);
    CHECK(parts[1].slots[0] == t + one);

    // merge two symbols with identical slots
    RewriteStep mg;
    mg.rule = RuleTag::CoeffAdditiveSplit;
    mg.merge = true;
    mg.sym = 0;
    mg.sym2 = 1;
    SymbolExpr two{make_symbol(t, {t + one}), make_symbol(one, {t + one})};
    SymbolExpr merged = apply_step(two, mg);
    REQUIRE(merged.size() == 1);
    CHECK(merged[0].coeff == t + one);
}

TEST_CASE("check_derivation basics") {
    auto F = parse_field("GF(2)(t)");
    Elem t = parse_elem("t", F);

    Derivation empty;
    empty.start = {make_symbol(t, {t})};
    empty.ends_zero = false;
    CHECK(check_derivation(empty).ok);

    // tampered norm witness is rejected and names the side condition
    Derivation d;
    d.start = {make_symbol(t, {t + Elem::one(F)})};
    RewriteStep st;
    st.rule = RuleTag::SlotNormScale;
    st.slot = 0;
    st.w.u = asext_make(t, {Elem::one(F), Elem::one(F)});
    d.steps.push_back(st);
    d.intermediates.push_back(apply_step(d.start, st));
    d.ends_zero = false;
    CHECK(check_derivation(d).ok);
    d.steps[0].w.u = asext_make(t, {t, t});  // norm changes: recorded intermediate now disagrees
    CheckReport rep = check_derivation(d);
    CHECK(!rep.ok);
    CHECK(rep.failed_step == 0);
}

namespace {
void run_h4_case(const FieldPtr& F, int p, std::uint64_t seed, bool force_x_zero) {
    Rng rng(seed);
    PlantedAlbert pa = plant_albert_zero(F, p, rng, force_x_zero);
    Derivation d = reduce_h4(pa.alpha, pa.beta, pa.gamma, pa.delta, pa.witness);
    CHECK(d.ends_zero);
    CHECK(d.steps.size() <= 12);
    CheckReport rep = check_derivation(d);
    INFO(rep.reason);
    CHECK(rep.ok);
}
}  // namespace

TEST_CASE("reduce_h4") {
    auto T = parse_field("GF(2)((a))((b))");
    auto F3t = parse_field("GF(3)(t)");

    // alpha in wp(F): one-step kill
    Elem t3 = parse_elem("t", F3t);
    Elem alpha_triv = t3.pow(3) - t3;
    AlbertWitness dummy{asext_zero(alpha_triv), asext_zero(alpha_triv), asext_zero(alpha_triv)};
    // the witness is unused on the trivial branch; supply harmless zeros over
    // matching extensions via the split
    SplitWitness sp = lemma_new_split(alpha_triv, Elem::one(F3t));
    dummy = AlbertWitness{asext_zero(alpha_triv), asext_zero(sp.alpha1), asext_zero(sp.alpha2)};
    Derivation triv = reduce_h4(alpha_triv, Elem::one(F3t), t3, t3, dummy);
    CHECK(triv.ends_zero);
    CHECK(triv.steps.size() == 1);
    CHECK(check_derivation(triv).ok);

    // planted instances, both branches, both characteristics
    run_h4_case(T, 2, 100, false);
    run_h4_case(T, 2, 101, true);
    run_h4_case(F3t, 3, 102, false);
    run_h4_case(F3t, 3, 103, true);
}

TEST_CASE("reduce_h3_pure") {
    auto F2t = parse_field("GF(2)(t)");
    auto F3t = parse_field("GF(3)(t)");

    for (std::uint64_t seed : {200, 201, 202}) {
        Rng rng(seed);
        PlantedPure pp = plant_pure_zero(F2t, 2, rng);
        Derivation d = reduce_h3_pure(pp.alpha, pp.gamma, pp.delta, pp.witness);
        CHECK(d.ends_zero);
        CheckReport rep = check_derivation(d);
        INFO(rep.reason);
        CHECK(rep.ok);

        Rng rng3(seed + 50);
        PlantedPure p3 = plant_pure_zero(F3t, 3, rng3);
        Derivation d3 = reduce_h3_pure(p3.alpha, p3.gamma, p3.delta, p3.witness);
        CHECK(d3.ends_zero);
        CHECK(check_derivation(d3).ok);
    }

    // y != 0, z = 0 case: r = N(y), s = 1
    Elem t = parse_elem("t", F2t), one = Elem::one(F2t);
    Elem alpha = t;
    ASExt y = asext_make(alpha, {t, one});
    Elem ny = as_norm(y);
    // choose x with x^2 = gamma N(y): gamma = x^2 / N(y)
    Elem x = t * t + one;
    Elem gamma = x * x / ny;
    PureWitness w{x, y, asext_zero(alpha)};
    Derivation d = reduce_h3_pure(alpha, gamma, one, w);
    CHECK(d.ends_zero);
    CHECK(check_derivation(d).ok);

    // alpha in wp: immediate kill
    PureWitness wz{one, asext_scalar(t * t + t, one), asext_zero(t * t + t)};
    Derivation dk = reduce_h3_pure(t * t + t, one, one, wz);
    CHECK(dk.steps.size() == 1);
    CHECK(check_derivation(dk).ok);
}

TEST_CASE("kato correspondence") {
    auto F = parse_field("GF(2)((t))");
    Elem t = parse_elem("t", F), one = Elem::one(F);

    DifferentialSymbol s = make_symbol(one, {t});
    PfisterSlots ps = kato_pfister(s);
    CHECK(ps.bilinear.size() == 1);
    CHECK(ps.bilinear[0] == t);
    CHECK(ps.quad == one);

    // coefficient in wp -> hyperbolic Pfister form
    DifferentialSymbol triv = make_symbol(t * t + t, {t + one});
    auto idx = witt_index_of(pfister_quad(F, kato_pfister(triv)));
    REQUIRE(idx.has_value());
    CHECK(*idx == 2);

    // rule-(a) pairs: <<a,b]] + <<a,b+a]] has witt index >= 3
    for (auto FF : {Field::finite(2, 3), parse_field("GF(2)((a))((b))")}) {
        Rng rng(53);
        for (int i = 0; i < 25; ++i) {
            Elem a = random_elem(FF, rng, 1, true);
            Elem b = random_elem(FF, rng, 1);
            if ((b + a).is_zero()) continue;
            QuadraticForm q1 = pfister_quad(FF, PfisterSlots{{a}, b});
            QuadraticForm q2 = pfister_quad(FF, PfisterSlots{{a}, b + a});
            auto wi = witt_index_of(qf_sum(q1, q2));
            REQUIRE(wi.has_value());
            CHECK(*wi >= 3);
        }
    }
}

TEST_CASE("brauer symbols") {
    auto F = parse_field("GF(2)(t)");
    Elem t = parse_elem("t", F), one = Elem::one(F);
    CyclicAlgebraSymbol alg = cyclic_symbol(2, t, t + one);
    DifferentialSymbol s = brauer_symbol(alg);
    CHECK(s.coeff == t);
    CHECK(s.slots.size() == 1);
    CHECK(s.slots[0] == t + one);

    // split algebra: symbol killed by CoeffWpKill
    DifferentialSymbol split = brauer_symbol(cyclic_symbol(2, t * t + t, t + one));
    RewriteStep kill;
    kill.rule = RuleTag::CoeffWpKill;
    kill.w.lambda = t;
    CHECK(apply_step({split}, kill).empty());

    // norm values beta = N_{F_b}(u) give hyperbolic <<beta, b]]
    auto F8 = Field::finite(2, 3);
    Rng rng(59);
    int checked = 0;
    for (int i = 0; i < 100; ++i) {
        Elem b = random_elem(F8, rng, 0);
        if (wp_solve(b).kind == WpKind::ExactWitness) continue;  // keep F_b a field
        ASExt u = random_asext(b, rng, 0, true);
        Elem beta = as_norm(u);
        if (beta.is_zero()) continue;
        auto wi = witt_index_of(pfister_quad(F8, PfisterSlots{{beta}, b}));
        REQUIRE(wi.has_value());
        CHECK(*wi == 2);
        ++checked;
    }
    CHECK(checked > 30);
}

TEST_CASE("serialization round trip") {
    auto T = parse_field("GF(2)((a))((b))");
    Rng rng(61);
    PlantedAlbert pa = plant_albert_zero(T, 2, rng);
    Derivation d = reduce_h4(pa.alpha, pa.beta, pa.gamma, pa.delta, pa.witness);
    std::string text = serialize(d);
    Derivation back = parse_derivation(text, T);
    CHECK(serialize(back) == text);
    CHECK(check_derivation(back).ok);
    CHECK(back.ends_zero == d.ends_zero);
}
