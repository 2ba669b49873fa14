#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "c2f/isotropy.hpp"
#include "c2f/quadform.hpp"

using namespace c2f;

TEST_CASE("composition and scaling") {
    auto F = Field::finite(2, 3);
    Elem one = Elem::one(F), g = Elem::generator(F);

    QuadraticForm H = hyperbolic_plane(F);
    CHECK(H.dim() == 2);
    CHECK(evaluate(H, {one, Elem::zero(F)}).is_zero());

    // c[a,b] = [ca, b/c]: values agree under (x, y) -> (x, cy) on a full grid
    Elem a = g, b = g * g, c = g + one;
    QuadraticForm q = qf_block(a, b);
    QuadraticForm cq = qf_scale(c, q);
    CHECK(cq.blocks[0].first == c * a);
    CHECK(cq.blocks[0].second == b / c);
    int grid = 0;
    for (std::uint64_t i = 0; i < 8 && grid < 100; ++i)
        for (std::uint64_t j = 0; j < 8 && grid < 100; ++j, ++grid) {
            Elem x = g.pow(i) + (i == 7 ? one : Elem::zero(F));
            Elem y = g.pow(j);
            CHECK(evaluate(cq, {x, c * y}) == c * evaluate(q, {x, y}));
        }

    // dim-5 singular composition
    QuadraticForm five = qf_sum(qf_sum(qf_quasilinear(F, {one}), qf_scale(g, qf_block(one, a))),
                                qf_scale(b, qf_block(one, g)));
    CHECK(five.dim() == 5);
    CHECK(!five.nonsingular());
    CHECK_THROWS_AS(qf_quasilinear(F, {Elem::zero(F)}), std::invalid_argument);
    CHECK_THROWS_AS(qf_scale(Elem::zero(F), q), std::invalid_argument);
}

TEST_CASE("tensor products") {
    auto F = Field::finite(2, 2);
    Elem one = Elem::one(F), g = Elem::generator(F);
    QuadraticForm q = qf_block(g, g + one);

    QuadraticForm t1 = tensor(bilinear_diag(F, {one}), q);
    CHECK(t1.dim() == 2);
    CHECK(t1.blocks[0].first == g);

    // <1,1> (x) [a,b] is hyperbolic: witt index 2
    QuadraticForm t2 = tensor(bilinear_diag(F, {one, one}), q);
    auto wd = witt_decompose(t2);
    CHECK(wd.witt_index == 2);

    QuadraticForm sing = qf_quasilinear(F, {one});
    CHECK_THROWS_AS(tensor(bilinear_diag(F, {one}), sing), std::invalid_argument);
}

TEST_CASE("pfister forms") {
    auto F = Field::finite(2, 2);
    Elem one = Elem::one(F), g = Elem::generator(F);

    QuadraticForm p0 = pfister_quad(F, PfisterSlots{{}, g});
    CHECK(p0.dim() == 2);
    CHECK(p0.blocks[0].first.is_one());
    CHECK(p0.blocks[0].second == g);

    QuadraticForm p1 = pfister_quad(F, PfisterSlots{{g}, g + one});
    CHECK(p1.dim() == 4);

    CHECK_THROWS_AS(pfister_quad(F, PfisterSlots{{Elem::zero(F)}, g}), std::invalid_argument);

    // isotropic Pfister forms are hyperbolic with trivial Arf
    Rng rng(13);
    auto F8 = Field::finite(2, 3);
    for (int i = 0; i < 50; ++i) {
        Elem s1 = random_elem(F8, rng, 0, true);
        Elem s2 = random_elem(F8, rng, 0);
        QuadraticForm pf = pfister_quad(F8, PfisterSlots{{s1}, s2});
        auto v = isotropy_decide(pf);
        if (v.kind == IsotropyVerdict::Kind::Isotropic) {
            auto wd = witt_decompose(pf);
            CHECK(wd.witt_index * 2 == pf.dim());
            CHECK(arf(pf).cls == ArfClass::Trivial);
        }
    }
}

TEST_CASE("evaluate and polar") {
    auto F2 = Field::finite(2);
    Elem one = Elem::one(F2), zero = Elem::zero(F2);
    QuadraticForm q = qf_block(one, one);
    CHECK(evaluate(q, {one, one}) == one);  // 1 + 1 + 1
    CHECK(polar(q, {one, zero}, {zero, one}) == one);
    CHECK(evaluate(hyperbolic_plane(F2), {one, zero}).is_zero());

    // polar vanishes identically on the quasilinear part
    auto F = Field::finite(2, 2);
    QuadraticForm s = qf_quasilinear(F, {Elem::one(F), Elem::generator(F)});
    CHECK(polar(s, {Elem::one(F), Elem::zero(F)}, {Elem::zero(F), Elem::one(F)}).is_zero());

    CHECK_THROWS_AS(evaluate(q, {one}), std::invalid_argument);

    // q(cv) = c^2 q(v)
    auto F8 = Field::finite(2, 3);
    Rng rng(17);
    QuadraticForm r = qf_sum(qf_block(Elem::generator(F8), Elem::one(F8)),
                             qf_quasilinear(F8, {Elem::generator(F8)}));
    for (int i = 0; i < 100; ++i) {
        Elem c = random_elem(F8, rng, 0);
        std::vector<Elem> v;
        for (int j = 0; j < r.dim(); ++j) v.push_back(random_elem(F8, rng, 0));
        std::vector<Elem> cv;
        for (const auto& x : v) cv.push_back(c * x);
        CHECK(evaluate(r, cv) == c * c * evaluate(r, v));
    }
}

TEST_CASE("arf invariant") {
    auto F2 = Field::finite(2);
    Elem one = Elem::one(F2);

    QuadraticForm HH = qf_sum(hyperbolic_plane(F2), hyperbolic_plane(F2));
    CHECK(arf(HH).cls == ArfClass::Trivial);

    // wp(GF(2)) = {0} by enumeration, so the class of 1 is nontrivial
    QuadraticForm q11 = qf_block(one, one);
    CHECK(arf(q11).cls == ArfClass::NonTrivial);

    // Witt-class invariance: adding H leaves the representative's class fixed
    CHECK(arf(qf_sum(q11, hyperbolic_plane(F2))).representative == arf(q11).representative);

    CHECK_THROWS_AS(arf(qf_quasilinear(F2, {one})), std::invalid_argument);

    // lambda_1[1,alpha] + lambda_2[1,alpha_1] + lambda_3[1,alpha_2] with
    // alpha = alpha_1 + alpha_2 has representative exactly zero
    auto F = Field::rational(F2, "t");
    Elem t = Elem::generator(F), o = Elem::one(F);
    Elem a1 = t, a2 = t * t + o, a = a1 + a2;
    QuadraticForm psi = qf_sum(qf_sum(qf_scale(t, qf_block(o, a)), qf_scale(o + t, qf_block(o, a1))),
                               qf_scale(t * t, qf_block(o, a2)));
    ArfResult ar = arf(psi);
    CHECK(ar.representative.is_zero());
    CHECK(ar.cls == ArfClass::Trivial);
}
