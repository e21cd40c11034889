#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qhpc/gl11.hpp"

using namespace qhpc;
using namespace qhpc::gl11;

TEST_CASE("coalgebra axioms hold at several (p, r, N)") {
    for (auto [p, r] : std::vector<std::pair<std::int64_t, std::int64_t>>{
             {2, 2}, {3, 3}, {2, 4}, {3, 2}, {5, 3}, {0, 2}}) {
        for (int lvl : {1, 2, 4}) {
            CoalgebraLevel c = build_coalgebra(p, r, lvl);
            Report rep = verify_coalgebra(c);
            CHECK_MESSAGE(rep.all_pass(), "p=", p, " r=", r, " lvl=", lvl, "\n", rep.render_text());
        }
    }
    CHECK_THROWS(build_coalgebra(4, 2, 2));
}

TEST_CASE("dual multiplication reproduces the closed-form table (p | r)") {
    for (auto [p, r] : std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 2}, {3, 3}, {5, 10}}) {
        auto sr = build_Sr(p, r, 5);
        CHECK(sr.p_divides_r);
        for (const auto& lvl : sr.tower.levels) {
            Report rep = check_sr_table(*lvl);
            CHECK_MESSAGE(rep.all_pass(), rep.render_text());
        }
    }
}

TEST_CASE("spot products from the table") {
    auto sr = build_Sr(2, 2, 5);
    const BasedAlgebra& a = *sr.tower.levels.back();
    auto bv = [&](const std::string& s) { return a.basis_vec(a.label_index(s)); };

    // unit is the sum of the X duals
    Vec u = zero_vec(a.f, a.dim());
    for (int i = 0; i < a.dim(); ++i)
        if (a.labels[i][0] == 'X') u[i] = Scalar::one(a.f);
    CHECK(a.unit == u);
    CHECK(a.mul(a.unit, bv("B2")) == bv("B2"));

    // B*_i X*_{i+1} = B*_i
    CHECK(a.mul(bv("B1"), bv("X2")) == bv("B1"));
    // B*_i C*_{i+1} = -D*_i for i >= 1
    CHECK(a.mul(bv("B1"), bv("C2")) == scale_vec(-Scalar::one(a.f), bv("D1")));
    // the index-0 anomaly
    CHECK(is_zero_vec(a.mul(bv("B0"), bv("C1"))));
    // C*_i B*_{i-1} = D*_i
    CHECK(a.mul(bv("C2"), bv("B1")) == bv("D2"));

    auto sr3 = build_Sr(3, 3, 4);
    const BasedAlgebra& a3 = *sr3.tower.levels.back();
    auto bv3 = [&](const std::string& s) { return a3.basis_vec(a3.label_index(s)); };
    CHECK(a3.mul(bv3("B1"), bv3("C2")) == scale_vec(-Scalar::one(a3.f), bv3("D1")));
}

TEST_CASE("quiver relations and degree-2 completeness") {
    for (auto [p, r] : std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 2}, {3, 3}}) {
        auto sr = build_Sr(p, r, 6);
        Report rep = verify_quiver(*sr.tower.levels.back());
        CHECK_MESSAGE(rep.all_pass(), rep.render_text());
    }
}

TEST_CASE("semisimple branch blocks") {
    // p=3, r=2: -2 = 1 mod 3 is a square; the matrix-unit map applies
    auto ss = build_Sr(3, 2, 4);
    CHECK_FALSE(ss.p_divides_r);
    for (int b = 0; b < 4; ++b) {
        Report rep = verify_M11_iso(*ss.tower.levels.back(), b);
        CHECK_MESSAGE(rep.all_pass(), rep.render_text());
        CHECK(rep.claims[0].id == "m11.map");
    }
    // p=5, r=3: -3 = 2 mod 5 is a nonresidue; the structural fallback applies
    auto ss2 = build_Sr(5, 3, 3);
    for (int b = 0; b < 3; ++b) {
        Report rep = verify_M11_iso(*ss2.tower.levels.back(), b);
        CHECK_MESSAGE(rep.all_pass(), rep.render_text());
        CHECK(rep.claims[0].id == "m11.fallback");
    }
}

TEST_CASE("reference Ringel dual tower") {
    AlgebraTower rr = build_Rr_reference(2, 2, 5);
    for (int n = 0; n < rr.height(); ++n) {
        const BasedAlgebra& lvl = *rr.levels[n];
        CHECK(lvl.dim() == 2 * (4 * (n + 1) - 3));
        Report rep = verify_algebra(lvl);
        CHECK_MESSAGE(rep.all_pass(), "level ", n, "\n", rep.render_text());
    }
    CHECK(verify_tower(rr).all_pass());
    // spot products of the closed-form table
    const BasedAlgebra& a = *rr.levels.back();
    auto bv = [&](const std::string& s) { return a.basis_vec(a.label_index(s)); };
    // b_{i} c_{i+1} = d_i within a component (parities determined by component)
    CHECK(a.mul(bv("b1^0"), bv("c2^1")) == bv("d1^1"));
    CHECK(a.mul(bv("c2^1"), bv("b1^0")) == bv("d2^0"));
    CHECK(is_zero_vec(a.mul(bv("b1^0"), bv("b2^1"))));
    CHECK(radical(a).span.dim() == a.dim() - static_cast<int>(a.idems.size()));
}

TEST_CASE("chevalley involution solves the anti-automorphism constraints") {
    auto sr = build_Sr(2, 2, 5);
    const BasedAlgebra& a = *sr.tower.levels.back();
    Mat phi = chevalley_involution(a);
    // involution
    CHECK(mat_mul(phi, phi) == Mat::identity(a.f, a.dim()));
    // anti-multiplicative on all basis pairs (ungraded reading)
    for (int k = 0; k < a.dim(); ++k)
        for (int l = 0; l < a.dim(); ++l) {
            Vec lhs = mat_apply(phi, a.mul(a.basis_vec(k), a.basis_vec(l)));
            Vec rhs = a.mul(mat_apply(phi, a.basis_vec(l)), mat_apply(phi, a.basis_vec(k)));
            CHECK(lhs == rhs);
        }
}
