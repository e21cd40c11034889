#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qhpc/gl11.hpp"
#include "qhpc/modrep.hpp"

using namespace qhpc;

namespace {

const Field F2{2};
const Field Q{0};

AlgebraPtr doubled_sr(std::int64_t p, std::int64_t r, int level) {
    auto sr = gl11::build_Sr(p, r, level);
    return std::make_shared<BasedAlgebra>(super_double(*sr.tower.levels.back()));
}

AlgebraPtr dual_numbers_f2() {
    BasedAlgebra a = BasedAlgebra::make(F2, {"1", "x"});
    a.add_term(0, 0, 0, Scalar::one(F2));
    a.add_term(0, 1, 1, Scalar::one(F2));
    a.add_term(1, 0, 1, Scalar::one(F2));
    a.unit = unit_vec(F2, 2, 0);
    a.idems.push_back({a.unit, "w"});
    return std::make_shared<BasedAlgebra>(std::move(a));
}

ModPtr module_from(AlgebraPtr a, Side side, std::vector<Mat> act) {
    return make_module(std::move(a), side, std::move(act));
}

} // namespace

TEST_CASE("regular modules and projectives over the doubled tower level") {
    AlgebraPtr d = doubled_sr(2, 2, 4);
    CHECK(verify_algebra(*d).all_pass());
    for (Side s : {Side::Left, Side::Right}) {
        ModPtr reg = regular_module(d, s);
        CHECK(verify_module(*reg).all_pass());
    }
    // right projective dimensions: interior 4, boundary 2
    for (int i = 0; i <= 4; ++i)
        for (int eps = 0; eps < 2; ++eps) {
            auto p = projective_indec(d, std::to_string(i) + "^" + std::to_string(eps), Side::Right);
            CHECK(verify_module(*p.mod).all_pass());
            int expected = (i == 0 || i == 4) ? 2 : 4;
            CHECK(p.mod->d == expected);
        }
    // left projectives have the same dimension pattern
    auto pl = projective_indec(d, "2^0", Side::Left);
    CHECK(pl.mod->d == 4);
}

TEST_CASE("radical and socle series shapes") {
    AlgebraPtr d = doubled_sr(2, 2, 5);
    // interior right projective: layers 1,2,1
    auto p = projective_indec(d, "2^0", Side::Right);
    auto chain = radical_series(*p.mod);
    REQUIRE(chain.size() == 4);
    CHECK(chain[0].dim() == 4);
    CHECK(chain[1].dim() == 3);
    CHECK(chain[2].dim() == 1);
    CHECK(chain[3].dim() == 0);
    // top weight projective: layers 1,1
    auto p0 = projective_indec(d, "0^0", Side::Right);
    auto chain0 = radical_series(*p0.mod);
    REQUIRE(chain0.size() == 3);
    CHECK(chain0[0].dim() == 2);
    CHECK(chain0[1].dim() == 1);
    CHECK(chain0[2].dim() == 0);
    // socle series of the diamond has the mirrored shape
    auto soc = socle_series(*p.mod);
    REQUIRE(soc.size() == 4);
    CHECK(soc[1].dim() == 1);
    CHECK(soc[2].dim() == 3);
    // semisimple module: radical series of length 1
    ModPtr l = simple_module(d, "1^1", Side::Left);
    CHECK(radical_series(*l).size() == 2);
}

TEST_CASE("simple modules act through the weight character") {
    AlgebraPtr d = doubled_sr(2, 2, 3);
    ModPtr l = simple_module(d, "1^0", Side::Left);
    CHECK(l->d == 1);
    for (size_t w = 0; w < d->idems.size(); ++w) {
        Mat e = l->act_vec(d->idems[w].v);
        bool is_this = d->idems[w].weight == "1^0";
        CHECK(e.at(0, 0) == Scalar(F2, is_this ? 1 : 0));
    }
    CHECK(multiplicity(*l, "1^0") == 1);
    CHECK(multiplicity(*l, "0^0") == 0);
}

TEST_CASE("composition multiplicities of projectives") {
    AlgebraPtr d = doubled_sr(2, 2, 5);
    auto p = projective_indec(d, "2^0", Side::Right);
    CHECK(multiplicity(*p.mod, "2^0") == 2);
    CHECK(multiplicity(*p.mod, "1^1") == 1);
    CHECK(multiplicity(*p.mod, "3^1") == 1);
    CHECK(multiplicity(*p.mod, "2^1") == 0);
}

TEST_CASE("hom spaces: projective covers detect multiplicities") {
    AlgebraPtr d = doubled_sr(2, 2, 4);
    // dim Hom(P(w), S) = dim S e_w = [S : L(w)] on assorted modules
    std::vector<ModPtr> samples;
    samples.push_back(regular_module(d, Side::Right));
    auto p = projective_indec(d, "1^0", Side::Right);
    samples.push_back(p.mod);
    auto rad = radical(*d).span;
    samples.push_back(sub_module(*samples[1], radical_submodule(*samples[1], rad)).mod);
    for (const auto& s : samples)
        for (size_t w = 0; w < d->idems.size(); ++w) {
            auto pw = projective_indec(d, d->idems[w].weight, Side::Right);
            int hom = static_cast<int>(hom_space(*pw.mod, *s).size());
            CHECK(hom == weight_space(*s, static_cast<int>(w)).dim());
            CHECK(hom == multiplicity(*s, d->idems[w].weight));
        }
    // Hom(L, L') = delta
    ModPtr l1 = simple_module(d, "1^0", Side::Left);
    ModPtr l2 = simple_module(d, "2^1", Side::Left);
    CHECK(hom_space(*l1, *l1).size() == 1);
    CHECK(hom_space(*l1, *l2).empty());
}

TEST_CASE("hom blockwise agrees with the naive solver") {
    AlgebraPtr d = doubled_sr(2, 2, 3);
    ModPtr reg = regular_module(d, Side::Left);
    auto p = projective_indec(d, "1^1", Side::Left);
    // strip idempotents so hom_space falls back to the naive full system
    BasedAlgebra stripped = *d;
    stripped.idems.clear();
    stripped.gens_hint.clear();
    AlgebraPtr s = std::make_shared<BasedAlgebra>(std::move(stripped));
    ModPtr reg2 = make_module(s, Side::Left, reg->act);
    ModPtr p2 = make_module(s, Side::Left, p.mod->act);
    CHECK(hom_space(*p.mod, *reg).size() == hom_space(*p2, *reg2).size());
    CHECK(hom_space(*reg, *p.mod).size() == hom_space(*reg2, *p2).size());

    // adversarial: submodules whose spans are not coordinate-aligned
    struct Rng {
        std::uint64_t st = 4242;
        std::uint64_t next() {
            st ^= st << 13;
            st ^= st >> 7;
            st ^= st << 17;
            return st;
        }
    } rng;
    for (int trial = 0; trial < 4; ++trial) {
        std::vector<Vec> seeds;
        for (int k = 0; k < 2; ++k) {
            Vec v = zero_vec(d->f, reg->d);
            for (int i = 0; i < reg->d; ++i) v[i] = Scalar(d->f, static_cast<std::int64_t>(rng.next() % 2));
            seeds.push_back(std::move(v));
        }
        Subspace sub = submodule_closure(*reg, seeds);
        if (sub.dim() == 0 || sub.dim() == reg->d) continue;
        ModPtr m1 = sub_module(*reg, sub).mod;
        ModPtr m2 = make_module(s, Side::Left, m1->act);
        CHECK(hom_space(*m1, *reg).size() == hom_space(*m2, *reg2).size());
        CHECK(hom_space(*m1, *m1).size() == hom_space(*m2, *m2).size());
    }
}

TEST_CASE("ext1 vanishes on projectives and sees the quiver arrows") {
    AlgebraPtr d = doubled_sr(2, 2, 4);
    auto p = projective_indec(d, "1^0", Side::Left);
    ModPtr l0 = simple_module(d, "0^0", Side::Left);
    ModPtr l11 = simple_module(d, "1^1", Side::Left);
    ModPtr l10 = simple_module(d, "1^0", Side::Left);
    CHECK(ext1(*p.mod, *l0).dim == 0);
    CHECK(ext1(*p.mod, *regular_module(d, Side::Left)).dim == 0);
    // one arrow between adjacent weights with flipped parity
    CHECK(ext1(*l0, *l11).dim == 1);
    CHECK(ext1(*l0, *l10).dim == 0);
    CHECK(ext1(*l0, *l0).dim == 0);
    // the middle term of the canonical representative is a nonsplit extension
    auto e = ext1(*l0, *l11);
    REQUIRE(e.middles.size() == 1);
    CHECK(e.middles[0]->d == 2);
    CHECK(verify_module(*e.middles[0]).all_pass());
    FittingResult fr = fitting_split(*e.middles[0]);
    CHECK(fr.indecomposable);
}

namespace {

// brute force: enumerate all compatible middle actions over F2 for modules of
// the dual-numbers algebra, and count cocycles/coboundaries by rank
int brute_ext_dim_f2(const ModRep& m, const ModRep& n) {
    const BasedAlgebra& a = *m.alg;
    REQUIRE(a.f.p == 2);
    const int nm = n.d * m.d;
    const int bits = a.dim() * nm;
    REQUIRE(bits <= 20);
    std::vector<Vec> cocycles;
    for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
        // c(b_k) as n.d x m.d blocks read from the mask
        std::vector<Mat> c;
        for (int k = 0; k < a.dim(); ++k) {
            Mat ck(a.f, n.d, m.d);
            for (int i = 0; i < n.d; ++i)
                for (int j = 0; j < m.d; ++j)
                    ck.at(i, j) = Scalar(a.f, (mask >> (k * nm + i * m.d + j)) & 1);
            c.push_back(std::move(ck));
        }
        auto big = [&](int k) {
            Mat e(a.f, n.d + m.d, n.d + m.d);
            for (int i = 0; i < n.d; ++i)
                for (int j = 0; j < n.d; ++j) e.at(i, j) = n.act[k].at(i, j);
            for (int i = 0; i < m.d; ++i)
                for (int j = 0; j < m.d; ++j) e.at(n.d + i, n.d + j) = m.act[k].at(i, j);
            for (int i = 0; i < n.d; ++i)
                for (int j = 0; j < m.d; ++j) e.at(i, n.d + j) = c[k].at(i, j);
            return e;
        };
        // module axioms for the triangular action
        Vec unit_coeff = a.unit;
        Mat eu(a.f, n.d + m.d, n.d + m.d);
        for (int k = 0; k < a.dim(); ++k)
            if (!unit_coeff[k].is_zero()) eu = mat_add(eu, mat_scale(unit_coeff[k], big(k)));
        if (!(eu == Mat::identity(a.f, n.d + m.d))) continue;
        bool ok = true;
        for (int k = 0; k < a.dim() && ok; ++k)
            for (int l = 0; l < a.dim(); ++l) {
                Mat lhs(a.f, n.d + m.d, n.d + m.d);
                Vec prod = a.mul(a.basis_vec(k), a.basis_vec(l));
                for (int t = 0; t < a.dim(); ++t)
                    if (!prod[t].is_zero()) lhs = mat_add(lhs, mat_scale(prod[t], big(t)));
                Mat rhs = m.side == Side::Left ? mat_mul(big(k), big(l)) : mat_mul(big(l), big(k));
                if (!(lhs == rhs)) {
                    ok = false;
                    break;
                }
            }
        if (!ok) continue;
        Vec flat = zero_vec(a.f, bits);
        for (int b = 0; b < bits; ++b) flat[b] = Scalar(a.f, (mask >> b) & 1);
        cocycles.push_back(std::move(flat));
    }
    Subspace z = Subspace::span(a.f, bits, cocycles);
    // coboundaries: c(b) = rho_N(b) h - h rho_M(b), h arbitrary
    std::vector<Vec> cb;
    for (int i = 0; i < n.d; ++i)
        for (int j = 0; j < m.d; ++j) {
            Mat h(a.f, n.d, m.d);
            h.at(i, j) = Scalar::one(a.f);
            Vec flat = zero_vec(a.f, bits);
            for (int k = 0; k < a.dim(); ++k) {
                Mat ck = m.side == Side::Left
                             ? mat_sub(mat_mul(n.act[k], h), mat_mul(h, m.act[k]))
                             : mat_sub(mat_mul(h, m.act[k]), mat_mul(n.act[k], h));
                for (int r = 0; r < n.d; ++r)
                    for (int cc = 0; cc < m.d; ++cc) flat[k * nm + r * m.d + cc] = ck.at(r, cc);
            }
            cb.push_back(std::move(flat));
        }
    Subspace b = Subspace::span(a.f, bits, cb);
    return z.dim() - b.dim();
}

} // namespace

TEST_CASE("ext1 agrees with brute-force enumeration over F2") {
    AlgebraPtr a = dual_numbers_f2();
    auto act_of = [&](std::vector<std::vector<std::int64_t>> x_action) {
        int dd = static_cast<int>(x_action.size());
        Mat one = Mat::identity(F2, dd);
        Mat x(F2, dd, dd);
        for (int i = 0; i < dd; ++i)
            for (int j = 0; j < dd; ++j) x.at(i, j) = Scalar(F2, x_action[i][j]);
        return std::vector<Mat>{one, x};
    };
    ModPtr triv1 = module_from(a, Side::Left, act_of({{0}}));
    ModPtr reg = regular_module(a, Side::Left);
    ModPtr triv2 = module_from(a, Side::Left, act_of({{0, 0}, {0, 0}}));
    ModPtr jordan = module_from(a, Side::Left, act_of({{0, 0}, {1, 0}}));
    std::vector<std::pair<ModPtr, ModPtr>> pairs = {
        {triv1, triv1}, {triv1, reg}, {reg, triv1}, {reg, reg},
        {jordan, triv1}, {triv1, jordan}, {triv2, triv1}, {jordan, jordan}};
    for (auto& [m, n] : pairs) {
        REQUIRE(verify_module(*m).all_pass());
        int expected = brute_ext_dim_f2(*m, *n);
        CHECK_MESSAGE(ext1(*m, *n).dim == expected, "brute=", expected);
    }
    // sanity anchors: Ext^1(K, K) = K over the dual numbers; projectives split off
    CHECK(ext1(*triv1, *triv1).dim == 1);
    CHECK(ext1(*reg, *triv1).dim == 0);
}

TEST_CASE("duals") {
    AlgebraPtr d = doubled_sr(2, 2, 4);
    auto sr_undoubled = gl11::build_Sr(2, 2, 4);
    Mat phi0 = gl11::chevalley_involution(*sr_undoubled.tower.levels.back());
    Mat phi = gl11::double_anti_automorphism(*sr_undoubled.tower.levels.back(), phi0);

    ModPtr l = simple_module(d, "1^0", Side::Left);
    ModPtr lt = dualize(*l, phi);
    CHECK(verify_module(*lt).all_pass());
    CHECK(find_isomorphism(*l, *lt).has_value());

    auto p = projective_indec(d, "1^0", Side::Left);
    ModPtr pt = dualize(*p.mod, phi);
    CHECK(pt->d == p.mod->d);
    CHECK(verify_module(*pt).all_pass());
    // involutive up to isomorphism (phi is an involution)
    CHECK(find_isomorphism(*p.mod, *dualize(*pt, phi)).has_value());

    // plain side-flip dual: right projective dualizes to a left module
    auto pr = projective_indec(d, "1^0", Side::Right);
    ModPtr inj = side_dual(*pr.mod);
    CHECK(inj->side == Side::Left);
    CHECK(verify_module(*inj).all_pass());
}

TEST_CASE("fitting splitting") {
    AlgebraPtr d = doubled_sr(2, 2, 4);
    ModPtr l0 = simple_module(d, "0^0", Side::Left);
    ModPtr l1 = simple_module(d, "1^1", Side::Left);
    FittingResult f1 = fitting_split(*l0);
    CHECK(f1.indecomposable);
    CHECK(f1.end_dim == 1);

    auto two_same = direct_sum(*l0, *l0);
    FittingResult f2 = fitting_split(*two_same.mod); // End is a 2x2 matrix algebra over F2
    CHECK_FALSE(f2.indecomposable);
    CHECK(f2.part1.dim() == 1);
    CHECK(f2.part2.dim() == 1);

    auto two_diff = direct_sum(*l0, *l1);
    FittingResult f3 = fitting_split(*two_diff.mod);
    CHECK_FALSE(f3.indecomposable);

    auto p = projective_indec(d, "1^0", Side::Left);
    FittingResult f4 = fitting_split(*p.mod);
    CHECK(f4.indecomposable);
    CHECK(indecomposable_summands(*p.mod).size() == 1);

    auto sum = direct_sum(*p.mod, *two_diff.mod);
    CHECK(indecomposable_summands(*sum.mod).size() == 3);
}

TEST_CASE("endomorphism algebras") {
    AlgebraPtr d = doubled_sr(2, 2, 4);
    ModPtr l = simple_module(d, "1^0", Side::Left);
    EndAlgebra e = endomorphism_algebra(*l);
    CHECK(e.algebra.dim() == 1);
    CHECK(verify_algebra(e.algebra).all_pass());
    auto p = projective_indec(d, "1^0", Side::Left);
    EndAlgebra ep = endomorphism_algebra(*p.mod);
    CHECK(verify_algebra(ep.algebra).all_pass());
    CHECK(ep.algebra.dim() == 2); // identity and the socle-to-top endomorphism
}

TEST_CASE("projective covers") {
    AlgebraPtr d = doubled_sr(2, 2, 4);
    ModPtr l = simple_module(d, "1^0", Side::Left);
    CoverResult cov = projective_cover(*l);
    CHECK(cov.tops == std::vector<std::string>{"1^0"});
    CHECK(cov.p0->d == 4);
    CHECK(cov.syzygy.dim() == 3);
    // cover of a projective is the projective itself
    auto p = projective_indec(d, "2^1", Side::Left);
    CoverResult cp = projective_cover(*p.mod);
    CHECK(cp.syzygy.dim() == 0);
    CHECK(cp.p0->d == p.mod->d);
}
