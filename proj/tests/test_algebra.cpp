#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qhpc/algebra.hpp"
#include "qhpc/gl11.hpp"

using namespace qhpc;

namespace {

const Field Q{0};
const Field F2{2};
const Field F3{3};

// K[x]/x^2 with basis {1, x}
BasedAlgebra dual_numbers(Field f) {
    BasedAlgebra a = BasedAlgebra::make(f, {"1", "x"});
    a.add_term(0, 0, 0, Scalar::one(f));
    a.add_term(0, 1, 1, Scalar::one(f));
    a.add_term(1, 0, 1, Scalar::one(f));
    a.unit = unit_vec(f, 2, 0);
    a.idems.push_back({a.unit, "w"});
    return a;
}

// 2x2 upper triangular matrices: basis e11, e22, e12
BasedAlgebra upper_triangular(Field f) {
    BasedAlgebra a = BasedAlgebra::make(f, {"e11", "e22", "e12"});
    auto one = Scalar::one(f);
    a.add_term(0, 0, 0, one);
    a.add_term(1, 1, 1, one);
    a.add_term(0, 2, 2, one); // e11 e12 = e12
    a.add_term(2, 1, 2, one); // e12 e22 = e12
    a.unit = zero_vec(f, 3);
    a.unit[0] = one;
    a.unit[1] = one;
    a.idems.push_back({unit_vec(f, 3, 0), "a"});
    a.idems.push_back({unit_vec(f, 3, 1), "b"});
    return a;
}

// group algebra of C2 over F2: basis {1, g}
BasedAlgebra group_c2_f2() {
    BasedAlgebra a = BasedAlgebra::make(F2, {"1", "g"});
    auto one = Scalar::one(F2);
    a.add_term(0, 0, 0, one);
    a.add_term(0, 1, 1, one);
    a.add_term(1, 0, 1, one);
    a.add_term(1, 1, 0, one);
    a.unit = unit_vec(F2, 2, 0);
    a.idems.push_back({a.unit, "w"});
    return a;
}

} // namespace

TEST_CASE("verify_algebra on small algebras and the generated towers") {
    CHECK(verify_algebra(dual_numbers(Q)).all_pass());
    CHECK(verify_algebra(upper_triangular(F3)).all_pass());
    CHECK(verify_algebra(group_c2_f2()).all_pass());

    auto sr = gl11::build_Sr(2, 2, 4);
    for (const auto& lvl : sr.tower.levels) CHECK(verify_algebra(*lvl).all_pass());

    // perturb one structure constant: associativity must fail with a witness
    BasedAlgebra bad = *sr.tower.levels.back();
    bad.table[2][3].push_back(SparseTerm{0, Scalar::one(F2)});
    Report rep = verify_algebra(bad);
    CHECK_FALSE(rep.all_pass());
    bool found = false;
    for (const auto& c : rep.claims)
        if (c.id == "assoc" && !c.pass && !c.witness.empty()) found = true;
    CHECK(found);

    // one-dimensional algebra: everything passes
    BasedAlgebra k = BasedAlgebra::make(Q, {"1"});
    k.add_term(0, 0, 0, Scalar::one(Q));
    k.unit = unit_vec(Q, 1, 0);
    k.idems.push_back({k.unit, "w"});
    CHECK(verify_algebra(k).all_pass());
    CHECK(radical(k).span.dim() == 0);
}

TEST_CASE("radical: hints agree with the general computation") {
    auto sr = gl11::build_Sr(2, 2, 4);
    const BasedAlgebra& a = *sr.tower.levels.back();
    IdealSpan from_hint = radical(a);
    int expected = 0;
    for (const auto& lab : a.labels)
        if (lab[0] != 'X') ++expected;
    CHECK(from_hint.span.dim() == expected);

    BasedAlgebra nohint = a;
    nohint.has_radical_hint = false;
    nohint.radical_hint.clear();
    IdealSpan computed = radical(nohint);
    CHECK(computed.span == from_hint.span);

    auto sr3 = gl11::build_Sr(3, 3, 3);
    const BasedAlgebra& a3 = *sr3.tower.levels.back();
    BasedAlgebra nohint3 = a3;
    nohint3.has_radical_hint = false;
    nohint3.radical_hint.clear();
    CHECK(radical(nohint3).span == radical(a3).span);
}

TEST_CASE("radical over F_p and Q on classical examples") {
    // C2 group algebra in characteristic 2: radical is the span of 1+g
    BasedAlgebra c2 = group_c2_f2();
    IdealSpan rad = radical(c2);
    CHECK(rad.span.dim() == 1);
    Vec v = zero_vec(F2, 2);
    v[0] = Scalar::one(F2);
    v[1] = Scalar::one(F2);
    CHECK(rad.span.contains(v));

    // upper triangular over Q: strict upper part
    BasedAlgebra ut = upper_triangular(Q);
    IdealSpan radu = radical(ut);
    CHECK(radu.span.dim() == 1);
    CHECK(radu.span.contains(unit_vec(Q, 3, 2)));
    CHECK(is_split_basic(ut, radu));

    // dual numbers over Q
    CHECK(radical(dual_numbers(Q)).span.dim() == 1);

    // semisimple branch: p does not divide r
    auto ss = gl11::build_Sr(3, 2, 3);
    CHECK(radical(*ss.tower.levels.back()).span.dim() == 0);
}

namespace {

// group algebra of an abelian group given by generator orders
BasedAlgebra group_algebra(Field f, std::vector<int> orders) {
    int n = 1;
    for (int o : orders) n *= o;
    auto index_of = [&](std::vector<int> exps) {
        int idx = 0;
        for (size_t i = 0; i < orders.size(); ++i) idx = idx * orders[i] + exps[i];
        return idx;
    };
    std::vector<std::string> labels(n);
    std::vector<std::vector<int>> exps;
    {
        std::vector<int> cur(orders.size(), 0);
        for (int i = 0; i < n; ++i) {
            exps.push_back(cur);
            labels[index_of(cur)] = "g" + std::to_string(i);
            for (int d = static_cast<int>(orders.size()) - 1; d >= 0; --d) {
                if (++cur[d] < orders[d]) break;
                cur[d] = 0;
            }
        }
    }
    BasedAlgebra a = BasedAlgebra::make(f, labels);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<int> sum(orders.size());
            for (size_t d = 0; d < orders.size(); ++d) sum[d] = (exps[i][d] + exps[j][d]) % orders[d];
            a.add_term(index_of(exps[i]), index_of(exps[j]), index_of(sum), Scalar::one(f));
        }
    a.unit = unit_vec(f, n, 0);
    return a;
}

} // namespace

TEST_CASE("radical of group algebras across characteristics") {
    // modular group algebras: the augmentation ideal is the radical
    BasedAlgebra c2c2 = group_algebra(F2, {2, 2});
    CHECK(radical(c2c2).span.dim() == 3);
    BasedAlgebra c4 = group_algebra(F2, {4});
    CHECK(radical(c4).span.dim() == 3);
    BasedAlgebra c3f3 = group_algebra(F3, {3});
    CHECK(radical(c3f3).span.dim() == 2);
    BasedAlgebra c6f3 = group_algebra(F3, {6});
    CHECK(radical(c6f3).span.dim() == 4);
    // coprime order: semisimple even when the quotient has field factors
    BasedAlgebra c3f2 = group_algebra(F2, {3});
    CHECK(radical(c3f2).span.dim() == 0);
    BasedAlgebra c5f3 = group_algebra(F3, {5});
    CHECK(radical(c5f3).span.dim() == 0);
    // characteristic zero group algebras are semisimple
    BasedAlgebra c4q = group_algebra(Q, {4});
    CHECK(radical(c4q).span.dim() == 0);
}

namespace {

// brute-force characteristic polynomial by Laplace expansion of det(tI - M)
// over the polynomial ring (test-only, n <= 5)
using Poly = std::vector<Scalar>;

Poly poly_addq(const Poly& a, const Poly& b, Field f) {
    Poly r(std::max(a.size(), b.size()), Scalar::zero(f));
    for (size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
    return r;
}

Poly poly_mulq(const Poly& a, const Poly& b, Field f) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Scalar::zero(f));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

Poly brute_charpoly(const Mat& m) {
    const int n = m.rows;
    const Field f = m.f;
    // polynomial entries of tI - M
    std::vector<std::vector<Poly>> e(n, std::vector<Poly>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Poly p{-m.at(i, j)};
            if (i == j) p.push_back(Scalar::one(f));
            e[i][j] = std::move(p);
        }
    std::function<Poly(std::vector<int>)> det = [&](std::vector<int> rows) -> Poly {
        const int k = static_cast<int>(rows.size());
        int col = n - k;
        if (k == 1) return e[rows[0]][col];
        Poly acc{Scalar::zero(f)};
        for (int i = 0; i < k; ++i) {
            std::vector<int> rest;
            for (int j = 0; j < k; ++j)
                if (j != i) rest.push_back(rows[j]);
            Poly term = poly_mulq(e[rows[i]][col], det(rest), f);
            if (i % 2) term = poly_mulq(Poly{-Scalar::one(f)}, term, f);
            acc = poly_addq(acc, term, f);
        }
        return acc;
    };
    std::vector<int> all;
    for (int i = 0; i < n; ++i) all.push_back(i);
    Poly p = det(all);
    p.resize(n + 1, Scalar::zero(f));
    return p;
}

} // namespace

TEST_CASE("char poly agrees with brute-force determinant expansion over F_p") {
    struct Rng {
        std::uint64_t s = 991;
        std::uint64_t next() {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            return s;
        }
    } rng;
    for (int trial = 0; trial < 30; ++trial) {
        Field f = trial % 2 ? F2 : F3;
        int n = 1 + static_cast<int>(rng.next() % 5);
        Mat m(f, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = Scalar(f, static_cast<std::int64_t>(rng.next() % 5));
        CHECK(char_poly(m) == brute_charpoly(m));
    }
}

TEST_CASE("heredity ideals") {
    auto sr = gl11::build_Sr(2, 2, 4);
    AlgebraPtr a = sr.tower.levels.back();
    std::set<std::string> all, none;
    for (const auto& e : a->idems) all.insert(e.weight);
    CHECK(heredity_ideal(*a, all).span.dim() == 0);
    CHECK(heredity_ideal(*a, none).span.dim() == a->dim());

    // weights with index >= 1: ideal generated by the index-0 idempotent
    std::set<std::string> ge1 = all;
    ge1.erase("0");
    IdealSpan h = heredity_ideal(*a, ge1);
    CHECK(h.span.dim() == 4);
    for (const auto& lab : {"X0", "B0", "C1", "D1"})
        CHECK(h.span.contains(a->basis_vec(a->label_index(lab))));
    CHECK(is_two_sided_ideal(*a, h.span));
    // heredity ideal is idempotent: H*H = H
    std::vector<Vec> prods;
    for (const auto& u : h.span.basis)
        for (const auto& v : h.span.basis) prods.push_back(a->mul(u, v));
    CHECK(Subspace::span(a->f, a->dim(), prods) == h.span);

    CHECK_THROWS(heredity_ideal(*a, std::set<std::string>{"nope"}));
}

TEST_CASE("quotient algebra") {
    auto sr = gl11::build_Sr(2, 2, 3);
    AlgebraPtr a = sr.tower.levels.back();
    // by zero: isomorphic copy
    auto q0 = quotient_algebra(*a, Subspace::span(a->f, a->dim(), {}));
    CHECK(q0.algebra.dim() == a->dim());
    CHECK(verify_algebra(q0.algebra).all_pass());
    // by the whole algebra: zero algebra
    auto q1 = quotient_algebra(*a, Subspace::full(a->f, a->dim()));
    CHECK(q1.algebra.dim() == 0);
    // by the first heredity ideal: the index-0 idempotent dies
    std::set<std::string> ge1;
    for (const auto& e : a->idems)
        if (e.weight != "0") ge1.insert(e.weight);
    auto q2 = quotient_algebra(*a, heredity_ideal(*a, ge1).span);
    CHECK(q2.algebra.dim() == a->dim() - 4);
    CHECK(verify_algebra(q2.algebra).all_pass());
    CHECK(q2.algebra.idem_of_weight("0") == -1);
    CHECK(q2.algebra.idem_of_weight("1") >= 0);
}

TEST_CASE("opposite") {
    BasedAlgebra ut = upper_triangular(Q);
    BasedAlgebra op = opposite(ut);
    CHECK(verify_algebra(op).all_pass());
    // double opposite is the identity, bit-exactly
    BasedAlgebra opop = opposite(op);
    for (int k = 0; k < ut.dim(); ++k)
        for (int l = 0; l < ut.dim(); ++l)
            CHECK(ut.mul(ut.basis_vec(k), ut.basis_vec(l)) == opop.mul(opop.basis_vec(k), opop.basis_vec(l)));

    // commutative ungraded: constants unchanged
    BasedAlgebra dn = dual_numbers(Q);
    BasedAlgebra dnop = opposite(dn);
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
            CHECK(dn.mul(dn.basis_vec(k), dn.basis_vec(l)) == dnop.mul(dnop.basis_vec(k), dnop.basis_vec(l)));

    // graded case: odd*odd flips sign
    auto sr = gl11::build_Sr(3, 3, 3);
    const BasedAlgebra& s = *sr.tower.levels.back();
    BasedAlgebra sop = opposite(s);
    CHECK(verify_algebra(sop).all_pass());
    int ci = s.label_index("C1"), bi = s.label_index("B0");
    Vec lhs = sop.mul(s.basis_vec(bi), s.basis_vec(ci));          // B0 *op C1
    Vec rhs = scale_vec(-Scalar::one(F3), s.mul(s.basis_vec(ci), s.basis_vec(bi)));
    CHECK(lhs == rhs);
}

TEST_CASE("parity double") {
    auto sr = gl11::build_Sr(3, 3, 3);
    AlgebraPtr s = sr.tower.levels.back();
    BasedAlgebra d = super_double(*s);
    CHECK(d.dim() == 2 * s->dim());
    CHECK(d.idems.size() == 2 * s->idems.size());
    CHECK(verify_algebra(d).all_pass());
    CHECK_THROWS(super_double(d)); // the double is ungraded

    // t = pi_0 - pi_1 on the unit: t^2 = 1 and conjugation realizes the parity sign
    Vec t = zero_vec(d.f, d.dim());
    for (int k = 0; k < s->dim(); ++k) {
        t[2 * k] = t[2 * k] + s->unit[k];
        t[2 * k + 1] = t[2 * k + 1] - s->unit[k];
    }
    CHECK(d.mul(t, t) == d.unit);
    for (int k = 0; k < s->dim(); ++k)
        for (int eps = 0; eps < 2; ++eps) {
            Vec b = d.basis_vec(2 * k + eps);
            Vec conj = d.mul(t, d.mul(b, t));
            Vec expect = s->deg[k] == 1 ? scale_vec(-Scalar::one(d.f), b) : b;
            CHECK(conj == expect);
        }

    // radical hint carries over and verifies
    CHECK(radical(d).span.dim() == 2 * radical(*s).span.dim());
}

TEST_CASE("tower verification") {
    auto sr = gl11::build_Sr(2, 2, 5);
    Report rep = verify_tower(sr.tower);
    CHECK(rep.all_pass());

    // single-level tower passes vacuously
    AlgebraTower single;
    single.levels.push_back(sr.tower.levels[0]);
    CHECK(verify_tower(single).all_pass());

    // corrupt one connecting map: must fail with a witness
    AlgebraTower bad = sr.tower;
    bad.maps[1].at(0, 1) = Scalar::one(F2);
    Report brep = verify_tower(bad);
    CHECK_FALSE(brep.all_pass());

    // kernels of composites nest
    Subspace k1 = sr.tower.kernel_to(1);
    Subspace k3 = sr.tower.kernel_to(3);
    CHECK(k1.contains(k3));
}

TEST_CASE("idempotent truncation") {
    auto sr = gl11::build_Sr(2, 2, 5);
    AlgebraPtr a = sr.tower.levels.back();
    // truncate to the top three weights 0,1,2
    std::vector<int> sub;
    for (size_t i = 0; i < a->idems.size(); ++i)
        if (std::stoi(a->idems[i].weight) <= 2) sub.push_back(static_cast<int>(i));
    TruncationResult tr = idempotent_truncation(*a, sub);
    CHECK(tr.algebra.dim() == 4 * 3 - 3);
    CHECK(verify_algebra(tr.algebra).all_pass());
    CHECK(tr.algebra.idems.size() == 3);
}
