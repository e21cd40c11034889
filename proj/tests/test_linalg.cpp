#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qhpc/linalg.hpp"

#include <cstdint>

using namespace qhpc;

namespace {

const Field Q{0};
const Field F2{2};
const Field F3{3};

Mat mat_of(Field f, std::vector<std::vector<std::int64_t>> rows) {
    Mat m(f, static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
            m.at(static_cast<int>(i), static_cast<int>(j)) = Scalar(f, rows[i][j]);
    return m;
}

Vec vec_of(Field f, std::vector<std::int64_t> v) {
    Vec r;
    for (auto x : v) r.push_back(Scalar(f, x));
    return r;
}

struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    std::int64_t range(std::int64_t n) { return static_cast<std::int64_t>(next() % n); }
};

Mat random_mat(Field f, int r, int c, Rng& rng, int spread = 5) {
    Mat m(f, r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = Scalar(f, rng.range(2 * spread + 1) - spread);
    return m;
}

} // namespace

TEST_CASE("bigint and rational arithmetic") {
    BigInt a = BigInt::from_string("123456789012345678901234567890");
    BigInt b = BigInt::from_string("-987654321098765432109876543210");
    CHECK((a + b).str() == "-864197532086419753208641975320");
    CHECK((a * b).str() == "-121932631137021795226185032733622923332237463801111263526900");
    BigInt q, r;
    BigInt::divmod(b, a, q, r);
    CHECK((a * q + r) == b);
    CHECK(BigInt::gcd(BigInt(12 * 35), BigInt(18 * 35)).str() == "210");

    Rat x = Rat::from_string("2/4");
    CHECK(x.str() == "1/2");
    CHECK((x + Rat::from_string("1/3")).str() == "5/6");
    CHECK((x * Rat(-4)).str() == "-2");
    CHECK((Rat(1) / Rat::from_string("-3/7")).str() == "-7/3");
}

TEST_CASE("scalar field ops") {
    Scalar a(F3, 2), b(F3, 2);
    CHECK((a * b).fp() == 1);
    CHECK((a + b).fp() == 1);
    CHECK(a.inv().fp() == 2);
    Scalar q(Q, Rat::from_string("3/4"));
    CHECK((q * q.inv()).is_one());
    CHECK_THROWS(Scalar(F2, Rat::from_string("1/2")));
    CHECK(Scalar(F2, Rat::from_string("1/3")).fp() == 1);
}

TEST_CASE("rref examples") {
    // identity is fixed
    auto rr = rref(Mat::identity(Q, 2));
    CHECK(rr.r == Mat::identity(Q, 2));
    CHECK(rr.pivots == std::vector<int>{0, 1});

    // zero matrix is fixed with no pivots
    Mat z(Q, 2, 2);
    auto rz = rref(z);
    CHECK(rz.r == z);
    CHECK(rz.pivots.empty());

    auto rm = rref(mat_of(Q, {{1, 2}, {2, 4}}));
    CHECK(rm.r == mat_of(Q, {{1, 2}, {0, 0}}));
    CHECK(rm.pivots == std::vector<int>{0});
}

TEST_CASE("rref is idempotent and rank-nullity holds") {
    Rng rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        Field f = (trial % 3 == 0) ? Q : (trial % 3 == 1 ? F2 : F3);
        Mat m = random_mat(f, 4 + static_cast<int>(rng.range(4)), 3 + static_cast<int>(rng.range(5)), rng);
        auto r1 = rref(m);
        auto r2 = rref(r1.r);
        CHECK(r1.r == r2.r);
        CHECK(r1.pivots == r2.pivots);
        CHECK(static_cast<int>(r1.pivots.size()) + static_cast<int>(kernel_basis(m).size()) == m.cols);
    }
}

TEST_CASE("kernel examples") {
    CHECK(kernel_basis(Mat::identity(Q, 3)).empty());
    auto k = kernel_basis(Mat(F3, 3, 3));
    REQUIRE(k.size() == 3);
    CHECK(k[0] == vec_of(F3, {1, 0, 0}));
    auto k2 = kernel_basis(mat_of(F2, {{1, 1}}));
    REQUIRE(k2.size() == 1);
    CHECK(k2[0] == vec_of(F2, {1, 1}));
}

TEST_CASE("solve examples") {
    Vec b = vec_of(Q, {3, 5});
    auto x = solve(Mat::identity(Q, 2), b);
    REQUIRE(x.has_value());
    CHECK(*x == b);

    CHECK_FALSE(solve(mat_of(Q, {{1, 2}, {2, 4}}), vec_of(Q, {1, 3})).has_value());
    auto y = solve(mat_of(Q, {{1, 2}, {2, 4}}), vec_of(Q, {1, 2}));
    REQUIRE(y.has_value());
    CHECK(*y == vec_of(Q, {1, 0}));
}

TEST_CASE("solve agrees with brute force over F2") {
    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(rng.range(4)); // up to 5 unknowns, full search up to 2^8 fine
        int m = 1 + static_cast<int>(rng.range(4));
        Mat a = random_mat(F2, m, n, rng);
        Vec b = vec_of(F2, {});
        for (int i = 0; i < m; ++i) b.push_back(Scalar(F2, rng.range(2)));
        bool brute = false;
        for (std::uint32_t bits = 0; bits < (1u << n) && !brute; ++bits) {
            Vec x = zero_vec(F2, n);
            for (int i = 0; i < n; ++i) x[i] = Scalar(F2, (bits >> i) & 1);
            if (mat_apply(a, x) == b) brute = true;
        }
        auto got = solve(a, b);
        CHECK(brute == got.has_value());
        if (got) CHECK(mat_apply(a, *got) == b);
    }
}

TEST_CASE("char poly examples") {
    auto p1 = char_poly(Mat::identity(Q, 2)); // t^2 - 2t + 1
    CHECK(p1 == std::vector<Scalar>{Scalar(Q, 1), Scalar(Q, -2), Scalar(Q, 1)});
    auto p2 = char_poly(mat_of(Q, {{0, 1}, {0, 0}})); // t^2
    CHECK(p2 == std::vector<Scalar>{Scalar(Q, 0), Scalar(Q, 0), Scalar(Q, 1)});
    auto p3 = char_poly(mat_of(Q, {{1, 0}, {0, 2}})); // t^2 - 3t + 2
    CHECK(p3 == std::vector<Scalar>{Scalar(Q, 2), Scalar(Q, -3), Scalar(Q, 1)});
    CHECK_THROWS(char_poly(Mat(Q, 2, 3)));
}

namespace {

// Faddeev-LeVerrier, characteristic zero only: independent oracle.
std::vector<Scalar> charpoly_faddeev(const Mat& m) {
    const int n = m.rows;
    std::vector<Scalar> c(n + 1, Scalar::zero(Q));
    c[n] = Scalar::one(Q);
    Mat mk(Q, n, n);
    for (int k = 1; k <= n; ++k) {
        // M_k = A (M_{k-1} + c_{n-k+1} I)
        Mat t = mk;
        for (int i = 0; i < n; ++i) t.at(i, i) = t.at(i, i) + c[n - k + 1];
        mk = mat_mul(m, t);
        c[n - k] = -(trace(mk) / Scalar(Q, k));
    }
    return c;
}

} // namespace

TEST_CASE("char poly matches Faddeev-LeVerrier over Q and Cayley-Hamilton holds") {
    Rng rng(99);
    for (int trial = 0; trial < 15; ++trial) {
        int n = 1 + static_cast<int>(rng.range(6));
        Mat m = random_mat(Q, n, n, rng, 3);
        auto p = char_poly(m);
        CHECK(p == charpoly_faddeev(m));
        CHECK(poly_eval_mat(p, m).is_zero());
    }
    for (int trial = 0; trial < 15; ++trial) {
        int n = 1 + static_cast<int>(rng.range(6));
        Field f = trial % 2 ? F2 : F3;
        Mat m = random_mat(f, n, n, rng);
        CHECK(poly_eval_mat(char_poly(m), m).is_zero());
    }
}

TEST_CASE("parallel kernels match serial reference bit-exactly") {
    Rng rng(1234);
    for (int trial = 0; trial < 12; ++trial) {
        Field f = trial % 3 == 0 ? Q : (trial % 3 == 1 ? F2 : F3);
        Mat m = random_mat(f, 20, 17, rng);
        auto a = rref(m);
        auto b = serial::rref(m);
        CHECK(a.r == b.r);
        CHECK(a.pivots == b.pivots);
        Mat x = random_mat(f, 13, 9, rng);
        Mat y = random_mat(f, 9, 11, rng);
        CHECK(mat_mul(x, y) == serial::mat_mul(x, y));
        Mat s = random_mat(f, 8, 8, rng);
        CHECK(char_poly(s) == serial::char_poly(s));
    }
}

TEST_CASE("subspace calculus") {
    auto u = Subspace::span(Q, 3, {vec_of(Q, {1, 0, 1}), vec_of(Q, {0, 1, 1})});
    auto w = Subspace::span(Q, 3, {vec_of(Q, {1, 1, 2})});
    CHECK(u.dim() == 2);
    CHECK(u.contains(vec_of(Q, {1, 1, 2})));
    CHECK(u.contains(w));
    CHECK_FALSE(w.contains(u));

    auto inter = space_intersect(u, w);
    CHECK(inter.dim() == 1);
    CHECK(inter.contains(vec_of(Q, {1, 1, 2})));

    auto s = space_sum(w, Subspace::span(Q, 3, {vec_of(Q, {0, 0, 1})}));
    CHECK(s.dim() == 2);

    auto comp = complement_of(u);
    REQUIRE(comp.size() == 1);
    CHECK(space_sum(u, Subspace::span(Q, 3, comp)).dim() == 3);

    auto coords = u.coords(vec_of(Q, {2, 3, 5}));
    REQUIRE(coords.has_value());
    CHECK((*coords)[0] == Scalar(Q, 2));
    CHECK((*coords)[1] == Scalar(Q, 3));
    CHECK_FALSE(u.coords(vec_of(Q, {0, 0, 1})).has_value());
}

TEST_CASE("zassenhaus intersection dimension formula") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Field f = trial % 2 ? F3 : Q;
        int n = 5;
        std::vector<Vec> va, vb;
        for (int i = 0; i < 3; ++i) va.push_back(random_mat(f, 1, n, rng).row(0));
        for (int i = 0; i < 3; ++i) vb.push_back(random_mat(f, 1, n, rng).row(0));
        auto a = Subspace::span(f, n, va);
        auto b = Subspace::span(f, n, vb);
        auto s = space_sum(a, b);
        auto i = space_intersect(a, b);
        CHECK(a.dim() + b.dim() == s.dim() + i.dim());
        CHECK(a.contains(i));
        CHECK(b.contains(i));
        CHECK(s.contains(a));
    }
}
