// Benchmark of the parallel exact linear algebra kernels against the serial
// reference implementations. Results must agree bit-exactly; timings compare
// the OpenMP row-parallel paths with the plain loops.

#include "qhpc/linalg.hpp"

#include <chrono>
#include <cstdio>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace qhpc;
using Clock = std::chrono::steady_clock;

namespace {

struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
};

Mat random_mat(Field f, int r, int c, Rng& rng) {
    Mat m(f, r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            m.at(i, j) = f.is_fp() ? Scalar(f, static_cast<std::int64_t>(rng.next() % f.p))
                                   : Scalar(f, static_cast<std::int64_t>(rng.next() % 19) - 9);
    return m;
}

template <typename F>
double time_best_of(int reps, F&& fn) {
    double best = 1e100;
    for (int i = 0; i < reps; ++i) {
        auto t0 = Clock::now();
        fn();
        auto t1 = Clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp: %d threads\n", omp_get_max_threads());
#else
    std::printf("openmp: disabled (serial build)\n");
#endif
    std::printf("%-10s %-12s %6s | %10s %10s %7s | %s\n", "kernel", "field", "n", "serial-ms",
                "parallel", "speedup", "agree");

    Rng rng(20240908);
    for (std::int64_t p : {2, 3, 65537}) {
        Field f{p};
        for (int n : {96, 192, 288}) {
            Mat a = random_mat(f, n, n, rng);
            Mat b = random_mat(f, n, n, rng);

            RrefResult rs, rp;
            double ts = time_best_of(2, [&] { rs = serial::rref(a); });
            double tp = time_best_of(2, [&] { rp = rref(a); });
            bool same = rs.r == rp.r && rs.pivots == rp.pivots;
            std::printf("%-10s F%-11lld %6d | %10.2f %10.2f %6.2fx | %s\n", "rref",
                        static_cast<long long>(p), n, ts, tp, ts / tp, same ? "yes" : "NO");

            Mat ms, mp;
            ts = time_best_of(2, [&] { ms = serial::mat_mul(a, b); });
            tp = time_best_of(2, [&] { mp = mat_mul(a, b); });
            same = ms == mp;
            std::printf("%-10s F%-11lld %6d | %10.2f %10.2f %6.2fx | %s\n", "mat_mul",
                        static_cast<long long>(p), n, ts, tp, ts / tp, same ? "yes" : "NO");
        }
        {
            int n = 64;
            Mat a = random_mat(f, n, n, rng);
            std::vector<Scalar> cs, cp;
            double ts = time_best_of(2, [&] { cs = serial::char_poly(a); });
            double tp = time_best_of(2, [&] { cp = char_poly(a); });
            bool same = cs == cp;
            std::printf("%-10s F%-11lld %6d | %10.2f %10.2f %6.2fx | %s\n", "char_poly",
                        static_cast<long long>(p), n, ts, tp, ts / tp, same ? "yes" : "NO");
        }
    }
    {
        Field q{0};
        int n = 20;
        Mat a = random_mat(q, n, n, rng);
        Mat b = random_mat(q, n, n, rng);
        RrefResult rs, rp;
        double ts = time_best_of(2, [&] { rs = serial::rref(a); });
        double tp = time_best_of(2, [&] { rp = rref(a); });
        std::printf("%-10s %-12s %6d | %10.2f %10.2f %6.2fx | %s\n", "rref", "Q", n, ts, tp,
                    ts / tp, (rs.r == rp.r ? "yes" : "NO"));
        Mat ms, mp;
        ts = time_best_of(2, [&] { ms = serial::mat_mul(a, b); });
        tp = time_best_of(2, [&] { mp = mat_mul(a, b); });
        std::printf("%-10s %-12s %6d | %10.2f %10.2f %6.2fx | %s\n", "mat_mul", "Q", n, ts, tp,
                    ts / tp, (ms == mp ? "yes" : "NO"));
    }
    return 0;
}
