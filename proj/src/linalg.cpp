#include "qhpc/linalg.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qhpc {

Vec zero_vec(Field f, int n) { return Vec(n, Scalar::zero(f)); }

Vec unit_vec(Field f, int n, int i) {
    Vec v = zero_vec(f, n);
    v[i] = Scalar::one(f);
    return v;
}

bool is_zero_vec(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

Vec add_vec(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] + b[i];
    return r;
}

Vec sub_vec(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] - b[i];
    return r;
}

Vec scale_vec(const Scalar& c, const Vec& v) {
    Vec r = v;
    for (auto& x : r) x = c * x;
    return r;
}

Mat Mat::identity(Field f, int n) {
    Mat m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
}

Mat Mat::from_rows(Field f, const std::vector<Vec>& rows, int cols) {
    Mat m(f, static_cast<int>(rows.size()), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (static_cast<int>(rows[i].size()) != cols) throw std::invalid_argument("Mat: row size");
        for (int j = 0; j < cols; ++j) m.at(static_cast<int>(i), j) = rows[i][j];
    }
    return m;
}

Mat Mat::from_cols(Field f, const std::vector<Vec>& cols, int rows) {
    Mat m(f, rows, static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) {
        if (static_cast<int>(cols[j].size()) != rows) throw std::invalid_argument("Mat: col size");
        for (int i = 0; i < rows; ++i) m.at(i, static_cast<int>(j)) = cols[j][i];
    }
    return m;
}

Vec Mat::row(int r) const {
    Vec v;
    v.reserve(cols);
    for (int j = 0; j < cols; ++j) v.push_back(at(r, j));
    return v;
}

Vec Mat::col(int c) const {
    Vec v;
    v.reserve(rows);
    for (int i = 0; i < rows; ++i) v.push_back(at(i, c));
    return v;
}

bool Mat::is_zero() const {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

bool Mat::operator==(const Mat& o) const {
    if (rows != o.rows || cols != o.cols || f != o.f) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != o.a[i]) return false;
    return true;
}

// ------------------------------------------------------------------ F_p fast path

namespace {

struct FpMat {
    int rows = 0, cols = 0;
    std::int64_t p = 0;
    std::vector<std::int64_t> a;

    std::int64_t& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    std::int64_t at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

FpMat to_fp(const Mat& m) {
    FpMat r;
    r.rows = m.rows;
    r.cols = m.cols;
    r.p = m.f.p;
    r.a.resize(m.a.size());
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = m.a[i].fp();
    return r;
}

Mat from_fp(const FpMat& m, Field f) {
    Mat r(f, m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = Scalar(f, m.a[i]);
    return r;
}

inline std::int64_t pmul(std::int64_t a, std::int64_t b, std::int64_t p) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
}

std::vector<int> fp_rref_inplace(FpMat& m) {
    std::vector<int> pivots;
    const std::int64_t p = m.p;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int prow = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) {
                prow = i;
                break;
            }
        if (prow < 0) continue;
        if (prow != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(prow, j), m.at(r, j));
        std::int64_t inv = fp_inv(m.at(r, c), p);
        if (inv != 1)
            for (int j = c; j < m.cols; ++j) m.at(r, j) = pmul(m.at(r, j), inv, p);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (m.rows > 64)
#endif
        for (int i = 0; i < m.rows; ++i) {
            if (i == r) continue;
            std::int64_t factor = m.at(i, c);
            if (factor == 0) continue;
            for (int j = c; j < m.cols; ++j) {
                std::int64_t v = m.at(i, j) - pmul(factor, m.at(r, j), p);
                v %= p;
                if (v < 0) v += p;
                m.at(i, j) = v;
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<int> generic_rref_inplace(Mat& m, bool parallel) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int prow = -1;
        for (int i = r; i < m.rows; ++i)
            if (!m.at(i, c).is_zero()) {
                prow = i;
                break;
            }
        if (prow < 0) continue;
        if (prow != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(prow, j), m.at(r, j));
        Scalar inv = m.at(r, c).inv();
        if (!inv.is_one())
            for (int j = c; j < m.cols; ++j) m.at(r, j) = m.at(r, j) * inv;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel && m.rows > 64)
#endif
        for (int i = 0; i < m.rows; ++i) {
            if (i == r) continue;
            Scalar factor = m.at(i, c);
            if (factor.is_zero()) continue;
            for (int j = c; j < m.cols; ++j)
                m.at(i, j) = m.at(i, j) - factor * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

RrefResult rref(const Mat& m) {
    if (m.f.is_fp()) {
        FpMat fm = to_fp(m);
        std::vector<int> piv = fp_rref_inplace(fm);
        return {from_fp(fm, m.f), std::move(piv)};
    }
    Mat r = m;
    std::vector<int> piv = generic_rref_inplace(r, true);
    return {std::move(r), std::move(piv)};
}

int rank(const Mat& m) { return static_cast<int>(rref(m).pivots.size()); }

namespace serial {

RrefResult rref(const Mat& m) {
    if (m.f.is_fp()) {
        // same elimination order, no OpenMP
        FpMat fm = to_fp(m);
        std::vector<int> pivots;
        const std::int64_t p = fm.p;
        int r = 0;
        for (int c = 0; c < fm.cols && r < fm.rows; ++c) {
            int prow = -1;
            for (int i = r; i < fm.rows; ++i)
                if (fm.at(i, c) != 0) {
                    prow = i;
                    break;
                }
            if (prow < 0) continue;
            if (prow != r)
                for (int j = 0; j < fm.cols; ++j) std::swap(fm.at(prow, j), fm.at(r, j));
            std::int64_t inv = fp_inv(fm.at(r, c), p);
            if (inv != 1)
                for (int j = c; j < fm.cols; ++j) fm.at(r, j) = pmul(fm.at(r, j), inv, p);
            for (int i = 0; i < fm.rows; ++i) {
                if (i == r) continue;
                std::int64_t factor = fm.at(i, c);
                if (factor == 0) continue;
                for (int j = c; j < fm.cols; ++j) {
                    std::int64_t v = fm.at(i, j) - pmul(factor, fm.at(r, j), p);
                    v %= p;
                    if (v < 0) v += p;
                    fm.at(i, j) = v;
                }
            }
            pivots.push_back(c);
            ++r;
        }
        return {from_fp(fm, m.f), std::move(pivots)};
    }
    Mat r = m;
    std::vector<int> piv = generic_rref_inplace(r, false);
    return {std::move(r), std::move(piv)};
}

Mat mat_mul(const Mat& a, const Mat& b) {
    if (a.f != b.f) throw std::invalid_argument("mat_mul: field mismatch");
    if (a.cols != b.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    Mat r(a.f, a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const Scalar& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < b.cols; ++j)
                r.at(i, j) = r.at(i, j) + aik * b.at(k, j);
        }
    return r;
}

} // namespace serial

Mat mat_mul(const Mat& a, const Mat& b) {
    if (a.f != b.f) throw std::invalid_argument("mat_mul: field mismatch");
    if (a.cols != b.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    if (a.f.is_fp()) {
        FpMat fa = to_fp(a), fb = to_fp(b);
        FpMat fr;
        fr.rows = a.rows;
        fr.cols = b.cols;
        fr.p = a.f.p;
        fr.a.assign(static_cast<size_t>(a.rows) * b.cols, 0);
        const std::int64_t p = fr.p;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (a.rows > 32)
#endif
        for (int i = 0; i < a.rows; ++i)
            for (int k = 0; k < a.cols; ++k) {
                std::int64_t aik = fa.at(i, k);
                if (aik == 0) continue;
                for (int j = 0; j < b.cols; ++j) {
                    std::int64_t v = fr.at(i, j) + pmul(aik, fb.at(k, j), p);
                    fr.at(i, j) = v >= p ? v - p : v;
                }
            }
        return from_fp(fr, a.f);
    }
    Mat r(a.f, a.rows, b.cols);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (a.rows > 32)
#endif
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const Scalar& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < b.cols; ++j)
                r.at(i, j) = r.at(i, j) + aik * b.at(k, j);
        }
    return r;
}

Mat mat_add(const Mat& a, const Mat& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("mat_add: shape");
    Mat r = a;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] + b.a[i];
    return r;
}

Mat mat_sub(const Mat& a, const Mat& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("mat_sub: shape");
    Mat r = a;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] - b.a[i];
    return r;
}

Mat mat_scale(const Scalar& c, const Mat& a) {
    Mat r = a;
    for (auto& x : r.a) x = c * x;
    return r;
}

Mat transpose(const Mat& a) {
    Mat r(a.f, a.cols, a.rows);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) r.at(j, i) = a.at(i, j);
    return r;
}

Vec mat_apply(const Mat& a, const Vec& v) {
    if (static_cast<int>(v.size()) != a.cols) throw std::invalid_argument("mat_apply: shape");
    Vec r = zero_vec(a.f, a.rows);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j)
            if (!a.at(i, j).is_zero()) r[i] = r[i] + a.at(i, j) * v[j];
    return r;
}

Mat mat_pow(const Mat& a, int k) {
    Mat r = Mat::identity(a.f, a.rows);
    for (int i = 0; i < k; ++i) r = mat_mul(r, a);
    return r;
}

Scalar trace(const Mat& a) {
    Scalar t = Scalar::zero(a.f);
    for (int i = 0; i < a.rows && i < a.cols; ++i) t = t + a.at(i, i);
    return t;
}

std::vector<Vec> kernel_basis(const Mat& m) {
    RrefResult rr = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : rr.pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (int c = 0; c < m.cols; ++c) {
        if (is_pivot[c]) continue;
        Vec v = zero_vec(m.f, m.cols);
        v[c] = Scalar::one(m.f);
        for (size_t i = 0; i < rr.pivots.size(); ++i)
            v[rr.pivots[i]] = -rr.r.at(static_cast<int>(i), c);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve(const Mat& m, const Vec& b) {
    if (static_cast<int>(b.size()) != m.rows) throw std::invalid_argument("solve: shape mismatch");
    Mat aug(m.f, m.rows, m.cols + 1);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = b[i];
    }
    RrefResult rr = rref(aug);
    for (int c : rr.pivots)
        if (c == m.cols) return std::nullopt;
    Vec x = zero_vec(m.f, m.cols);
    for (size_t i = 0; i < rr.pivots.size(); ++i)
        x[rr.pivots[i]] = rr.r.at(static_cast<int>(i), m.cols);
    return x;
}

// ------------------------------------------------------------------ char poly

namespace {

// Characteristic polynomial of an upper Hessenberg matrix by the standard
// leading-principal-minor recurrence. Coefficients low degree first.
std::vector<Scalar> hessenberg_charpoly(Mat h) {
    const int n = h.rows;
    const Field f = h.f;
    std::vector<std::vector<Scalar>> p(n + 1);
    p[0] = {Scalar::one(f)}; // constant polynomial 1
    for (int k = 1; k <= n; ++k) {
        // p_k(t) = (t - h[k-1][k-1]) p_{k-1}(t) - sum_{i<k-1} h[i][k-1] * prod_{j=i+1..k-2} h[j+1][j] * p_i(t)
        std::vector<Scalar> pk(k + 1, Scalar::zero(f));
        for (size_t d = 0; d < p[k - 1].size(); ++d) {
            pk[d + 1] = pk[d + 1] + p[k - 1][d];
            pk[d] = pk[d] - h.at(k - 1, k - 1) * p[k - 1][d];
        }
        Scalar prod = Scalar::one(f);
        for (int i = k - 2; i >= 0; --i) {
            prod = prod * h.at(i + 1, i); // subdiagonal entries
            Scalar coeff = h.at(i, k - 1) * prod;
            if (!coeff.is_zero())
                for (size_t d = 0; d < p[i].size(); ++d)
                    pk[d] = pk[d] - coeff * p[i][d];
        }
        p[k] = std::move(pk);
    }
    return p[n];
}

std::vector<Scalar> charpoly_impl(const Mat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("char_poly: non-square input");
    const int n = m.rows;
    const Field f = m.f;
    if (n == 0) return {Scalar::one(f)};
    Mat h = m;
    // similarity reduction to upper Hessenberg form
    for (int c = 0; c < n - 2; ++c) {
        int prow = -1;
        for (int i = c + 1; i < n; ++i)
            if (!h.at(i, c).is_zero()) {
                prow = i;
                break;
            }
        if (prow < 0) continue;
        if (prow != c + 1) {
            for (int j = 0; j < n; ++j) std::swap(h.at(prow, j), h.at(c + 1, j));
            for (int i = 0; i < n; ++i) std::swap(h.at(i, prow), h.at(i, c + 1));
        }
        Scalar pivot_inv = h.at(c + 1, c).inv();
        for (int i = c + 2; i < n; ++i) {
            Scalar factor = h.at(i, c) * pivot_inv;
            if (factor.is_zero()) continue;
            for (int j = 0; j < n; ++j) h.at(i, j) = h.at(i, j) - factor * h.at(c + 1, j);
            for (int r = 0; r < n; ++r) h.at(r, c + 1) = h.at(r, c + 1) + factor * h.at(r, i);
        }
    }
    return hessenberg_charpoly(std::move(h));
}

} // namespace

std::vector<Scalar> char_poly(const Mat& m) { return charpoly_impl(m); }

namespace serial {
std::vector<Scalar> char_poly(const Mat& m) { return charpoly_impl(m); }
} // namespace serial

Mat poly_eval_mat(const std::vector<Scalar>& coeffs, const Mat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("poly_eval_mat: non-square");
    Mat acc(m.f, m.rows, m.rows);
    // Horner from the top coefficient
    for (size_t k = coeffs.size(); k-- > 0;) {
        acc = mat_mul(acc, m);
        for (int i = 0; i < m.rows; ++i) acc.at(i, i) = acc.at(i, i) + coeffs[k];
    }
    return acc;
}

// ------------------------------------------------------------------ subspaces

Subspace Subspace::span(Field f, int ambient, const std::vector<Vec>& vectors) {
    Subspace s;
    s.f = f;
    s.ambient = ambient;
    if (!vectors.empty()) {
        Mat m = Mat::from_rows(f, vectors, ambient);
        RrefResult rr = rref(m);
        for (size_t i = 0; i < rr.pivots.size(); ++i) s.basis.push_back(rr.r.row(static_cast<int>(i)));
        s.pivots = rr.pivots;
    }
    return s;
}

Subspace Subspace::full(Field f, int ambient) {
    std::vector<Vec> rows;
    for (int i = 0; i < ambient; ++i) rows.push_back(unit_vec(f, ambient, i));
    return span(f, ambient, rows);
}

Vec Subspace::reduce(const Vec& v) const {
    Vec r = v;
    for (size_t i = 0; i < basis.size(); ++i) {
        const Scalar& c = r[pivots[i]];
        if (c.is_zero()) continue;
        Scalar factor = c;
        for (int j = 0; j < ambient; ++j) r[j] = r[j] - factor * basis[i][j];
    }
    return r;
}

bool Subspace::contains(const Vec& v) const { return is_zero_vec(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
    for (const auto& v : other.basis)
        if (!contains(v)) return false;
    return true;
}

bool Subspace::operator==(const Subspace& o) const {
    if (ambient != o.ambient || dim() != o.dim()) return false;
    for (int i = 0; i < dim(); ++i)
        if (basis[i] != o.basis[i]) return false;
    return true;
}

std::optional<Vec> Subspace::coords(const Vec& v) const {
    Vec r = v;
    Vec c = zero_vec(f, dim());
    for (size_t i = 0; i < basis.size(); ++i) {
        const Scalar& x = r[pivots[i]];
        if (x.is_zero()) continue;
        c[i] = x;
        Scalar factor = x;
        for (int j = 0; j < ambient; ++j) r[j] = r[j] - factor * basis[i][j];
    }
    if (!is_zero_vec(r)) return std::nullopt;
    return c;
}

Subspace space_sum(const Subspace& a, const Subspace& b) {
    std::vector<Vec> rows = a.basis;
    rows.insert(rows.end(), b.basis.begin(), b.basis.end());
    return Subspace::span(a.f, a.ambient, rows);
}

Subspace space_intersect(const Subspace& a, const Subspace& b) {
    // Zassenhaus: echelonize [A|A; B|0]; rows with zero left half carry the
    // intersection in the right half.
    const int n = a.ambient;
    std::vector<Vec> rows;
    for (const auto& v : a.basis) {
        Vec w = v;
        w.insert(w.end(), v.begin(), v.end());
        rows.push_back(std::move(w));
    }
    for (const auto& v : b.basis) {
        Vec w = v;
        Vec z = zero_vec(a.f, n);
        w.insert(w.end(), z.begin(), z.end());
        rows.push_back(std::move(w));
    }
    if (rows.empty()) return Subspace::span(a.f, n, {});
    RrefResult rr = rref(Mat::from_rows(a.f, rows, 2 * n));
    std::vector<Vec> inter;
    for (size_t i = 0; i < rr.pivots.size(); ++i)
        if (rr.pivots[i] >= n) {
            Vec row = rr.r.row(static_cast<int>(i));
            inter.emplace_back(row.begin() + n, row.end());
        }
    return Subspace::span(a.f, n, inter);
}

std::vector<Vec> complement_of(const Subspace& s) {
    std::vector<bool> is_pivot(s.ambient, false);
    for (int c : s.pivots) is_pivot[c] = true;
    std::vector<Vec> comp;
    for (int c = 0; c < s.ambient; ++c)
        if (!is_pivot[c]) comp.push_back(unit_vec(s.f, s.ambient, c));
    return comp;
}

Subspace image_of(const Mat& m, const Subspace& domain) {
    std::vector<Vec> imgs;
    for (const auto& v : domain.basis) imgs.push_back(mat_apply(m, v));
    return Subspace::span(m.f, m.rows, imgs);
}

} // namespace qhpc
