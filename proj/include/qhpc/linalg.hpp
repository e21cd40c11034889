#pragma once

#include "qhpc/field.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace qhpc {

using Vec = std::vector<Scalar>;

Vec zero_vec(Field f, int n);
Vec unit_vec(Field f, int n, int i);
bool is_zero_vec(const Vec& v);
Vec add_vec(const Vec& a, const Vec& b);
Vec sub_vec(const Vec& a, const Vec& b);
Vec scale_vec(const Scalar& c, const Vec& v);

/// Dense matrix over one field, row-major.
struct Mat {
    int rows = 0, cols = 0;
    Field f;
    std::vector<Scalar> a;

    Mat() = default;
    Mat(Field f_, int r, int c) : rows(r), cols(c), f(f_), a(static_cast<size_t>(r) * c, Scalar::zero(f_)) {}

    Scalar& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const Scalar& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    static Mat identity(Field f, int n);
    static Mat from_rows(Field f, const std::vector<Vec>& rows, int cols);
    static Mat from_cols(Field f, const std::vector<Vec>& cols, int rows);

    Vec row(int r) const;
    Vec col(int c) const;
    bool is_zero() const;
    bool operator==(const Mat& o) const;
};

Mat mat_mul(const Mat& a, const Mat& b);
Mat mat_add(const Mat& a, const Mat& b);
Mat mat_sub(const Mat& a, const Mat& b);
Mat mat_scale(const Scalar& c, const Mat& a);
Mat transpose(const Mat& a);
Vec mat_apply(const Mat& a, const Vec& v);
Mat mat_pow(const Mat& a, int k);
Scalar trace(const Mat& a);

struct RrefResult {
    Mat r;
    std::vector<int> pivots;
};

/// Reduced row echelon form: leftmost pivots, pivots scaled to 1, full
/// elimination above and below. Deterministic; parallel row updates.
RrefResult rref(const Mat& m);
int rank(const Mat& m);

/// Echelonized basis of the right null space, one vector per free column,
/// ordered by free column index.
std::vector<Vec> kernel_basis(const Mat& m);

/// Echelon-canonical particular solution of m x = b (free coordinates zero),
/// or nullopt when inconsistent.
std::optional<Vec> solve(const Mat& m, const Vec& b);

/// Monic characteristic polynomial, coefficients low degree first
/// (size n+1, leading coefficient 1). Hessenberg reduction, any field.
std::vector<Scalar> char_poly(const Mat& m);

/// Evaluate a polynomial (low-first coefficients) at a square matrix.
Mat poly_eval_mat(const std::vector<Scalar>& coeffs, const Mat& m);

/// Serial reference implementations, kept for equivalence tests and benchmarks.
namespace serial {
RrefResult rref(const Mat& m);
Mat mat_mul(const Mat& a, const Mat& b);
std::vector<Scalar> char_poly(const Mat& m);
} // namespace serial

/// Row span in canonical reduced echelon form.
struct Subspace {
    Field f;
    int ambient = 0;
    std::vector<Vec> basis;   // rref rows, nonzero
    std::vector<int> pivots;  // pivot column per basis row

    static Subspace span(Field f, int ambient, const std::vector<Vec>& vectors);
    static Subspace full(Field f, int ambient);

    int dim() const { return static_cast<int>(basis.size()); }
    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;
    bool operator==(const Subspace& o) const;

    /// Residue of v modulo the span (echelon reduction).
    Vec reduce(const Vec& v) const;

    /// Coordinates of v in the echelon basis; nullopt if v is outside.
    std::optional<Vec> coords(const Vec& v) const;
};

Subspace space_sum(const Subspace& a, const Subspace& b);
Subspace space_intersect(const Subspace& a, const Subspace& b);

/// Canonical complement: standard basis vectors at the non-pivot coordinates.
std::vector<Vec> complement_of(const Subspace& s);

/// Image of a linear map restricted to a subspace.
Subspace image_of(const Mat& m, const Subspace& domain);

} // namespace qhpc
