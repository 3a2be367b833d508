#pragma once

#include "mfs/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace mfs {

using Vec = std::vector<Rat>;

/// Dense matrix over exact rationals.
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<Rat> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Rat(0)) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    Rat& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    Vec row(std::size_t i) const { return Vec(a.begin() + i * cols, a.begin() + (i + 1) * cols); }
    Vec col(std::size_t j) const {
        Vec v(rows);
        for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
        return v;
    }

    Mat transposed() const {
        Mat t(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
};

Mat operator*(const Mat& x, const Mat& y);
Mat operator+(const Mat& x, const Mat& y);
Mat operator-(const Mat& x, const Mat& y);
Vec operator*(const Mat& m, const Vec& v);

Vec vec_add(const Vec& x, const Vec& y);
Vec vec_sub(const Vec& x, const Vec& y);
Vec vec_scale(const Rat& c, const Vec& x);
Rat dot(const Vec& x, const Vec& y);
bool is_zero_vec(const Vec& v);

/// In-place reduced row echelon form; returns pivot column indices.
/// Deterministic: pivots are the first nonzero column in row order.
std::vector<std::size_t> rref(Mat& m);

std::size_t rank(Mat m);
Rat det(Mat m);
std::optional<Mat> inverse(const Mat& m);

/// Basis of the kernel {v : M v = 0}.
std::vector<Vec> kernel_basis(const Mat& m);

/// One solution of M x = b, if any.
std::optional<Vec> solve(const Mat& m, const Vec& b);

/// Subspace of Q^n stored as an echelonized basis (rows of `basis`).
class Subspace {
public:
    explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}
    Subspace(std::size_t ambient_dim, const std::vector<Vec>& spanning);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows; }
    const Mat& basis() const { return basis_; }
    std::vector<Vec> basis_vectors() const;

    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;
    bool operator==(const Subspace& other) const;

    /// Coordinates of v in the echelon basis, if v lies in the subspace.
    std::optional<Vec> coordinates(const Vec& v) const;

    static Subspace sum(const Subspace& x, const Subspace& y);
    static Subspace intersection(const Subspace& x, const Subspace& y);
    static Subspace full(std::size_t n);

private:
    std::size_t ambient_;
    Mat basis_;                      // echelonized, one basis vector per row
    std::vector<std::size_t> pivots_;
};

} // namespace mfs
