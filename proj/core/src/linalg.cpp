#include "mfs/linalg.hpp"

#include <algorithm>

namespace mfs {

Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw Error("matrix product: dimension mismatch");
    Mat r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const Rat& xik = x(i, k);
            if (xik == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += xik * y(k, j);
        }
    return r;
}

Mat operator+(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw Error("matrix sum: dimension mismatch");
    Mat r(x.rows, x.cols);
    for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
}

Mat operator-(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw Error("matrix difference: dimension mismatch");
    Mat r(x.rows, x.cols);
    for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
}

Vec operator*(const Mat& m, const Vec& v) {
    if (m.cols != v.size()) throw Error("matrix-vector product: dimension mismatch");
    Vec r(m.rows, Rat(0));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            if (m(i, j) != 0) r[i] += m(i, j) * v[j];
    return r;
}

Vec vec_add(const Vec& x, const Vec& y) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return r;
}

Vec vec_sub(const Vec& x, const Vec& y) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
    return r;
}

Vec vec_scale(const Rat& c, const Vec& x) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = c * x[i];
    return r;
}

Rat dot(const Vec& x, const Vec& y) {
    Rat s(0);
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

bool is_zero_vec(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& q) { return q == 0; });
}

std::vector<std::size_t> rref(Mat& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t p = r;
        while (p < m.rows && m(p, c) == 0) ++p;
        if (p == m.rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
        Rat inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols; ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rat f = m(i, c);
            for (std::size_t j = c; j < m.cols; ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(Mat m) { return rref(m).size(); }

Rat det(Mat m) {
    if (m.rows != m.cols) throw Error("det: non-square matrix");
    Rat d(1);
    for (std::size_t c = 0; c < m.cols; ++c) {
        std::size_t p = c;
        while (p < m.rows && m(p, c) == 0) ++p;
        if (p == m.rows) return Rat(0);
        if (p != c) {
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(c, j));
            d = -d;
        }
        d *= m(c, c);
        Rat inv = 1 / m(c, c);
        for (std::size_t i = c + 1; i < m.rows; ++i) {
            if (m(i, c) == 0) continue;
            Rat f = m(i, c) * inv;
            for (std::size_t j = c; j < m.cols; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return d;
}

std::optional<Mat> inverse(const Mat& m) {
    if (m.rows != m.cols) throw Error("inverse: non-square matrix");
    std::size_t n = m.rows;
    Mat aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto piv = rref(aug);
    if (piv.size() != n || piv.back() != n - 1) return std::nullopt;
    Mat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

std::vector<Vec> kernel_basis(const Mat& m) {
    Mat e = m;
    auto pivots = rref(e);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<Vec> ker;
    for (std::size_t c = 0; c < m.cols; ++c) {
        if (is_pivot[c]) continue;
        Vec v(m.cols, Rat(0));
        v[c] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -e(r, c);
        ker.push_back(std::move(v));
    }
    return ker;
}

std::optional<Vec> solve(const Mat& m, const Vec& b) {
    if (m.rows != b.size()) throw Error("solve: dimension mismatch");
    Mat aug(m.rows, m.cols + 1);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
        aug(i, m.cols) = b[i];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt; // inconsistent
    Vec x(m.cols, Rat(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols);
    return x;
}

Subspace::Subspace(std::size_t ambient_dim, const std::vector<Vec>& spanning) : ambient_(ambient_dim) {
    Mat m(spanning.size(), ambient_dim);
    for (std::size_t i = 0; i < spanning.size(); ++i) {
        if (spanning[i].size() != ambient_dim) throw Error("subspace: vector of wrong dimension");
        for (std::size_t j = 0; j < ambient_dim; ++j) m(i, j) = spanning[i][j];
    }
    pivots_ = rref(m);
    basis_ = Mat(pivots_.size(), ambient_dim);
    for (std::size_t i = 0; i < pivots_.size(); ++i)
        for (std::size_t j = 0; j < ambient_dim; ++j) basis_(i, j) = m(i, j);
}

std::vector<Vec> Subspace::basis_vectors() const {
    std::vector<Vec> vs;
    for (std::size_t i = 0; i < basis_.rows; ++i) vs.push_back(basis_.row(i));
    return vs;
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
    if (v.size() != ambient_) throw Error("subspace: vector of wrong dimension");
    Vec coords(basis_.rows, Rat(0));
    Vec rem = v;
    for (std::size_t i = 0; i < basis_.rows; ++i) {
        coords[i] = rem[pivots_[i]];
        if (coords[i] != 0)
            for (std::size_t j = 0; j < ambient_; ++j) rem[j] -= coords[i] * basis_(i, j);
    }
    if (!is_zero_vec(rem)) return std::nullopt;
    return coords;
}

bool Subspace::contains(const Vec& v) const { return coordinates(v).has_value(); }

bool Subspace::contains(const Subspace& other) const {
    for (std::size_t i = 0; i < other.basis_.rows; ++i)
        if (!contains(other.basis_.row(i))) return false;
    return true;
}

bool Subspace::operator==(const Subspace& other) const {
    // echelon basis is canonical
    return ambient_ == other.ambient_ && basis_ == other.basis_;
}

Subspace Subspace::sum(const Subspace& x, const Subspace& y) {
    if (x.ambient_ != y.ambient_) throw Error("subspace sum: ambient mismatch");
    auto vs = x.basis_vectors();
    auto ws = y.basis_vectors();
    vs.insert(vs.end(), ws.begin(), ws.end());
    return Subspace(x.ambient_, vs);
}

Subspace Subspace::intersection(const Subspace& x, const Subspace& y) {
    if (x.ambient_ != y.ambient_) throw Error("subspace intersection: ambient mismatch");
    // v = a . Bx = b . By; kernel of [Bx^T | -By^T]
    std::size_t nx = x.dim(), ny = y.dim();
    Mat m(x.ambient_, nx + ny);
    for (std::size_t j = 0; j < nx; ++j)
        for (std::size_t i = 0; i < x.ambient_; ++i) m(i, j) = x.basis_(j, i);
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < x.ambient_; ++i) m(i, nx + j) = -y.basis_(j, i);
    std::vector<Vec> vs;
    for (const auto& k : kernel_basis(m)) {
        Vec v(x.ambient_, Rat(0));
        for (std::size_t j = 0; j < nx; ++j)
            if (k[j] != 0)
                for (std::size_t i = 0; i < x.ambient_; ++i) v[i] += k[j] * x.basis_(j, i);
        vs.push_back(std::move(v));
    }
    return Subspace(x.ambient_, vs);
}

Subspace Subspace::full(std::size_t n) {
    std::vector<Vec> vs;
    for (std::size_t i = 0; i < n; ++i) {
        Vec v(n, Rat(0));
        v[i] = 1;
        vs.push_back(std::move(v));
    }
    return Subspace(n, vs);
}

} // namespace mfs
