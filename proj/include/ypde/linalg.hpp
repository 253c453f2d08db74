#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ypde {

using Vec = std::vector<double>;

// Dense row-major matrix, used for values of L(V,U) = R^{m x n}.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c, double fill = 0.0) : rows(r), cols(c), a(static_cast<size_t>(r) * c, fill) {}

    static Mat scalar(double v) {
        Mat m(1, 1);
        m.a[0] = v;
        return m;
    }

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool same_shape(const Mat& o) const { return rows == o.rows && cols == o.cols; }
};

inline Mat operator-(const Mat& x, const Mat& y) {
    if (!x.same_shape(y)) throw std::invalid_argument("Mat: shape mismatch");
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

inline Mat operator+(const Mat& x, const Mat& y) {
    if (!x.same_shape(y)) throw std::invalid_argument("Mat: shape mismatch");
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

inline Mat operator*(double s, const Mat& x) {
    Mat r = x;
    for (double& v : r.a) v *= s;
    return r;
}

// y += W * dx, with W in R^{m x n}, dx in R^n, y in R^m.
inline void mat_vec_accum(const Mat& w, const Vec& dx, Vec& y) {
    if (w.cols != static_cast<int>(dx.size()) || w.rows != static_cast<int>(y.size()))
        throw std::invalid_argument("mat_vec_accum: dimension mismatch");
    for (int i = 0; i < w.rows; ++i) {
        double s = 0.0;
        for (int j = 0; j < w.cols; ++j) s += w(i, j) * dx[j];
        y[i] += s;
    }
}

inline double vec_norm(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline double vec_dist(const Vec& x, const Vec& y) {
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        s += d * d;
    }
    return std::sqrt(s);
}

// Frobenius norm. Dominates the Euclidean operator norm and satisfies
// |W v| <= |W|_F |v|, so every certificate bound below remains valid;
// coincides with the operator norm in the scalar and rank-one cases.
inline double mat_norm(const Mat& m) {
    double s = 0.0;
    for (double x : m.a) s += x * x;
    return std::sqrt(s);
}

inline double mat_dist(const Mat& x, const Mat& y) {
    if (!x.same_shape(y)) throw std::invalid_argument("mat_dist: shape mismatch");
    double s = 0.0;
    for (size_t i = 0; i < x.a.size(); ++i) {
        const double d = x.a[i] - y.a[i];
        s += d * d;
    }
    return std::sqrt(s);
}

inline bool mat_finite(const Mat& m) {
    for (double x : m.a)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace ypde
