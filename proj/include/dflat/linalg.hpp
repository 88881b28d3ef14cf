#pragma once

/**
    \file
    \brief small dense linear algebra generic over jet scalars

    Sizes are tiny (n <= 8), so everything is row-major std::vector storage and direct factorization. Pivoting decisions
    use primal values only; derivative components ride along.
*/

#include <dflat/errors.hpp>
#include <dflat/jet.hpp>

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace dflat {

template <class T>
using Vec = std::vector<T>;

template <class T>
class Mat
{
public:
    Mat() = default;
    explicit Mat(int n) : n_(n), data_(static_cast<std::size_t>(n) * n, T(0.0)) {}

    static Mat identity(int n)
    {
        Mat m(n);
        for (int i = 0; i < n; ++i)
            m(i, i) = T(1.0);
        return m;
    }

    int size() const noexcept { return n_; }

    T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
    T const& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }

private:
    int n_ = 0;
    std::vector<T> data_;
};

inline constexpr double condition_limit = 1e12;

template <class T>
Mat<double> values(Mat<T> const& m)
{
    Mat<double> out(m.size());
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j)
            out(i, j) = value_of(m(i, j));
    return out;
}

template <class T>
Vec<double> values(Vec<T> const& v)
{
    Vec<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = value_of(v[i]);
    return out;
}

template <class T>
T dot(std::span<T const> a, std::span<T const> b)
{
    T s(0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

template <class T>
T dot(Vec<T> const& a, Vec<T> const& b)
{
    return dot(std::span<T const>(a), std::span<T const>(b));
}

/// m * v
template <class T>
Vec<T> mat_vec(Mat<T> const& m, std::span<T const> v)
{
    int const n = m.size();
    Vec<T> out(n, T(0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out[i] += m(i, j) * v[j];
    return out;
}

template <class T>
Vec<T> mat_vec(Mat<T> const& m, Vec<T> const& v)
{
    return mat_vec(m, std::span<T const>(v));
}

/// v^T m w
template <class T>
T quadratic(Mat<T> const& m, std::span<T const> v, std::span<T const> w)
{
    int const n = m.size();
    T s(0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            s += v[i] * m(i, j) * w[j];
    return s;
}

template <class T>
T quadratic(Mat<T> const& m, Vec<T> const& v)
{
    return quadratic(m, std::span<T const>(v), std::span<T const>(v));
}

inline double norm1(Mat<double> const& m)
{
    double best = 0.0;
    for (int j = 0; j < m.size(); ++j) {
        double col = 0.0;
        for (int i = 0; i < m.size(); ++i)
            col += std::abs(m(i, j));
        best = std::max(best, col);
    }
    return best;
}

/**
    Inverse by Gauss-Jordan elimination with partial pivoting. Throws LinearSolveError on an exactly singular pivot or
    when the 1-norm condition number of the primal matrix exceeds condition_limit.
*/
template <class T>
Mat<T> inverse(Mat<T> const& a)
{
    int const n = a.size();
    Mat<T> work = a;
    Mat<T> inv = Mat<T>::identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(value_of(work(col, col)));
        for (int r = col + 1; r < n; ++r) {
            double const cand = std::abs(value_of(work(r, col)));
            if (cand > best) {
                best = cand;
                pivot = r;
            }
        }
        if (!(best > 0.0))
            throw LinearSolveError("singular matrix in inverse");
        if (pivot != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(work(col, j), work(pivot, j));
                std::swap(inv(col, j), inv(pivot, j));
            }
        }
        T const p = work(col, col);
        for (int j = 0; j < n; ++j) {
            work(col, j) = work(col, j) / p;
            inv(col, j) = inv(col, j) / p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col)
                continue;
            T const factor = work(r, col);
            if (value_of(factor) == 0.0 && jet_depth_v<T> == 0)
                continue;
            for (int j = 0; j < n; ++j) {
                work(r, j) -= factor * work(col, j);
                inv(r, j) -= factor * inv(col, j);
            }
        }
    }
    double const cond = norm1(values(a)) * norm1(values(inv));
    if (!(cond <= condition_limit))
        throw LinearSolveError("matrix condition number exceeds guard");
    return inv;
}

template <class T>
Vec<T> solve(Mat<T> const& a, Vec<T> const& rhs)
{
    return mat_vec(inverse(a), rhs);
}

/// Cholesky test on primal values.
inline bool is_positive_definite(Mat<double> const& a)
{
    int const n = a.size();
    Mat<double> l(n);
    for (int j = 0; j < n; ++j) {
        double d = a(j, j);
        for (int k = 0; k < j; ++k)
            d -= l(j, k) * l(j, k);
        if (!(d > 0.0))
            return false;
        l(j, j) = std::sqrt(d);
        for (int i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (int k = 0; k < j; ++k)
                s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return true;
}

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(Mat<double> const& a);

/// Frobenius norm of the difference.
double frobenius_distance(Mat<double> const& a, Mat<double> const& b);
double frobenius_norm(Mat<double> const& a);
double norm2(std::span<double const> v);
double distance2(std::span<double const> a, std::span<double const> b);

}  // namespace dflat
