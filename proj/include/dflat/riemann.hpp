#pragma once

/**
    \file
    \brief Riemannian machinery: Christoffel symbols, spray, covariant derivative of one-forms, curvature

    Index raising always goes through the metric handed to the call. Generic entry points take spans of any jet
    scalar T and need the metric field one level deeper than T.
*/

#include <dflat/engine.hpp>
#include <dflat/field.hpp>

#include <span>
#include <vector>

namespace dflat {

/// Gamma^i_{jk}, symmetric in (j, k).
template <class T>
class Christoffel
{
public:
    Christoffel() = default;
    explicit Christoffel(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n, T(0.0)) {}

    int size() const noexcept { return n_; }
    T& operator()(int i, int j, int k) { return data_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k]; }
    T const& operator()(int i, int j, int k) const { return data_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k]; }

private:
    int n_ = 0;
    std::vector<T> data_;
};

/// First x-derivatives of a metric: d[l](i, j) = d a_ij / d x^l.
template <Scalar T>
std::vector<Mat<T>> metric_gradient(MetricField const& metric, std::span<T const> x)
{
    if constexpr (jet_depth_v<T> >= max_jet_depth) {
        throw_depth_exceeded("metric_gradient");
    }
    else {
        int const n = static_cast<int>(x.size());
        std::vector<Mat<T>> d;
        d.reserve(static_cast<std::size_t>(n));
        for (int l = 0; l < n; ++l) {
            auto const xs = lift_axis(x, l);
            d.push_back(tangent(metric(std::span<Jet<T> const>(xs))));
        }
        return d;
    }
}

template <Scalar T>
Christoffel<T> christoffel(MetricField const& metric, std::span<T const> x)
{
    int const n = static_cast<int>(x.size());
    Mat<T> const a = metric(x);
    Mat<T> const inv = inverse(a);
    auto const d = metric_gradient(metric, x);
    // first kind: [jk, l] = 1/2 (d_j a_lk + d_k a_lj - d_l a_jk)
    Christoffel<T> first(n);
    for (int l = 0; l < n; ++l)
        for (int j = 0; j < n; ++j)
            for (int k = j; k < n; ++k) {
                T const v = 0.5 * (d[j](l, k) + d[k](l, j) - d[l](j, k));
                first(l, j, k) = v;
                first(l, k, j) = v;
            }
    Christoffel<T> gamma(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = j; k < n; ++k) {
                T s(0.0);
                for (int l = 0; l < n; ++l)
                    s += inv(i, l) * first(l, j, k);
                gamma(i, j, k) = s;
                gamma(i, k, j) = s;
            }
    return gamma;
}

/// G^i = 1/2 Gamma^i_{jk} y^j y^k
template <Scalar T>
Vec<T> riemann_spray(Christoffel<T> const& gamma, std::span<T const> y)
{
    int const n = gamma.size();
    Vec<T> g(static_cast<std::size_t>(n), T(0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                g[i] += 0.5 * gamma(i, j, k) * y[j] * y[k];
    return g;
}

template <Scalar T>
Vec<T> riemann_spray(MetricField const& metric, std::span<T const> x, std::span<T const> y)
{
    return riemann_spray(christoffel(metric, x), y);
}

/// b_{i|j} = d_j b_i - Gamma^k_{ij} b_k
template <Scalar T>
Mat<T> covariant_derivative(MetricField const& metric, OneFormField const& oneform, std::span<T const> x)
{
    int const n = static_cast<int>(x.size());
    auto const gamma = christoffel(metric, x);
    Vec<T> const b = oneform(x);
    Mat<T> out(n);
    for (int j = 0; j < n; ++j) {
        auto const xs = lift_axis(x, j);
        Vec<T> const db = tangent(oneform(std::span<Jet<T> const>(xs)));
        for (int i = 0; i < n; ++i) {
            T s = db[i];
            for (int k = 0; k < n; ++k)
                s -= gamma(k, i, j) * b[k];
            out(i, j) = s;
        }
    }
    return out;
}

// -- double-precision front ends -------------------------------------------------------------------------------------

Christoffel<double> christoffel(MetricField const& metric, ChartPoint const& x);
std::vector<double> riemann_spray(MetricField const& metric, ChartPoint const& x, TangentVector const& y);

/**
    Covariant derivative of a one-form split into symmetric/antisymmetric parts, with the usual contractions at (x, y).

    Conventions: r_i = r_ij b^j, s_i = b^j s_ji, r = r_i b^i, r_0 = r_i y^i, s_0 = s_i y^i, s_{i0} = s_ij y^j,
    s^i_0 = a^{ij} s_{j0}, r^i = a^{ij} r_j, s^i = a^{ij} s_j. Under these, d_k(b^2) = 2 (r_k + s_k).
*/
struct CovariantDecomposition
{
    Mat<double> a;        ///< a_ij
    Mat<double> a_inv;    ///< a^ij
    Vec<double> b;        ///< b_i
    Vec<double> b_up;     ///< b^i
    double b2 = 0.0;      ///< b^2
    double alpha2 = 0.0;  ///< a_ij y^i y^j
    double beta = 0.0;    ///< b_i y^i
    Mat<double> bij;
    Mat<double> rij;
    Mat<double> sij;
    double r00 = 0.0;
    Vec<double> r_i;
    double r0 = 0.0;
    double r = 0.0;
    Vec<double> s_i;
    double s0 = 0.0;
    Vec<double> s_i0;
    Vec<double> s_up_0;  ///< s^i_0
    Vec<double> r_up;    ///< r^i
    Vec<double> s_up;    ///< s^i
};

CovariantDecomposition covariant_decomposition(MetricField const& metric, OneFormField const& oneform,
                                               ChartPoint const& x, TangentVector const& y);

/// Largest |d_k a_ij - Gamma^l_ik a_lj - Gamma^l_jk a_il| over components.
double metric_compatibility_defect(MetricField const& metric, ChartPoint const& x);

/// Riemann tensor R^i_{jkl} with R(d_k, d_l) d_j = R^i_{jkl} d_i, stored as data[((i*n+j)*n+k)*n+l].
std::vector<double> riemann_tensor(MetricField const& metric, ChartPoint const& x);

/// Sectional curvature of the plane spanned by u and v. Throws DegenerateError for a degenerate plane.
double sectional_curvature(MetricField const& metric, ChartPoint const& x, TangentVector const& u,
                           TangentVector const& v);

}  // namespace dflat
