#include <dflat/riemann.hpp>

#include <cmath>

namespace dflat {

Christoffel<double> christoffel(MetricField const& metric, ChartPoint const& x)
{
    return christoffel(metric, x.coords());
}

std::vector<double> riemann_spray(MetricField const& metric, ChartPoint const& x, TangentVector const& y)
{
    return riemann_spray(metric, x.coords(), y.coords());
}

CovariantDecomposition covariant_decomposition(MetricField const& metric, OneFormField const& oneform,
                                               ChartPoint const& x, TangentVector const& y)
{
    int const n = x.dim();
    auto const ys = y.coords();
    CovariantDecomposition d;
    d.a = metric(x.coords());
    d.a_inv = inverse(d.a);
    d.b = oneform(x.coords());
    d.b_up = mat_vec(d.a_inv, d.b);
    d.b2 = dot(d.b, d.b_up);
    d.alpha2 = quadratic(d.a, ys, ys);
    d.beta = dot(std::span<double const>(d.b), ys);
    d.bij = covariant_derivative(metric, oneform, x.coords());
    d.rij = Mat<double>(n);
    d.sij = Mat<double>(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            d.rij(i, j) = 0.5 * (d.bij(i, j) + d.bij(j, i));
            d.sij(i, j) = 0.5 * (d.bij(i, j) - d.bij(j, i));
        }
    d.r00 = quadratic(d.rij, ys, ys);
    d.r_i.assign(n, 0.0);
    d.s_i.assign(n, 0.0);
    d.s_i0.assign(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            d.r_i[i] += d.rij(i, j) * d.b_up[j];
            d.s_i[i] += d.b_up[j] * d.sij(j, i);
            d.s_i0[i] += d.sij(i, j) * ys[j];
        }
    d.r0 = dot(std::span<double const>(d.r_i), ys);
    d.s0 = dot(std::span<double const>(d.s_i), ys);
    d.r = dot(d.r_i, d.b_up);
    d.s_up_0 = mat_vec(d.a_inv, d.s_i0);
    d.r_up = mat_vec(d.a_inv, d.r_i);
    d.s_up = mat_vec(d.a_inv, d.s_i);
    return d;
}

double metric_compatibility_defect(MetricField const& metric, ChartPoint const& x)
{
    int const n = x.dim();
    Mat<double> const a = metric(x.coords());
    auto const gamma = christoffel(metric, x);
    auto const d = metric_gradient(metric, x.coords());
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double v = d[k](i, j);
                for (int l = 0; l < n; ++l)
                    v -= gamma(l, i, k) * a(l, j) + gamma(l, j, k) * a(i, l);
                worst = std::max(worst, std::abs(v));
            }
    return worst;
}

std::vector<double> riemann_tensor(MetricField const& metric, ChartPoint const& x)
{
    int const n = x.dim();
    auto const gamma = christoffel(metric, x);
    // dgamma[m](i, j, k) = d_m Gamma^i_{jk}
    std::vector<Christoffel<double>> dgamma;
    for (int m = 0; m < n; ++m) {
        auto const xs = lift_axis(x.coords(), m);
        auto const g = christoffel(metric, std::span<J1 const>(xs));
        Christoffel<double> dg(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    dg(i, j, k) = g(i, j, k).df;
        dgamma.push_back(std::move(dg));
    }
    auto idx = [n](int i, int j, int k, int l) {
        return ((static_cast<std::size_t>(i) * n + j) * n + k) * n + l;
    };
    std::vector<double> r(static_cast<std::size_t>(n) * n * n * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double v = dgamma[k](i, l, j) - dgamma[l](i, k, j);
                    for (int m = 0; m < n; ++m)
                        v += gamma(i, k, m) * gamma(m, l, j) - gamma(i, l, m) * gamma(m, k, j);
                    r[idx(i, j, k, l)] = v;
                }
    return r;
}

double sectional_curvature(MetricField const& metric, ChartPoint const& x, TangentVector const& u,
                           TangentVector const& v)
{
    int const n = x.dim();
    Mat<double> const a = metric(x.coords());
    double const uu = quadratic(a, u.coords(), u.coords());
    double const vv = quadratic(a, v.coords(), v.coords());
    double const uv = quadratic(a, u.coords(), v.coords());
    double const area = uu * vv - uv * uv;
    if (!(area > 1e-14 * uu * vv))
        throw DegenerateError("plane vectors are (nearly) parallel");
    auto const r = riemann_tensor(metric, x);
    // <R(u, v) v, u>
    Vec<double> const u_low = mat_vec(a, u.coords());
    double num = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    num += u_low[i] * r[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l] * v[j] * u[k] *
                           v[l];
    return num / area;
}

}  // namespace dflat
