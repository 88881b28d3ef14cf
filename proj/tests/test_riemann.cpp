#include "support.hpp"

#include <dflat/riemann.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace dflat;
namespace t = dflat::testing;

namespace {

double dot3(std::vector<double> const& a, std::vector<double> const& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

/// Sectional curvature from centrally differenced Christoffel symbols: an oracle independent of nested jets.
double sectional_curvature_fd(MetricField const& metric, ChartPoint const& x, std::vector<double> const& u,
                              std::vector<double> const& v, double h = 1e-5)
{
    int const n = x.dim();
    auto const g0 = christoffel(metric, x);
    std::vector<Christoffel<double>> dg;  // dg[k](i, j, l) = d_k Gamma^i_jl
    for (int k = 0; k < n; ++k) {
        auto xp = x.vec();
        auto xm = x.vec();
        xp[k] += h;
        xm[k] -= h;
        auto const gp = christoffel(metric, ChartPoint(xp));
        auto const gm = christoffel(metric, ChartPoint(xm));
        Christoffel<double> d(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l)
                    d(i, j, l) = (gp(i, j, l) - gm(i, j, l)) / (2.0 * h);
        dg.push_back(d);
    }
    Mat<double> const a = metric(x.coords());
    // <R(u, v) v, u> with R^i_jkl = d_k G^i_lj - d_l G^i_kj + G^i_km G^m_lj - G^i_lm G^m_kj
    double num = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double r = dg[k](i, l, j) - dg[l](i, k, j);
                    for (int m = 0; m < n; ++m)
                        r += g0(i, k, m) * g0(m, l, j) - g0(i, l, m) * g0(m, k, j);
                    double low = 0.0;
                    for (int p = 0; p < n; ++p)
                        low += a(p, i) * u[p];
                    num += low * r * v[j] * u[k] * v[l];
                }
    double const uu = quadratic(a, u);
    double const vv = quadratic(a, v);
    double const uv = quadratic(a, std::span<double const>(u), std::span<double const>(v));
    return num / (uu * vv - uv * uv);
}

}  // namespace

TEST(Christoffel, EuclideanVanishes)
{
    auto const g = christoffel(MetricField::euclidean(3), ChartPoint({0.3, -0.2, 0.5}));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                EXPECT_EQ(g(i, j, k), 0.0);
}

TEST(Christoffel, ConstantCurvatureVanishesAtOrigin)
{
    auto const g = christoffel(catalog::csc_metric(2, 1.0), ChartPoint({0.0, 0.0}));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                EXPECT_EQ(g(i, j, k), 0.0);
}

TEST(Christoffel, ConstantCurvatureMatchesProjectiveForm)
{
    // G^i = P y^i with P = -mu <x,y> / (1 + mu|x|^2)  =>  Gamma^i_jk = -mu (x_j d^i_k + x_k d^i_j) / (1 + mu|x|^2)
    double const mu = 1.0;
    ChartPoint const x({0.5, 0.0});
    auto const g = christoffel(catalog::csc_metric(2, mu), x);
    double const d = 1.0 + mu * 0.25;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                double const expect = -mu * (x[j] * (i == k) + x[k] * (i == j)) / d;
                EXPECT_NEAR(g(i, j, k), expect, 1e-10);
            }
}

TEST(Christoffel, SymmetricInLowerIndices)
{
    for (auto const& [name, F] : t::catalog_randers(3))
        for (auto const& p : t::admitted_probes(F, 3, 5)) {
            auto const g = christoffel(F.alpha(), p.x);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    for (int k = 0; k < 3; ++k)
                        EXPECT_EQ(g(i, j, k), g(i, k, j)) << name;
        }
}

TEST(Christoffel, SingularMetricIsRejected)
{
    auto const m = MetricField::from(2, []<class T>(std::span<T const> x) {
        Mat<T> a(2);
        a(0, 0) = a(0, 1) = a(1, 0) = a(1, 1) = 1.0 + x[0] * 0.0;
        return a;
    });
    EXPECT_THROW(christoffel(m, ChartPoint({0.1, 0.2})), LinearSolveError);
}

TEST(Christoffel, MetricCompatibility)
{
    std::vector<std::pair<std::string, MetricField>> metrics;
    for (auto const& [name, F] : t::catalog_randers(3))
        metrics.emplace_back(name, F.alpha());
    metrics.emplace_back("csc(1)", catalog::csc_metric(3, 1.0));
    metrics.emplace_back("csc(-1)", catalog::csc_metric(3, -1.0));
    metrics.emplace_back("dfr(-1)", catalog::dfr_metric(3, -1.0));
    for (auto const& [name, m] : metrics)
        for (auto const& p : t::probes(21, 3, 10, 0.6))
            EXPECT_LT(metric_compatibility_defect(m, p.x), 1e-10) << name;
}

TEST(RiemannSpray, EuclideanVanishes)
{
    auto const G = riemann_spray(MetricField::euclidean(2), ChartPoint({0.3, 0.4}), TangentVector({1.0, -2.0}));
    EXPECT_EQ(G[0], 0.0);
    EXPECT_EQ(G[1], 0.0);
}

TEST(RiemannSpray, ConstantCurvatureIsProjective)
{
    for (double mu : {-1.0, 0.5, 1.0})
        for (auto const& p : t::probes(31, 3, 20, t::sample_radius(catalog::domain_radius(mu)))) {
            auto const G = riemann_spray(catalog::csc_metric(3, mu), p.x, p.y);
            double const P = -mu * dot3(p.x.vec(), p.y.vec()) / (1.0 + mu * dot3(p.x.vec(), p.x.vec()));
            for (int i = 0; i < 3; ++i)
                EXPECT_NEAR(G[i], P * p.y[i], 1e-12);
        }
}

TEST(RiemannSpray, DuallyFlatRiemannianShape)
{
    for (double mu : {-1.0, 1.0})
        for (auto const& p : t::probes(37, 2, 20, t::sample_radius(catalog::domain_radius(mu)))) {
            auto const m = catalog::dfr_metric(2, mu);
            auto const G = riemann_spray(m, p.x, p.y);
            auto const th = catalog::dfr_theta(mu, p.x.vec());
            Mat<double> const a = m(p.x.coords());
            auto const th_up = solve(a, th);
            double const alpha2 = quadratic(a, p.y.vec());
            double const theta = dot3(th, p.y.vec());
            for (int i = 0; i < 2; ++i)
                EXPECT_NEAR(G[i], 2.0 * theta * p.y[i] + alpha2 * th_up[i], 1e-10);
        }
}

TEST(CovariantDecomposition, ClosedConformalForm)
{
    for (double mu : {-1.0, 0.0, 1.0})
        for (auto const& p : t::probes(41, 3, 20, t::sample_radius(catalog::domain_radius(mu)))) {
            double const lambda = 0.8;
            auto const d = covariant_decomposition(catalog::csc_metric(3, mu), catalog::cc_oneform(3, lambda, mu), p.x, p.y);
            double const sigma = catalog::cc_conformal_factor(lambda, mu, {}, p.x.vec());
            EXPECT_NEAR(sigma, lambda / std::sqrt(1.0 + mu * dot3(p.x.vec(), p.x.vec())), 1e-15);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    EXPECT_LT(std::abs(d.sij(i, j)), 1e-12);
                    EXPECT_NEAR(d.rij(i, j), sigma * d.a(i, j), 1e-10);
                }
        }
}

TEST(CovariantDecomposition, ClosedConformalFormWithConstantVector)
{
    std::vector<double> const a{0.3, -0.2};
    auto const p = t::probes(43, 2, 10, 1.5);
    for (auto const& q : p) {
        auto const d = covariant_decomposition(catalog::csc_metric(2, 0.0), catalog::cc_oneform(2, 0.7, 0.0, a), q.x, q.y);
        double const sigma = catalog::cc_conformal_factor(0.7, 0.0, a, q.x.vec());
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                EXPECT_NEAR(d.bij(i, j), sigma * d.a(i, j), 1e-10);
    }
}

TEST(CovariantDecomposition, ZeroFormGivesZeros)
{
    auto const d = covariant_decomposition(catalog::csc_metric(2, 1.0), OneFormField::zero(2), ChartPoint({0.3, 0.1}),
                                           TangentVector({1.0, 0.5}));
    EXPECT_EQ(frobenius_norm(d.bij), 0.0);
    EXPECT_EQ(d.r00, 0.0);
    EXPECT_EQ(d.r, 0.0);
    EXPECT_EQ(d.s0, 0.0);
    EXPECT_EQ(norm2(d.s_up_0), 0.0);
}

TEST(CovariantDecomposition, DuallyRelatedConstruction)
{
    for (double mu : {-1.0, 1.0})
        for (double lambda : {0.5, 2.0})
            for (auto const& p : t::probes(47, 2, 20, t::sample_radius(catalog::domain_radius(mu)))) {
                auto const d = covariant_decomposition(catalog::dfr_metric(2, mu), catalog::drb_oneform(2, lambda, mu), p.x, p.y);
                auto const th = catalog::dfr_theta(mu, p.x.vec());
                double const c = catalog::drb_factor(lambda, mu, p.x.vec());
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        EXPECT_NEAR(d.bij(i, j), c * d.a(i, j) + 2.0 * th[i] * d.b[j], 1e-9);
            }
}

TEST(CovariantDecomposition, StructuralIdentities)
{
    auto const F = t::catalog_randers(3)[5].metric;  // family(0, 1)
    for (auto const& p : t::admitted_probes(F, 53, 20)) {
        auto const d = covariant_decomposition(F.alpha(), F.beta(), p.x, p.y);
        auto const y = p.y.vec();
        double r00 = 0.0;
        double s0 = 0.0;
        double sb = 0.0;
        for (int i = 0; i < 3; ++i) {
            s0 += d.s_i[i] * y[i];
            sb += d.s_i[i] * d.b_up[i];
            for (int j = 0; j < 3; ++j) {
                EXPECT_NEAR(d.rij(i, j) + d.sij(i, j), d.bij(i, j), 1e-15);
                EXPECT_EQ(d.rij(i, j), d.rij(j, i));
                EXPECT_EQ(d.sij(i, j), -d.sij(j, i));
                r00 += d.rij(i, j) * y[i] * y[j];
            }
        }
        EXPECT_NEAR(d.r00, r00, 1e-14);
        EXPECT_NEAR(d.s0, s0, 1e-14);
        EXPECT_NEAR(sb, 0.0, 1e-14);
    }
}

TEST(CovariantDecomposition, GradientOfSquaredNorm)
{
    // d_k b^2 = 2 (r_k + s_k)
    auto const F = catalog::funk(3);
    for (auto const& p : t::probes(59, 3, 10, 0.8)) {
        auto const d = covariant_decomposition(F.alpha(), F.beta(), p.x, p.y);
        for (int k = 0; k < 3; ++k) {
            auto xp = p.x.vec();
            auto xm = p.x.vec();
            xp[k] += 1e-6;
            xm[k] -= 1e-6;
            double const fd = (std::pow(F.b_norm(ChartPoint(xp)), 2) - std::pow(F.b_norm(ChartPoint(xm)), 2)) / 2e-6;
            EXPECT_NEAR(fd, 2.0 * (d.r_i[k] + d.s_i[k]), 1e-7);
        }
    }
}

TEST(SectionalCurvature, EuclideanIsFlat)
{
    EXPECT_EQ(sectional_curvature(MetricField::euclidean(3), ChartPoint({0.1, 0.2, 0.3}), TangentVector({1.0, 0.0, 0.0}),
                                  TangentVector({0.2, 1.0, 0.5})),
              0.0);
}

TEST(SectionalCurvature, ConstantCurvatureAtFixedPoint)
{
    auto const m = catalog::csc_metric(2, -1.0);
    ChartPoint const x({0.3, 0.2});
    for (auto const& p : t::probes(61, 2, 10, 1.0))
        EXPECT_NEAR(sectional_curvature(m, x, p.y, p.u), -1.0, 1e-8);
}

TEST(SectionalCurvature, ConstantCurvatureEverywhere)
{
    for (double mu : {-1.0, -0.25, 0.5, 1.0}) {
        auto const m = catalog::csc_metric(3, mu);
        for (auto const& p : t::probes(67, 3, 20, t::sample_radius(catalog::domain_radius(mu))))
            EXPECT_NEAR(sectional_curvature(m, p.x, p.y, p.u), mu, 1e-8) << mu;
    }
}

TEST(SectionalCurvature, DegeneratePlaneIsRejected)
{
    EXPECT_THROW(sectional_curvature(catalog::csc_metric(2, 1.0), ChartPoint({0.1, 0.2}), TangentVector({1.0, 2.0}),
                                     TangentVector({2.0, 4.0})),
                 DegenerateError);
}

TEST(SectionalCurvature, DuallyFlatMetricBaseline)
{
    auto const m = catalog::dfr_metric(2, 1.0);
    ChartPoint const x({0.2, 0.1});
    std::vector<double> const u{1.0, 0.0};
    std::vector<double> const v{0.0, 1.0};
    double const k = sectional_curvature(m, x, TangentVector(u), TangentVector(v));
    double const fd = sectional_curvature_fd(m, x, u, v);
    EXPECT_TRUE(std::isfinite(k));
    EXPECT_NEAR(k, fd, 1e-6);
    EXPECT_NEAR(k, -0.024397501823713353, 1e-12);
}

TEST(SectionalCurvature, JetsAgreeWithDifferencedChristoffels)
{
    auto const m = catalog::csc_metric(3, -1.0);
    for (auto const& p : t::probes(71, 3, 5, 0.6)) {
        double const k = sectional_curvature(m, p.x, p.y, p.u);
        EXPECT_NEAR(k, sectional_curvature_fd(m, p.x, p.y.vec(), p.u.vec()), 1e-6);
    }
}
